#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entropic/apparatus.hpp"

namespace entropic {

/// Outcome of one self-check suite. `margin` is the smallest slack seen
/// (negative when a check failed).
struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double margin = 0.0;
  std::vector<std::string> notes;

  bool passed() const noexcept { return failures == 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 2024;
  /// Extra noise setting fed to the bound-ordering suite; may be sub-physical.
  std::optional<NoiseTerms> injected_noise;
};

/// noise, bounds, lieb, hirschman, saturation, family, marginal.
const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& options);

}  // namespace entropic
