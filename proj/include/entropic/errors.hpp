#pragma once

#include <stdexcept>
#include <string>

namespace entropic {

/// Invalid argument or violated precondition (non-positive variance, λ outside [0,1], ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Request exceeds what the implementation supports (Fock level cap, Wigner size cap).
class CapabilityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The grid cut off more probability mass than allowed.
class TruncationError : public std::runtime_error {
public:
  TruncationError(const std::string& what, double deficit)
      : std::runtime_error(what + " (truncated mass " + std::to_string(deficit) + ")"),
        deficit_(deficit) {}

  double deficit() const noexcept { return deficit_; }

private:
  double deficit_;
};

/// A numerical self-consistency check failed (normalization drift, residual negativity).
class NumericalConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A measured entropy fell below one of the bounds it must respect.
class BoundViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace entropic
