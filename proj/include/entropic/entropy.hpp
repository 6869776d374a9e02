#pragma once

#include <cstddef>
#include <span>

#include "entropic/apparatus.hpp"
#include "entropic/grid.hpp"
#include "entropic/states.hpp"

namespace entropic {

/// Marginal entropies of inferred position and momentum, in nats.
struct EntropyResult {
  double s_x;
  double s_p;
  double collective;  // s_x + s_p
};

/// −∫ f ln f by the trapezoidal rule; samples below 1e-300 contribute nothing.
double differential_entropy(const ProbabilityDensity& density);
double differential_entropy(std::span<const double> values, double h);

/// Entropies of the smoothed densities and their sum, the collective entropy.
EntropyResult marginal_entropies(const SystemState& state, const NoiseTerms& noise,
                                 std::size_t count = kDefaultGridPoints);
/// Same, with explicit base grids for |ψ|² and |ψ̃|².
EntropyResult marginal_entropies(const SystemState& state, const NoiseTerms& noise, const Grid& xgrid,
                                 const Grid& pgrid);

/// S[|ψ|²] and S[|ψ̃|²] of the bare state.
struct SystemEntropies {
  double s_x;
  double s_p;
};
SystemEntropies system_entropies(const SystemState& state, std::size_t count = kDefaultGridPoints);
SystemEntropies system_entropies(const SystemState& state, const Grid& xgrid, const Grid& pgrid);

/// Collective entropy of a squeezed vacuum with position variance sigma2,
/// 1 + ln π − ln √(λ_G(σ, δ_X) λ_G(1/(2σ), δ_P)).
double squeezed_collective_entropy_closed_form(double sigma2, const NoiseTerms& noise);

}  // namespace entropic
