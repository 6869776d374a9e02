#include "entropic/entropy.hpp"

#include <cmath>
#include <future>
#include <numbers>

#include "entropic/bounds.hpp"
#include "entropic/distributions.hpp"
#include "entropic/errors.hpp"

namespace entropic {

double differential_entropy(std::span<const double> values, double h) {
  const std::size_t n = values.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = values[i];
    if (f < 1e-300) continue;
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    sum -= w * f * std::log(f);
  }
  return sum * h;
}

double differential_entropy(const ProbabilityDensity& density) {
  return differential_entropy(density.values(), density.grid().spacing());
}

EntropyResult marginal_entropies(const SystemState& state, const NoiseTerms& noise, std::size_t count) {
  auto sx = std::async(std::launch::async, [&] {
    return differential_entropy(inferred_position_density(state, noise, count));
  });
  const double sp = differential_entropy(inferred_momentum_density(state, noise, count));
  const double x = sx.get();
  return {x, sp, x + sp};
}

EntropyResult marginal_entropies(const SystemState& state, const NoiseTerms& noise, const Grid& xgrid,
                                 const Grid& pgrid) {
  const double sx = differential_entropy(convolve_gaussian(position_density(state, xgrid), noise.delta_x()));
  const double sp = differential_entropy(convolve_gaussian(momentum_density(state, pgrid), noise.delta_p()));
  return {sx, sp, sx + sp};
}

SystemEntropies system_entropies(const SystemState& state, const Grid& xgrid, const Grid& pgrid) {
  return {differential_entropy(position_density(state, xgrid)), differential_entropy(momentum_density(state, pgrid))};
}

SystemEntropies system_entropies(const SystemState& state, std::size_t count) {
  const Grid xg = state.as<GridWavefunction>() ? auto_position_grid(state) : auto_position_grid(state, count);
  return {differential_entropy(position_density(state, xg)),
          differential_entropy(momentum_density(state, auto_momentum_grid(state, count)))};
}

double squeezed_collective_entropy_closed_form(double sigma2, const NoiseTerms& noise) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw DomainError("squeezed variance must be positive");
  const double position_weight = gaussian_weight(std::sqrt(sigma2), noise.delta_x());
  const double momentum_weight = gaussian_weight(std::sqrt(0.25 / sigma2), noise.delta_p());
  return 1.0 + std::log(std::numbers::pi) - 0.5 * std::log(position_weight * momentum_weight);
}

}  // namespace entropic
