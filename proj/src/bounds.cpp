#include "entropic/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "entropic/distributions.hpp"
#include "entropic/entropy.hpp"
#include "entropic/errors.hpp"

namespace entropic {

namespace {

constexpr double kPi = std::numbers::pi;

void require_unit_interval(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("weighting parameter must lie in [0, 1], got " + std::to_string(lambda));
  }
}

// t ln t with 0 ln 0 = 0.
double xlogx(double t) { return t == 0.0 ? 0.0 : t * std::log(t); }

}  // namespace

BoundParams::BoundParams(double lx, double lp) : lambda_x(lx), lambda_p(lp) {
  require_unit_interval(lx);
  require_unit_interval(lp);
}

double theta(double lambda) {
  require_unit_interval(lambda);
  const double rest = 1.0 - lambda;
  // ((1−λ)/2)(1 − ln(1−λ)) = (1−λ)/2 − (1/2)(1−λ)ln(1−λ)
  return 0.5 * rest - 0.5 * xlogx(rest) - 0.5 * xlogx(lambda);
}

double gaussian_weight(double spread_f, double spread_g) {
  if (!(spread_f > 0.0) || !(spread_g > 0.0)) throw DomainError("spreads must be positive");
  const double f2 = spread_f * spread_f;
  return f2 / (f2 + spread_g * spread_g);
}

double lieb_lower_bound(double entropy_x_system, double entropy_p_system, const NoiseTerms& noise,
                        const BoundParams& params) {
  const double lx = params.lambda_x, lp = params.lambda_p;
  const double dx2 = noise.delta_x() * noise.delta_x();
  const double dp2 = noise.delta_p() * noise.delta_p();
  return lx * entropy_x_system + lp * entropy_p_system + 0.5 * (1.0 - lx) * std::log(2.0 * kPi * dx2) +
         0.5 * (1.0 - lp) * std::log(2.0 * kPi * dp2) + theta(lx) + theta(lp);
}

double hirschman_constant() { return 1.0 + std::log(kPi); }

double hirschman_deficit(const SystemState& state) {
  const SystemEntropies s = system_entropies(state);
  return s.s_x + s.s_p - hirschman_constant();
}

double single_param_bound(const NoiseTerms& noise, double lambda) {
  require_unit_interval(lambda);
  const double product = noise_product(noise);
  const double rest = 1.0 - lambda;
  // −λ ln(λ/π) = λ ln π − λ ln λ;  (1−λ) ln(2πD/(1−λ)) = (1−λ) ln(2πD) − (1−λ) ln(1−λ)
  return 1.0 + lambda * std::log(kPi) - xlogx(lambda) + rest * std::log(2.0 * kPi * product) - xlogx(rest);
}

OptimalBound maximize_single_param_bound(const NoiseTerms& noise) {
  const double product = noise_product(noise);
  // dΛ_S/dλ = ln[(1−λ)/(2Dλ)], strictly decreasing on (0, 1).
  auto slope = [product](double l) { return std::log((1.0 - l) / (2.0 * product * l)); };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (slope(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double l = 0.5 * (lo + hi);
  return {single_param_bound(noise, l), l};
}

OptimalBound optimal_bound(const NoiseTerms& noise) {
  const double product = noise_product(noise);
  const OptimalBound closed{1.0 + std::log(2.0 * kPi * (product + 0.5)), 1.0 / (1.0 + 2.0 * product)};
  const OptimalBound numeric = maximize_single_param_bound(noise);
  if (std::abs(numeric.bound - closed.bound) > 1e-9 || std::abs(numeric.lambda - closed.lambda) > 1e-9) {
    throw NumericalConsistencyError("numerical maximum of the single-parameter bound disagrees with closed form");
  }
  return closed;
}

double wehrl_constant() { return 1.0 + std::log(2.0 * kPi); }

double balanced_simplified_bound(const NoiseTerms& noise) {
  return 1.0 + std::log(2.0 * kPi * std::sqrt(2.0 * noise_product(noise)));
}

LiebCheck lieb_convolution_check(const ProbabilityDensity& f, const ProbabilityDensity& g, double lambda) {
  require_unit_interval(lambda);
  const double lhs = differential_entropy(convolve(f, g));
  const double rhs = lambda * differential_entropy(f) + (1.0 - lambda) * differential_entropy(g) -
                     0.5 * (xlogx(lambda) + xlogx(1.0 - lambda));
  return {lhs, rhs};
}

double minimal_variance(const NoiseTerms& noise) { return noise.delta_x() / (2.0 * noise.delta_p()); }

namespace {

BoundReport assemble_report(const SystemEntropies& sys, const EntropyResult& measured, const NoiseTerms& noise,
                            const BoundParams& params) {
  const OptimalBound best = optimal_bound(noise);

  BoundReport r{params, params.lambda_x, noise.delta_x(), noise.delta_p(), sys.s_x, sys.s_p, measured.s_x,
                measured.s_p, measured.collective,
                wehrl_constant(),
                lieb_lower_bound(sys.s_x, sys.s_p, noise, params),
                lieb_lower_bound(sys.s_x, sys.s_p, noise, BoundParams(1.0, 1.0)),
                lieb_lower_bound(sys.s_x, sys.s_p, noise, BoundParams(0.0, 0.0)),
                lieb_lower_bound(sys.s_x, sys.s_p, noise, BoundParams(0.5, 0.5)),
                balanced_simplified_bound(noise),
                single_param_bound(noise, params.lambda_x),
                best.bound,
                best.lambda};

  auto enforce = [&](double bound, const char* name) {
    if (r.collective < bound - kBoundTolerance) {
      throw BoundViolation(std::string("collective entropy ") + std::to_string(r.collective) + " below " + name +
                           " " + std::to_string(bound));
    }
  };
  if (!noise.below_floor()) enforce(r.omega, "omega");
  enforce(r.lambda_family, "lambda family bound");
  enforce(r.system_bound, "system bound");
  enforce(r.noise_bound, "noise bound");
  enforce(r.balanced_bound, "balanced bound");
  enforce(r.balanced_simplified, "simplified balanced bound");
  enforce(r.single_param, "single-parameter bound");
  enforce(r.optimal, "optimal bound");
  return r;
}

}  // namespace

BoundReport report(const SystemState& state, const NoiseTerms& noise, const BoundParams& params) {
  return assemble_report(system_entropies(state), marginal_entropies(state, noise), noise, params);
}

BoundReport report(const SystemState& state, const NoiseTerms& noise, const BoundParams& params, const Grid& xgrid,
                   const Grid& pgrid) {
  return assemble_report(system_entropies(state, xgrid, pgrid), marginal_entropies(state, noise, xgrid, pgrid), noise,
                         params);
}

}  // namespace entropic
