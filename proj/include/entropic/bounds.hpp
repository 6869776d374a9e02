#pragma once

#include "entropic/apparatus.hpp"
#include "entropic/grid.hpp"
#include "entropic/states.hpp"

namespace entropic {

/// Tolerance used when comparing quadrature entropies with bounds.
inline constexpr double kBoundTolerance = 1e-5;

/// Weighting pair (λ_X, λ_P), both in [0, 1].
struct BoundParams {
  double lambda_x;
  double lambda_p;

  BoundParams(double lx, double lp);
};

/// Every bound evaluated for one state and apparatus, next to the measured entropy.
struct BoundReport {
  BoundParams params;
  double single_lambda;
  double delta_x;
  double delta_p;
  double s_x_system;   // S[|ψ|²]
  double s_p_system;   // S[|ψ̃|²]
  double s_x;          // inferred position entropy
  double s_p;          // inferred momentum entropy
  double collective;
  double omega;
  double lambda_family;        // Λ(λ_X, λ_P)
  double system_bound;         // Λ(1, 1)
  double noise_bound;          // Λ(0, 0)
  double balanced_bound;       // Λ(1/2, 1/2)
  double balanced_simplified;  // 1 + ln(2π√(2δ_Xδ_P))
  double single_param;         // Λ_S(single_lambda)
  double optimal;
  double optimal_lambda;
};

/// Θ(λ) = ((1−λ)/2)[1 − ln(1−λ)] − (λ/2) ln λ, exact at the endpoints.
double theta(double lambda);

/// λ_G = a²/(a² + b²), the weight for which Lieb's inequality is tight for Gaussians.
double gaussian_weight(double spread_f, double spread_g);

/// Λ(λ_X, λ_P) from the bare-state entropies and the noise terms.
double lieb_lower_bound(double entropy_x_system, double entropy_p_system, const NoiseTerms& noise,
                        const BoundParams& params);

/// 1 + ln π.
double hirschman_constant();

/// S[|ψ|²] + S[|ψ̃|²] − (1 + ln π).
double hirschman_deficit(const SystemState& state);

/// Λ_S(λ) = 1 − λ ln(λ/π) + (1−λ) ln(2πδ_Xδ_P/(1−λ)).
double single_param_bound(const NoiseTerms& noise, double lambda);

struct OptimalBound {
  double bound;
  double lambda;
};

/// 1 + ln[2π(δ_Xδ_P + 1/2)] at λ = 1/(1 + 2δ_Xδ_P). Cross-checked against a
/// numerical maximization of Λ_S; a disagreement above 1e-9 throws
/// NumericalConsistencyError.
OptimalBound optimal_bound(const NoiseTerms& noise);

/// Numerical maximizer of Λ_S over [0, 1] (bisection on the slope sign).
OptimalBound maximize_single_param_bound(const NoiseTerms& noise);

/// Ω = 1 + ln(2π).
double wehrl_constant();

/// 1 + ln(2π√(2δ_Xδ_P)), the balanced bound after eliminating the state.
double balanced_simplified_bound(const NoiseTerms& noise);

struct LiebCheck {
  double lhs;  // S[f ∗ g]
  double rhs;  // λS[f] + (1−λ)S[g] − [λ ln λ + (1−λ) ln(1−λ)]/2
};

LiebCheck lieb_convolution_check(const ProbabilityDensity& f, const ProbabilityDensity& g, double lambda);

/// δ_X / (2δ_P), the position variance of the minimal-entropy squeezed state.
double minimal_variance(const NoiseTerms& noise);

/// Fills every BoundReport field. Λ_S is evaluated at params.lambda_x.
/// Throws BoundViolation if the collective entropy undercuts any bound by more than 1e-5
/// (Ω is only enforced for products ≥ 1/2).
BoundReport report(const SystemState& state, const NoiseTerms& noise, const BoundParams& params);
/// Same, with explicit base grids for |ψ|² and |ψ̃|².
BoundReport report(const SystemState& state, const NoiseTerms& noise, const BoundParams& params, const Grid& xgrid,
                   const Grid& pgrid);

}  // namespace entropic
