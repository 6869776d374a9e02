#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "entropic/apparatus.hpp"
#include "entropic/grid.hpp"
#include "entropic/states.hpp"

namespace entropic {

/// Joint grids are capped at this many points per axis.
inline constexpr std::size_t kMaxJointPoints = 1025;

/// Largest Fock level accepted by `wigner_grid`.
inline constexpr std::size_t kMaxWignerFockLevel = 16;

/// Samples on a grid without the density contract (may be signed).
struct GridSamples {
  Grid grid;
  std::vector<double> values;
};

/// Discrete Gaussian smoothing of `values` with width `delta`.
///
/// The output grid keeps the spacing and adds ceil(8·delta/h) points on each
/// side. Kernel weights are normalized to unit sum, so the narrow-kernel limit
/// reduces to the identity.
GridSamples gaussian_smooth(const Grid& grid, std::span<const double> values, double delta);

/// f ∗ N(0, delta²), renormalized. Throws NumericalConsistencyError if the
/// pre-normalization mass drifts by more than 1e-6.
ProbabilityDensity convolve_gaussian(const ProbabilityDensity& density, double delta);

/// f ∗ g for two densities sharing a grid spacing; output spans [f.min+g.min, f.max+g.max].
ProbabilityDensity convolve(const ProbabilityDensity& f, const ProbabilityDensity& g);

/// |ψ|² ∗ N(0, δ_X²) on the automatic grid with `count` base points.
ProbabilityDensity inferred_position_density(const SystemState& state, const NoiseTerms& noise,
                                             std::size_t count = kDefaultGridPoints);
/// |ψ̃|² ∗ N(0, δ_P²).
ProbabilityDensity inferred_momentum_density(const SystemState& state, const NoiseTerms& noise,
                                             std::size_t count = kDefaultGridPoints);

/// Row-major phase-space array: value(i, k) sits at (xgrid.at(i), pgrid.at(k)).
class PhaseSpaceArray {
public:
  PhaseSpaceArray(Grid xgrid, Grid pgrid, std::vector<double> values);

  const Grid& xgrid() const noexcept { return xgrid_; }
  const Grid& pgrid() const noexcept { return pgrid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator()(std::size_t i, std::size_t k) const noexcept { return values_[i * pgrid_.count() + k]; }

  /// 2-D trapezoidal integral.
  double integral() const;

protected:
  Grid xgrid_;
  Grid pgrid_;
  std::vector<double> values_;
};

/// Wigner function W(x, p). Validated on construction: |W| ≤ 1/π and unit integral within 1e-5.
class WignerGrid : public PhaseSpaceArray {
public:
  WignerGrid(Grid xgrid, Grid pgrid, std::vector<double> values);
};

/// Joint density of inferred position and momentum. Non-negative, unit integral within 1e-5.
class JointDensity : public PhaseSpaceArray {
public:
  JointDensity(Grid xgrid, Grid pgrid, std::vector<double> values);
};

/// W(x,p) = (1/π) ∫ψ*(x+y) ψ(x−y) e^(2ipy) dy by trapezoidal quadrature in y
/// (closed form for squeezed vacua). Fock superpositions are limited to n ≤ 16.
WignerGrid wigner_grid(const SystemState& state, const Grid& xgrid, const Grid& pgrid);

struct JointGrids {
  Grid x;
  Grid p;
};

/// Base (pre-smoothing) grids used by `joint_inferred_density`; the smoothed
/// output stays within `max_points` per axis.
JointGrids joint_base_grids(const SystemState& state, const NoiseTerms& noise,
                            std::size_t max_points = kMaxJointPoints);

/// Wigner function smoothed by the separable Gaussian filter (δ_X, δ_P).
/// Values in [-1e-9, 0) are clamped to zero; anything more negative throws
/// NumericalConsistencyError.
JointDensity joint_inferred_density(const SystemState& state, const NoiseTerms& noise,
                                    std::size_t max_points = kMaxJointPoints);

enum class Axis { X, P };

/// Marginal on `axis`, integrating out the other one.
ProbabilityDensity marginalize(const JointDensity& joint, Axis axis);

}  // namespace entropic
