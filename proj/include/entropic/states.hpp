#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "entropic/grid.hpp"

namespace entropic {

using Complex = std::complex<double>;

/// Highest number state the Hermite recurrence is trusted for.
inline constexpr std::size_t kMaxFockLevel = 64;

/// Default number of grid points for auto-derived grids.
inline constexpr std::size_t kDefaultGridPoints = 4097;

/// Largest tolerated probability mass lost to grid truncation.
inline constexpr double kTruncationTolerance = 1e-8;

/// Zero-mean squeezed vacuum, parameterized by its position variance (ħ = 1).
struct SqueezedVacuum {
  double sigma2;
};

/// Normalized superposition Σ c_n |n⟩ of number states.
struct FockSuperposition {
  std::vector<Complex> coeffs;
};

/// Position-space wavefunction sampled on a uniform grid, unit norm under the trapezoidal rule.
struct GridWavefunction {
  Grid grid;
  std::vector<Complex> values;
};

/// Pure system state in one of three representations. Immutable once built.
class SystemState {
public:
  using Representation = std::variant<SqueezedVacuum, FockSuperposition, GridWavefunction>;

  const Representation& representation() const noexcept { return rep_; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&rep_);
  }

  /// ψ(x). Defined for every representation (grid wavefunctions interpolate, zero outside).
  Complex position_amplitude(double x) const;
  /// ψ̃(p) for the analytic representations; grid wavefunctions go through `momentum_density`.
  Complex momentum_amplitude(double p) const;

  /// ⟨x²⟩ and ⟨p²⟩, used to size automatic grids.
  double second_moment_x() const;
  double second_moment_p() const;

  friend SystemState make_squeezed(double sigma2);
  friend SystemState make_fock(std::vector<Complex> coeffs);
  friend SystemState make_grid_wavefunction(Grid grid, std::vector<Complex> values);

private:
  explicit SystemState(Representation rep) : rep_(std::move(rep)) {}
  Representation rep_;
};

SystemState make_squeezed(double sigma2);
/// Normalizes the coefficients. Throws DomainError for an all-zero list or more than kMaxFockLevel+1 entries.
SystemState make_fock(std::vector<Complex> coeffs);
/// Normalizes under the trapezoidal rule on `grid`.
SystemState make_grid_wavefunction(Grid grid, std::vector<Complex> values);

/// Normalized Hermite function ψ_n(x) = (2ⁿ n! √π)^(-1/2) H_n(x) e^(-x²/2).
double hermite_wavefunction(std::size_t n, double x);

/// Fills out[0..n_max] with ψ_0(x)..ψ_n_max(x) via the normalized three-term recurrence.
void hermite_wavefunctions(double x, std::span<double> out);

/// Symmetric grids ±(8·√⟨q²⟩ + 2), widened for number states up to the classical turning point.
Grid auto_position_grid(const SystemState& state, std::size_t count = kDefaultGridPoints);
Grid auto_momentum_grid(const SystemState& state, std::size_t count = kDefaultGridPoints);

/// |ψ(x)|² on `grid`, renormalized. Throws TruncationError when the grid misses ≥ 1e-8 of the mass.
ProbabilityDensity position_density(const SystemState& state, const Grid& grid);
ProbabilityDensity position_density(const SystemState& state);

/// |ψ̃(p)|² on `grid`, renormalized, with ψ̃(p) = (2π)^(-1/2) ∫ψ(x) e^(-ipx) dx.
ProbabilityDensity momentum_density(const SystemState& state, const Grid& grid);
ProbabilityDensity momentum_density(const SystemState& state);

/// Second central moment of a density.
double state_variance(const ProbabilityDensity& density);

/// Continuum Fourier transform of a sampled wavefunction onto `pgrid` (direct quadrature).
GridWavefunction fourier_transform(const GridWavefunction& psi, const Grid& pgrid);
/// Inverse of `fourier_transform`, evaluated on `xgrid`.
GridWavefunction inverse_fourier_transform(const GridWavefunction& psi_tilde, const Grid& xgrid);

}  // namespace entropic
