#include "entropic/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "entropic/errors.hpp"

namespace entropic {

namespace {

constexpr double kPi = std::numbers::pi;

double trapezoid_norm(std::span<const Complex> values, double h) {
  std::vector<double> mod2(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) mod2[i] = std::norm(values[i]);
  return trapezoid(mod2, h);
}

Complex interpolate(const GridWavefunction& psi, double x) {
  const Grid& g = psi.grid;
  const double t = (x - g.min()) / g.spacing();
  const auto n = static_cast<long>(psi.values.size());
  if (t < 0.0 || t > static_cast<double>(n - 1)) return {0.0, 0.0};
  const auto i = std::min(static_cast<long>(std::floor(t)), n - 2);
  const double u = t - static_cast<double>(i);
  auto at = [&](long k) { return (k < 0 || k >= n) ? Complex{} : psi.values[static_cast<std::size_t>(k)]; };
  const Complex p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
  return p1 + 0.5 * u * (p2 - p0 + u * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + u * (3.0 * (p1 - p2) + p3 - p0)));
}

// Σ_n conj(c_{n+2}) c_n √((n+1)(n+2)), the ⟨a†²⟩ cross term.
double raising_cross_term(std::span<const Complex> c) {
  Complex sum{};
  for (std::size_t n = 0; n + 2 < c.size(); ++n) {
    sum += std::conj(c[n + 2]) * c[n] * std::sqrt(static_cast<double>((n + 1) * (n + 2)));
  }
  return sum.real();
}

double number_weighted(std::span<const Complex> c) {
  double sum = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) sum += std::norm(c[n]) * (static_cast<double>(n) + 0.5);
  return sum;
}

std::size_t top_level(std::span<const Complex> c) {
  std::size_t top = 0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (std::norm(c[n]) > 0.0) top = n;
  }
  return top;
}

// Σ c_n phase^n ψ_n(x); phase = -i gives the momentum representation.
Complex fock_amplitude(std::span<const Complex> c, double x, Complex phase) {
  std::vector<double> psi(c.size());
  hermite_wavefunctions(x, psi);
  Complex sum{};
  Complex factor{1.0, 0.0};
  for (std::size_t n = 0; n < c.size(); ++n) {
    sum += c[n] * factor * psi[n];
    factor *= phase;
  }
  return sum;
}

double gaussian_amplitude(double x, double variance) {
  return std::pow(2.0 * kPi * variance, -0.25) * std::exp(-x * x / (4.0 * variance));
}

// Direct quadrature of (2π)^(-1/2) ∫ f(x) e^(sign·i k x) dx onto `out_grid`.
std::vector<Complex> continuum_fourier(const Grid& in_grid, std::span<const Complex> in,
                                       const Grid& out_grid, double sign) {
  const double h = in_grid.spacing();
  const double norm = h / std::sqrt(2.0 * kPi);
  const std::size_t n = in.size();
  std::vector<Complex> out(out_grid.count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double p = out_grid.at(k);
    const Complex step = std::polar(1.0, sign * p * h);
    Complex phase = std::polar(1.0, sign * p * in_grid.min());
    Complex sum{};
    for (std::size_t j = 0; j < n; ++j) {
      const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
      sum += w * in[j] * phase;
      phase *= step;
    }
    out[k] = norm * sum;
  }
  return out;
}

ProbabilityDensity density_from_samples(const Grid& grid, std::vector<double> raw, const char* what) {
  const double mass = trapezoid(raw, grid.spacing());
  const double deficit = 1.0 - mass;
  if (deficit >= kTruncationTolerance) {
    throw TruncationError(std::string(what) + " grid too narrow", deficit);
  }
  return ProbabilityDensity::normalized(grid, std::move(raw));
}

}  // namespace

void hermite_wavefunctions(double x, std::span<double> out) {
  if (out.empty()) return;
  if (out.size() > kMaxFockLevel + 1) {
    throw CapabilityError("Hermite functions are limited to n <= " + std::to_string(kMaxFockLevel));
  }
  out[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (out.size() == 1) return;
  out[1] = std::sqrt(2.0) * x * out[0];
  for (std::size_t n = 1; n + 1 < out.size(); ++n) {
    const double nd = static_cast<double>(n);
    out[n + 1] = std::sqrt(2.0 / (nd + 1.0)) * x * out[n] - std::sqrt(nd / (nd + 1.0)) * out[n - 1];
  }
}

double hermite_wavefunction(std::size_t n, double x) {
  if (n > kMaxFockLevel) {
    throw CapabilityError("Hermite functions are limited to n <= " + std::to_string(kMaxFockLevel));
  }
  std::vector<double> psi(n + 1);
  hermite_wavefunctions(x, psi);
  return psi[n];
}

SystemState make_squeezed(double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw DomainError("squeezed state requires a positive finite variance");
  }
  return SystemState(SqueezedVacuum{sigma2});
}

SystemState make_fock(std::vector<Complex> coeffs) {
  if (coeffs.empty()) throw DomainError("Fock superposition needs at least one coefficient");
  if (coeffs.size() > kMaxFockLevel + 1) {
    throw CapabilityError("Fock superposition exceeds n = " + std::to_string(kMaxFockLevel));
  }
  double norm2 = 0.0;
  for (const Complex& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("non-finite Fock coefficient");
    norm2 += std::norm(c);
  }
  if (!(norm2 > 0.0)) throw DomainError("Fock coefficients are all zero");
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& c : coeffs) c *= scale;
  return SystemState(FockSuperposition{std::move(coeffs)});
}

SystemState make_grid_wavefunction(Grid grid, std::vector<Complex> values) {
  if (values.size() != grid.count()) throw DomainError("wavefunction size does not match grid");
  const double norm2 = trapezoid_norm(values, grid.spacing());
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw DomainError("wavefunction has no norm");
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& v : values) v *= scale;
  return SystemState(GridWavefunction{grid, std::move(values)});
}

Complex SystemState::position_amplitude(double x) const {
  return std::visit(
      [x](const auto& rep) -> Complex {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, SqueezedVacuum>) {
          return gaussian_amplitude(x, rep.sigma2);
        } else if constexpr (std::is_same_v<T, FockSuperposition>) {
          return fock_amplitude(rep.coeffs, x, {1.0, 0.0});
        } else {
          return interpolate(rep, x);
        }
      },
      rep_);
}

Complex SystemState::momentum_amplitude(double p) const {
  return std::visit(
      [p](const auto& rep) -> Complex {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, SqueezedVacuum>) {
          return gaussian_amplitude(p, 0.25 / rep.sigma2);
        } else if constexpr (std::is_same_v<T, FockSuperposition>) {
          return fock_amplitude(rep.coeffs, p, {0.0, -1.0});
        } else {
          const Grid single(p, p + 1.0, 2);
          return continuum_fourier(rep.grid, rep.values, single, -1.0).front();
        }
      },
      rep_);
}

double SystemState::second_moment_x() const {
  return std::visit(
      [](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, SqueezedVacuum>) {
          return rep.sigma2;
        } else if constexpr (std::is_same_v<T, FockSuperposition>) {
          return number_weighted(rep.coeffs) + raising_cross_term(rep.coeffs);
        } else {
          std::vector<double> x2(rep.values.size());
          for (std::size_t i = 0; i < x2.size(); ++i) {
            const double x = rep.grid.at(i);
            x2[i] = x * x * std::norm(rep.values[i]);
          }
          return trapezoid(x2, rep.grid.spacing());
        }
      },
      rep_);
}

double SystemState::second_moment_p() const {
  return std::visit(
      [](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, SqueezedVacuum>) {
          return 0.25 / rep.sigma2;
        } else if constexpr (std::is_same_v<T, FockSuperposition>) {
          return number_weighted(rep.coeffs) - raising_cross_term(rep.coeffs);
        } else {
          // ∫|ψ'|² dx with central differences.
          const double h = rep.grid.spacing();
          const std::size_t n = rep.values.size();
          std::vector<double> d2(n, 0.0);
          for (std::size_t i = 1; i + 1 < n; ++i) {
            d2[i] = std::norm((rep.values[i + 1] - rep.values[i - 1]) / (2.0 * h));
          }
          return trapezoid(d2, h);
        }
      },
      rep_);
}

Grid auto_position_grid(const SystemState& state, std::size_t count) {
  if (const auto* psi = state.as<GridWavefunction>()) return psi->grid;
  double half = 8.0 * std::sqrt(state.second_moment_x()) + 2.0;
  if (const auto* fock = state.as<FockSuperposition>()) {
    half = std::max(half, std::sqrt(2.0 * static_cast<double>(top_level(fock->coeffs)) + 1.0) + 6.0);
  }
  return Grid::symmetric(half, count);
}

Grid auto_momentum_grid(const SystemState& state, std::size_t count) {
  double half = 8.0 * std::sqrt(state.second_moment_p()) + 2.0;
  if (const auto* fock = state.as<FockSuperposition>()) {
    half = std::max(half, std::sqrt(2.0 * static_cast<double>(top_level(fock->coeffs)) + 1.0) + 6.0);
  }
  return Grid::symmetric(half, count);
}

ProbabilityDensity position_density(const SystemState& state, const Grid& grid) {
  std::vector<double> raw(grid.count());
  if (const auto* fock = state.as<FockSuperposition>()) {
    std::vector<double> psi(fock->coeffs.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      hermite_wavefunctions(grid.at(i), psi);
      Complex amp{};
      for (std::size_t n = 0; n < psi.size(); ++n) amp += fock->coeffs[n] * psi[n];
      raw[i] = std::norm(amp);
    }
  } else {
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = std::norm(state.position_amplitude(grid.at(i)));
  }
  return density_from_samples(grid, std::move(raw), "position");
}

ProbabilityDensity position_density(const SystemState& state) {
  return position_density(state, auto_position_grid(state));
}

ProbabilityDensity momentum_density(const SystemState& state, const Grid& grid) {
  std::vector<double> raw(grid.count());
  if (const auto* psi = state.as<GridWavefunction>()) {
    const auto tilde = continuum_fourier(psi->grid, psi->values, grid, -1.0);
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = std::norm(tilde[i]);
  } else if (const auto* fock = state.as<FockSuperposition>()) {
    // ψ̃(p) = Σ c_n (-i)^n ψ_n(p)
    std::vector<Complex> rotated(fock->coeffs);
    Complex factor{1.0, 0.0};
    for (Complex& c : rotated) {
      c *= factor;
      factor *= Complex{0.0, -1.0};
    }
    std::vector<double> basis(rotated.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      hermite_wavefunctions(grid.at(i), basis);
      Complex amp{};
      for (std::size_t n = 0; n < basis.size(); ++n) amp += rotated[n] * basis[n];
      raw[i] = std::norm(amp);
    }
  } else {
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = std::norm(state.momentum_amplitude(grid.at(i)));
  }
  return density_from_samples(grid, std::move(raw), "momentum");
}

ProbabilityDensity momentum_density(const SystemState& state) {
  return momentum_density(state, auto_momentum_grid(state));
}

double state_variance(const ProbabilityDensity& density) {
  const Grid& g = density.grid();
  std::vector<double> x1(g.count()), x2(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) {
    const double x = g.at(i);
    x1[i] = x * density[i];
    x2[i] = x * x * density[i];
  }
  const double m1 = trapezoid(x1, g.spacing());
  return trapezoid(x2, g.spacing()) - m1 * m1;
}

GridWavefunction fourier_transform(const GridWavefunction& psi, const Grid& pgrid) {
  return {pgrid, continuum_fourier(psi.grid, psi.values, pgrid, -1.0)};
}

GridWavefunction inverse_fourier_transform(const GridWavefunction& psi_tilde, const Grid& xgrid) {
  return {xgrid, continuum_fourier(psi_tilde.grid, psi_tilde.values, xgrid, +1.0)};
}

}  // namespace entropic
