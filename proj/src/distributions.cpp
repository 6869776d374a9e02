#include "entropic/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "entropic/errors.hpp"

namespace entropic {

namespace {

constexpr double kPi = std::numbers::pi;

struct Kernel {
  std::vector<double> weights;  // weights[d + reach] for offset d in [-reach, reach]
  std::size_t reach;
};

Kernel gaussian_kernel(double h, double delta, std::size_t max_reach) {
  // exp underflows past ~38.6 standard deviations.
  const auto natural = static_cast<std::size_t>(std::ceil(39.0 * delta / h));
  const std::size_t reach = std::min(natural, max_reach);
  Kernel k{std::vector<double>(2 * reach + 1), reach};
  double sum = 0.0;
  for (std::size_t i = 0; i < k.weights.size(); ++i) {
    const double d = (static_cast<double>(i) - static_cast<double>(reach)) * h;
    k.weights[i] = std::exp(-d * d / (2.0 * delta * delta));
    sum += k.weights[i];
  }
  for (double& w : k.weights) w /= sum;
  return k;
}

std::size_t widening_points(double h, double delta) {
  return static_cast<std::size_t>(std::ceil(8.0 * delta / h));
}

// out[o] = Σ_j tw_j in[j·stride] K[o − extra − j]; tw are trapezoidal end weights.
void smooth_strided(const double* in, std::size_t n, std::size_t in_stride, const Kernel& kernel,
                    std::size_t extra, double* out, std::size_t out_stride) {
  const std::size_t m = n + 2 * extra;
  const auto reach = static_cast<long>(kernel.reach);
  for (std::size_t o = 0; o < m; ++o) {
    // j − (o − extra) ∈ [−reach, reach]
    const long center = static_cast<long>(o) - static_cast<long>(extra);
    const long lo = std::max(0L, center - reach);
    const long hi = std::min(static_cast<long>(n) - 1, center + reach);
    double acc = 0.0;
    for (long j = lo; j <= hi; ++j) {
      double v = in[static_cast<std::size_t>(j) * in_stride];
      if (j == 0 || j == static_cast<long>(n) - 1) v *= 0.5;
      acc += v * kernel.weights[static_cast<std::size_t>(center - j + reach)];
    }
    out[o * out_stride] = acc;
  }
}

void require_positive_width(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("smoothing width must be positive");
}

// Runs body(begin, end) over [0, n) on a few threads; each index is written by exactly one thread.
template <class Body>
void parallel_rows(std::size_t n, Body body) {
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  if (workers == 1 || n < 64) {
    body(0, n);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t start = 0; start < n; start += chunk) {
    pool.emplace_back([=] { body(start, std::min(n, start + chunk)); });
  }
}

// ψ on the lattice x_min + m·h/sub for m in [-(n-1)·sub, 2(n-1)·sub], so ψ(x_i ± y_j) = lattice[(i + n − 1)·sub ± j].
std::vector<Complex> wavefunction_lattice(const SystemState& state, const Grid& xgrid, std::size_t sub) {
  const std::size_t n = xgrid.count();
  const double h = xgrid.spacing() / static_cast<double>(sub);
  const std::size_t offset = (n - 1) * sub;
  std::vector<Complex> lattice(3 * offset + 1);
  auto position = [&](std::size_t m) {
    return xgrid.min() + (static_cast<double>(m) - static_cast<double>(offset)) * h;
  };
  if (const auto* fock = state.as<FockSuperposition>()) {
    std::vector<double> basis(fock->coeffs.size());
    for (std::size_t m = 0; m < lattice.size(); ++m) {
      hermite_wavefunctions(position(m), basis);
      Complex amp{};
      for (std::size_t q = 0; q < basis.size(); ++q) amp += fock->coeffs[q] * basis[q];
      lattice[m] = amp;
    }
  } else {
    for (std::size_t m = 0; m < lattice.size(); ++m) lattice[m] = state.position_amplitude(position(m));
  }
  return lattice;
}

std::vector<double> quadrature_wigner(const SystemState& state, const Grid& xgrid, const Grid& pgrid) {
  const std::size_t nx = xgrid.count();
  const std::size_t np = pgrid.count();
  // e^(2ipy) must stay resolved in y for every p on the grid, so y may step finer than x.
  const double pmax = std::max(std::abs(pgrid.min()), std::abs(pgrid.max()));
  const double y_step = 0.8 * kPi / (2.0 * std::max(pmax, 1e-300));
  const auto sub = static_cast<std::size_t>(std::max(1.0, std::ceil(xgrid.spacing() / y_step)));
  const double h = xgrid.spacing() / static_cast<double>(sub);
  const auto lattice = wavefunction_lattice(state, xgrid, sub);

  double peak = 0.0;
  for (const Complex& v : lattice) peak = std::max(peak, std::abs(v));
  const double cutoff = 1e-13 * peak;
  std::size_t s_lo = lattice.size(), s_hi = 0;
  for (std::size_t m = 0; m < lattice.size(); ++m) {
    if (std::abs(lattice[m]) > cutoff) {
      s_lo = std::min(s_lo, m);
      s_hi = std::max(s_hi, m);
    }
  }
  std::vector<double> w(nx * np, 0.0);
  if (s_lo > s_hi) return w;

  const std::size_t jmax = (s_hi - s_lo) / 2 + 1;
  // cos/sin(2 p_k y_j) tables.
  std::vector<double> cos_t(np * jmax), sin_t(np * jmax);
  for (std::size_t k = 0; k < np; ++k) {
    const double p = pgrid.at(k);
    for (std::size_t j = 0; j < jmax; ++j) {
      const double arg = 2.0 * p * static_cast<double>(j) * h;
      cos_t[k * jmax + j] = std::cos(arg);
      sin_t[k * jmax + j] = std::sin(arg);
    }
  }

  parallel_rows(nx, [&](std::size_t begin, std::size_t end) {
    std::vector<double> fr(jmax), fi(jmax);
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t c = (i + nx - 1) * sub;  // lattice index of x_i
      if (c < s_lo || c > s_hi) continue;
      const std::size_t ji = std::min({c - s_lo, s_hi - c, jmax - 1});
      for (std::size_t j = 0; j <= ji; ++j) {
        const Complex f = std::conj(lattice[c + j]) * lattice[c - j];
        fr[j] = f.real();
        fi[j] = f.imag();
      }
      for (std::size_t k = 0; k < np; ++k) {
        const double* ct = &cos_t[k * jmax];
        const double* st = &sin_t[k * jmax];
        double acc = 0.0;
        for (std::size_t j = 1; j <= ji; ++j) acc += fr[j] * ct[j] - fi[j] * st[j];
        w[i * np + k] = (h / kPi) * (fr[0] + 2.0 * acc);
      }
    }
  });
  return w;
}

double half_width(const Grid& g) { return std::max(std::abs(g.min()), std::abs(g.max())); }

Grid joint_axis(double support_half, double delta, std::size_t max_points) {
  const double h = 2.0 * (support_half + 8.0 * delta) / static_cast<double>(max_points - 7);
  const auto half_steps = static_cast<std::size_t>(std::ceil(support_half / h));
  return Grid::symmetric(static_cast<double>(half_steps) * h, 2 * half_steps + 1);
}

}  // namespace

GridSamples gaussian_smooth(const Grid& grid, std::span<const double> values, double delta) {
  require_positive_width(delta);
  if (values.size() != grid.count()) throw DomainError("sample count does not match grid");
  const double h = grid.spacing();
  const std::size_t extra = widening_points(h, delta);
  const Kernel kernel = gaussian_kernel(h, delta, grid.count() + extra);
  GridSamples out{grid.widened(extra), std::vector<double>(grid.count() + 2 * extra)};
  smooth_strided(values.data(), values.size(), 1, kernel, extra, out.values.data(), 1);
  return out;
}

ProbabilityDensity convolve_gaussian(const ProbabilityDensity& density, double delta) {
  auto smoothed = gaussian_smooth(density.grid(), density.values(), delta);
  const double drift = std::abs(trapezoid(smoothed.values, smoothed.grid.spacing()) - 1.0);
  if (drift >= 1e-6) {
    throw NumericalConsistencyError("Gaussian convolution lost normalization: drift " + std::to_string(drift));
  }
  return ProbabilityDensity::normalized(smoothed.grid, std::move(smoothed.values));
}

ProbabilityDensity convolve(const ProbabilityDensity& f, const ProbabilityDensity& g) {
  const double h = f.grid().spacing();
  if (std::abs(g.grid().spacing() - h) > 1e-12 * h) {
    throw DomainError("convolution requires equal grid spacings");
  }
  const std::size_t nf = f.grid().count(), ng = g.grid().count();
  const Grid out_grid(f.grid().min() + g.grid().min(), f.grid().max() + g.grid().max(), nf + ng - 1);
  std::vector<double> out(out_grid.count(), 0.0);
  for (std::size_t i = 0; i < nf; ++i) {
    const double fi = f[i] * ((i == 0 || i + 1 == nf) ? 0.5 : 1.0) * h;
    if (fi == 0.0) continue;
    for (std::size_t j = 0; j < ng; ++j) out[i + j] += fi * g[j];
  }
  return ProbabilityDensity::normalized(out_grid, std::move(out));
}

ProbabilityDensity inferred_position_density(const SystemState& state, const NoiseTerms& noise,
                                             std::size_t count) {
  const Grid grid = state.as<GridWavefunction>() ? auto_position_grid(state) : auto_position_grid(state, count);
  return convolve_gaussian(position_density(state, grid), noise.delta_x());
}

ProbabilityDensity inferred_momentum_density(const SystemState& state, const NoiseTerms& noise,
                                             std::size_t count) {
  return convolve_gaussian(momentum_density(state, auto_momentum_grid(state, count)), noise.delta_p());
}

PhaseSpaceArray::PhaseSpaceArray(Grid xgrid, Grid pgrid, std::vector<double> values)
    : xgrid_(xgrid), pgrid_(pgrid), values_(std::move(values)) {
  if (values_.size() != xgrid_.count() * pgrid_.count()) {
    throw DomainError("phase-space array size does not match its grids");
  }
}

double PhaseSpaceArray::integral() const {
  const std::size_t nx = xgrid_.count(), np = pgrid_.count();
  std::vector<double> rows(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    rows[i] = trapezoid(std::span<const double>(values_).subspan(i * np, np), pgrid_.spacing());
  }
  return trapezoid(rows, xgrid_.spacing());
}

WignerGrid::WignerGrid(Grid xgrid, Grid pgrid, std::vector<double> values)
    : PhaseSpaceArray(xgrid, pgrid, std::move(values)) {
  const double bound = 1.0 / kPi + 1e-9;
  for (double v : values_) {
    if (!(std::abs(v) <= bound)) {
      throw NumericalConsistencyError("Wigner value exceeds 1/pi: " + std::to_string(v));
    }
  }
  const double total = integral();
  if (std::abs(total - 1.0) > 1e-5) {
    throw NumericalConsistencyError("Wigner function integrates to " + std::to_string(total));
  }
}

JointDensity::JointDensity(Grid xgrid, Grid pgrid, std::vector<double> values)
    : PhaseSpaceArray(xgrid, pgrid, std::move(values)) {
  for (double v : values_) {
    if (!(v >= 0.0)) throw DomainError("joint density must be non-negative");
  }
  const double total = integral();
  if (std::abs(total - 1.0) > 1e-5) {
    throw NumericalConsistencyError("joint density integrates to " + std::to_string(total));
  }
}

WignerGrid wigner_grid(const SystemState& state, const Grid& xgrid, const Grid& pgrid) {
  const std::size_t nx = xgrid.count(), np = pgrid.count();
  std::vector<double> values(nx * np);
  if (const auto* sq = state.as<SqueezedVacuum>()) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = xgrid.at(i);
      for (std::size_t k = 0; k < np; ++k) {
        const double p = pgrid.at(k);
        values[i * np + k] = std::exp(-x * x / (2.0 * sq->sigma2) - 2.0 * sq->sigma2 * p * p) / kPi;
      }
    }
  } else {
    if (const auto* fock = state.as<FockSuperposition>(); fock && fock->coeffs.size() > kMaxWignerFockLevel + 1) {
      throw CapabilityError("Wigner grid supports Fock levels up to " + std::to_string(kMaxWignerFockLevel));
    }
    values = quadrature_wigner(state, xgrid, pgrid);
  }
  return WignerGrid(xgrid, pgrid, std::move(values));
}

JointGrids joint_base_grids(const SystemState& state, const NoiseTerms& noise, std::size_t max_points) {
  if (max_points < 64) throw DomainError("joint grid needs at least 64 points per axis");
  const double lx = half_width(auto_position_grid(state));
  const double lp = half_width(auto_momentum_grid(state));
  return {joint_axis(lx, noise.delta_x(), max_points), joint_axis(lp, noise.delta_p(), max_points)};
}

JointDensity joint_inferred_density(const SystemState& state, const NoiseTerms& noise, std::size_t max_points) {
  const JointGrids base = joint_base_grids(state, noise, max_points);
  const WignerGrid w = wigner_grid(state, base.x, base.p);

  const std::size_t nx = base.x.count(), np = base.p.count();
  const std::size_t ex = widening_points(base.x.spacing(), noise.delta_x());
  const std::size_t ep = widening_points(base.p.spacing(), noise.delta_p());
  const std::size_t mx = nx + 2 * ex, mp = np + 2 * ep;
  const Kernel kx = gaussian_kernel(base.x.spacing(), noise.delta_x(), nx + ex);
  const Kernel kp = gaussian_kernel(base.p.spacing(), noise.delta_p(), np + ep);

  // Smooth along x (columns of fixed p), then along p.
  std::vector<double> stage(mx * np);
  parallel_rows(np, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      smooth_strided(w.values().data() + k, nx, np, kx, ex, stage.data() + k, np);
    }
  });
  std::vector<double> out(mx * mp);
  parallel_rows(mx, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      smooth_strided(stage.data() + i * np, np, 1, kp, ep, out.data() + i * mp, 1);
    }
  });

  double most_negative = 0.0;
  for (double& v : out) {
    most_negative = std::min(most_negative, v);
    if (v < 0.0) v = 0.0;
  }
  if (most_negative < -1e-9) {
    throw NumericalConsistencyError("smoothed Wigner function is negative: " + std::to_string(most_negative));
  }
  const Grid xo = base.x.widened(ex), po = base.p.widened(ep);
  JointDensity unnormalized(xo, po, out);
  const double total = unnormalized.integral();
  for (double& v : out) v /= total;
  return JointDensity(xo, po, std::move(out));
}

ProbabilityDensity marginalize(const JointDensity& joint, Axis axis) {
  const Grid& xg = joint.xgrid();
  const Grid& pg = joint.pgrid();
  const std::size_t nx = xg.count(), np = pg.count();
  if (axis == Axis::X) {
    std::vector<double> m(nx);
    for (std::size_t i = 0; i < nx; ++i) m[i] = trapezoid(joint.values().subspan(i * np, np), pg.spacing());
    return ProbabilityDensity::normalized(xg, std::move(m));
  }
  std::vector<double> m(np, 0.0);
  std::vector<double> column(nx);
  for (std::size_t k = 0; k < np; ++k) {
    for (std::size_t i = 0; i < nx; ++i) column[i] = joint(i, k);
    m[k] = trapezoid(column, xg.spacing());
  }
  return ProbabilityDensity::normalized(pg, std::move(m));
}

}  // namespace entropic
