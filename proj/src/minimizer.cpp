#include "entropic/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "entropic/distributions.hpp"
#include "entropic/errors.hpp"

namespace entropic {

void OptimizerConfig::validate() const {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (n_max > kMaxFockLevel) throw CapabilityError("n_max exceeds the Hermite cap");
  if (max_iters < 1) throw DomainError("max_iters must be positive");
  if (!(simplex_tol > 0.0)) throw DomainError("simplex_tol must be positive");
  if (restarts < 1) throw DomainError("restarts must be at least 1");
  if (!(initial_step > 0.0)) throw DomainError("initial_step must be positive");
  if (grid_points < 65) throw DomainError("grid_points must be at least 65");
}

namespace {

using Point = std::vector<double>;

class Simplex {
public:
  Simplex(const Objective& objective, NelderMeadResult& tally) : objective_(objective), tally_(tally) {}

  double eval(const Point& x) {
    const double v = objective_(x);
    ++tally_.evaluations;
    if (!std::isfinite(v)) {
      throw SearchError("objective returned a non-finite value", tally_);
    }
    if (tally_.argmin.empty() || v < tally_.value) {
      tally_.argmin = x;
      tally_.value = v;
    }
    return v;
  }

  void build(const Point& center, double step) {
    const std::size_t n = center.size();
    vertices_.assign(n + 1, center);
    values_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) vertices_[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) values_[i] = eval(vertices_[i]);
    order();
  }

  double spread() const { return values_.back() - values_.front(); }
  double best_value() const { return values_.front(); }
  const Point& best() const { return vertices_.front(); }

  void iterate() {
    const std::size_t n = vertices_.size() - 1;
    Point centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += vertices_[v][i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto along = [&](double t) {
      Point p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (vertices_[n][i] - centroid[i]);
      return p;
    };

    const double f_best = values_.front();
    const double f_second_worst = values_[n - 1];
    const double f_worst = values_[n];

    Point reflected = along(-1.0);
    const double f_reflected = eval(reflected);
    if (f_reflected < f_best) {
      Point expanded = along(-2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        replace_worst(std::move(expanded), f_expanded);
      } else {
        replace_worst(std::move(reflected), f_reflected);
      }
      return;
    }
    if (f_reflected < f_second_worst) {
      replace_worst(std::move(reflected), f_reflected);
      return;
    }
    if (f_reflected < f_worst) {
      Point outside = along(-0.5);
      const double f_outside = eval(outside);
      if (f_outside <= f_reflected) {
        replace_worst(std::move(outside), f_outside);
        return;
      }
    } else {
      Point inside = along(0.5);
      const double f_inside = eval(inside);
      if (f_inside < f_worst) {
        replace_worst(std::move(inside), f_inside);
        return;
      }
    }
    shrink();
  }

private:
  void replace_worst(Point p, double f) {
    vertices_.back() = std::move(p);
    values_.back() = f;
    order();
  }

  void shrink() {
    const Point& best = vertices_.front();
    for (std::size_t v = 1; v < vertices_.size(); ++v) {
      for (std::size_t i = 0; i < best.size(); ++i) vertices_[v][i] = best[i] + 0.5 * (vertices_[v][i] - best[i]);
      values_[v] = eval(vertices_[v]);
    }
    order();
  }

  // Stable ordering keeps ties deterministic.
  void order() {
    std::vector<std::size_t> idx(values_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values_[a] < values_[b]; });
    std::vector<Point> v2;
    std::vector<double> f2;
    v2.reserve(idx.size());
    f2.reserve(idx.size());
    for (std::size_t i : idx) {
      v2.push_back(std::move(vertices_[i]));
      f2.push_back(values_[i]);
    }
    vertices_ = std::move(v2);
    values_ = std::move(f2);
  }

  const Objective& objective_;
  NelderMeadResult& tally_;
  std::vector<Point> vertices_;
  std::vector<double> values_;
};

}  // namespace

NelderMeadResult nelder_mead(const Objective& objective, std::span<const double> init,
                             const OptimizerConfig& config) {
  if (init.empty()) throw DomainError("Nelder-Mead needs at least one variable");
  if (!(config.simplex_tol > 0.0) || config.max_iters < 1 || !(config.initial_step > 0.0)) {
    throw DomainError("invalid Nelder-Mead configuration");
  }
  NelderMeadResult result;
  Simplex simplex(objective, result);
  simplex.build(Point(init.begin(), init.end()), config.initial_step);

  double round_start = simplex.best_value();
  while (result.iterations < config.max_iters) {
    if (simplex.spread() < config.simplex_tol) {
      // Converged round. Accept if the round made no real progress, otherwise restart around the best point.
      if (round_start - simplex.best_value() < config.simplex_tol) {
        result.converged = true;
        break;
      }
      round_start = simplex.best_value();
      const Point center = simplex.best();
      simplex.build(center, config.initial_step);
      continue;
    }
    simplex.iterate();
    ++result.iterations;
  }
  return result;
}

std::vector<Complex> unpack_coefficients(std::span<const double> packed) {
  std::vector<Complex> c(packed.size() / 2);
  double norm2 = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    c[n] = {packed[2 * n], packed[2 * n + 1]};
    norm2 += std::norm(c[n]);
  }
  if (norm2 > 0.0) {
    const double s = 1.0 / std::sqrt(norm2);
    for (Complex& v : c) v *= s;
  }
  return c;
}

FockEntropyModel::FockEntropyModel(const NoiseTerms& noise, std::size_t n_max, std::size_t grid_points)
    : n_max_(n_max), x_out_(0.0, 1.0, 2), p_out_(0.0, 1.0, 2) {
  if (n_max > kMaxFockLevel) throw CapabilityError("n_max exceeds the Hermite cap");
  const double half = std::sqrt(2.0 * static_cast<double>(n_max) + 1.0) + 8.0;
  const Grid base = Grid::symmetric(half, grid_points);
  const std::size_t levels = n_max + 1;

  std::vector<double> basis(levels * base.count());  // basis[n * count + i]
  std::vector<double> row(levels);
  for (std::size_t i = 0; i < base.count(); ++i) {
    hermite_wavefunctions(base.at(i), row);
    for (std::size_t n = 0; n < levels; ++n) basis[n * base.count() + i] = row[n];
  }

  std::vector<double> product(base.count());
  auto fill = [&](double delta, Grid& out_grid, std::vector<double>& table) {
    bool first = true;
    for (std::size_t m = 0; m < levels; ++m) {
      for (std::size_t n = m; n < levels; ++n) {
        for (std::size_t i = 0; i < base.count(); ++i) {
          product[i] = basis[m * base.count() + i] * basis[n * base.count() + i];
        }
        GridSamples s = gaussian_smooth(base, product, delta);
        if (first) {
          out_grid = s.grid;
          table.reserve(levels * (levels + 1) / 2 * s.values.size());
          first = false;
        }
        table.insert(table.end(), s.values.begin(), s.values.end());
      }
    }
  };
  fill(noise.delta_x(), x_out_, x_products_);
  fill(noise.delta_p(), p_out_, p_products_);
}

double FockEntropyModel::axis_entropy(std::span<const Complex> coeffs, const std::vector<double>& table,
                                      const Grid& grid) const {
  const std::size_t m_count = grid.count();
  std::vector<double> density(m_count, 0.0);
  std::size_t pair = 0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    for (std::size_t n = m; n < coeffs.size(); ++n, ++pair) {
      const double weight = (m == n) ? std::norm(coeffs[m]) : 2.0 * (std::conj(coeffs[m]) * coeffs[n]).real();
      if (weight == 0.0) continue;
      const double* src = &table[pair * m_count];
      for (std::size_t i = 0; i < m_count; ++i) density[i] += weight * src[i];
    }
  }
  for (double& v : density) v = std::max(v, 0.0);
  const double mass = trapezoid(density, grid.spacing());
  for (double& v : density) v /= mass;
  return differential_entropy(density, grid.spacing());
}

EntropyResult FockEntropyModel::evaluate(std::span<const Complex> coeffs) const {
  if (coeffs.size() != n_max_ + 1) throw DomainError("coefficient count does not match n_max");
  std::vector<Complex> rotated(coeffs.begin(), coeffs.end());
  Complex factor{1.0, 0.0};
  for (Complex& c : rotated) {
    c *= factor;
    factor *= Complex{0.0, -1.0};
  }
  const double sx = axis_entropy(coeffs, x_products_, x_out_);
  const double sp = axis_entropy(rotated, p_products_, p_out_);
  return {sx, sp, sx + sp};
}

double FockEntropyModel::collective(std::span<const double> packed) const {
  const auto c = unpack_coefficients(packed);
  double norm2 = 0.0;
  for (const Complex& v : c) norm2 += std::norm(v);
  if (!(norm2 > 0.0)) return std::numeric_limits<double>::max();
  return evaluate(c).collective;
}

OptimizationResult find_minimal_entropy_state(const NoiseTerms& noise, const OptimizerConfig& config) {
  config.validate();
  const FockEntropyModel model(noise, config.n_max, config.grid_points);
  const Objective objective = [&model](std::span<const double> v) { return model.collective(v); };
  const std::size_t dim = 2 * (config.n_max + 1);

  std::vector<std::future<RestartOutcome>> runs;
  for (std::size_t r = 0; r < config.restarts; ++r) {
    runs.push_back(std::async(std::launch::async, [&, r] {
      std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                        static_cast<std::uint32_t>(r)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> normal(0.0, 1.0);
      std::vector<double> init(dim);
      for (double& v : init) v = normal(rng);
      const NelderMeadResult nm = nelder_mead(objective, init, config);
      return RestartOutcome{unpack_coefficients(nm.argmin), nm.value, nm.iterations, nm.converged};
    }));
  }

  OptimizationResult result;
  for (auto& f : runs) result.restarts.push_back(f.get());
  std::size_t best = 0;
  for (std::size_t r = 1; r < result.restarts.size(); ++r) {
    if (result.restarts[r].entropy < result.restarts[best].entropy) best = r;
  }
  const RestartOutcome& winner = result.restarts[best];
  result.coeffs = winner.coeffs;
  result.entropy = winner.entropy;
  result.iterations = winner.iterations;
  result.converged = winner.converged;
  result.best_restart = best;

  const bool any = std::any_of(result.restarts.begin(), result.restarts.end(),
                               [](const RestartOutcome& o) { return o.converged; });
  if (!any) throw NonConvergenceError("no restart converged within max_iters", std::move(result));
  return result;
}

std::vector<Complex> squeezed_fock_amplitudes(double sigma2, std::size_t n_max) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw DomainError("squeezed variance must be positive");
  // σ² = e^(−2r)/2
  const double r = -0.5 * std::log(2.0 * sigma2);
  const double t = std::tanh(r);
  std::vector<Complex> amps(n_max + 1, Complex{});
  double a = 1.0 / std::sqrt(std::cosh(r));
  for (std::size_t m = 0; 2 * m <= n_max; ++m) {
    amps[2 * m] = a;
    const double md = static_cast<double>(m);
    a *= -t * std::sqrt((2.0 * md + 1.0) * (2.0 * md + 2.0)) / (2.0 * (md + 1.0));
  }
  return amps;
}

double fidelity_with_squeezed(std::span<const Complex> coeffs, double sigma2) {
  const auto squeezed = squeezed_fock_amplitudes(sigma2, kMaxFockLevel);
  double kept = 0.0;
  for (const Complex& s : squeezed) kept += std::norm(s);
  const double deficit = 1.0 - kept;
  if (deficit >= 1e-10) {
    throw CapabilityError("squeezed expansion truncated at n = 64 misses " + std::to_string(deficit) + " of the norm");
  }
  double norm2 = 0.0;
  Complex overlap{};
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    norm2 += std::norm(coeffs[n]);
    if (n < squeezed.size()) overlap += std::conj(squeezed[n]) * coeffs[n];
  }
  if (!(norm2 > 0.0)) throw DomainError("coefficients are all zero");
  return std::clamp(std::norm(overlap) / norm2, 0.0, 1.0);
}

namespace {

// ψ(x + x0) e^(−i p0 x): the state moved to the phase-space origin.
std::vector<Complex> centered_samples(std::span<const Complex> coeffs, const Grid& grid) {
  const PhaseSpaceCenter c = phase_space_center(coeffs);
  std::vector<double> basis(coeffs.size());
  std::vector<Complex> out(grid.count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = grid.at(i);
    hermite_wavefunctions(x + c.x, basis);
    Complex amp{};
    for (std::size_t n = 0; n < basis.size(); ++n) amp += coeffs[n] * basis[n];
    out[i] = amp * std::polar(1.0, -c.p * x);
  }
  return out;
}

double overlap_fidelity(std::span<const Complex> a, std::span<const Complex> b) {
  Complex overlap{};
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double w = (i == 0 || i + 1 == a.size()) ? 0.5 : 1.0;
    overlap += w * std::conj(a[i]) * b[i];
    na += w * std::norm(a[i]);
    nb += w * std::norm(b[i]);
  }
  return std::clamp(std::norm(overlap) / (na * nb), 0.0, 1.0);
}

Grid overlap_grid(std::size_t levels, double extra_width) {
  return Grid::symmetric(std::sqrt(2.0 * static_cast<double>(levels) + 1.0) + 10.0 + extra_width, 4097);
}

}  // namespace

PhaseSpaceCenter phase_space_center(std::span<const Complex> coeffs) {
  Complex a{};
  double norm2 = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    norm2 += std::norm(coeffs[n]);
    if (n > 0) a += std::conj(coeffs[n - 1]) * coeffs[n] * std::sqrt(static_cast<double>(n));
  }
  if (!(norm2 > 0.0)) throw DomainError("coefficients are all zero");
  a /= norm2;
  return {std::sqrt(2.0) * a.real(), std::sqrt(2.0) * a.imag()};
}

double aligned_fidelity_with_squeezed(std::span<const Complex> coeffs, double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw DomainError("squeezed variance must be positive");
  const Grid grid = overlap_grid(coeffs.size(), 8.0 * std::sqrt(sigma2));
  const auto psi = centered_samples(coeffs, grid);
  std::vector<Complex> gauss(grid.count());
  for (std::size_t i = 0; i < gauss.size(); ++i) {
    const double x = grid.at(i);
    gauss[i] = std::exp(-x * x / (4.0 * sigma2));
  }
  return overlap_fidelity(gauss, psi);
}

double centered_fidelity(std::span<const Complex> a, std::span<const Complex> b) {
  const Grid grid = overlap_grid(std::max(a.size(), b.size()), 0.0);
  return overlap_fidelity(centered_samples(a, grid), centered_samples(b, grid));
}

}  // namespace entropic
