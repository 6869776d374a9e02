#include "entropic/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entropic/errors.hpp"

namespace entropic {

Grid::Grid(double min, double max, std::size_t count) : min_(min), max_(max), count_(count) {
  if (!(std::isfinite(min) && std::isfinite(max)) || !(min < max)) {
    throw DomainError("grid requires finite min < max");
  }
  if (count < 2) {
    throw DomainError("grid requires at least 2 points");
  }
}

Grid Grid::symmetric(double half_width, std::size_t count) {
  return Grid(-half_width, half_width, count);
}

std::vector<double> Grid::points() const {
  std::vector<double> xs(count_);
  for (std::size_t i = 0; i < count_; ++i) xs[i] = at(i);
  return xs;
}

Grid Grid::widened(std::size_t extra) const {
  const double h = spacing();
  const double pad = static_cast<double>(extra) * h;
  return Grid(min_ - pad, max_ + pad, count_ + 2 * extra);
}

double trapezoid(std::span<const double> values, double h) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * h;
}

namespace {

void require_non_negative(std::span<const double> values) {
  for (double v : values) {
    if (!(v >= 0.0)) throw DomainError("density values must be non-negative and finite");
  }
}

}  // namespace

ProbabilityDensity::ProbabilityDensity(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.count()) throw DomainError("density size does not match grid");
  require_non_negative(values_);
  const double m = mass();
  if (std::abs(m - 1.0) > kMassTolerance) {
    throw DomainError("density is not normalized: mass " + std::to_string(m));
  }
}

ProbabilityDensity ProbabilityDensity::normalized(Grid grid, std::vector<double> values) {
  if (values.size() != grid.count()) throw DomainError("density size does not match grid");
  for (double& v : values) {
    if (v < 0.0 && v >= -1e-12) v = 0.0;
  }
  require_non_negative(values);
  const double m = trapezoid(values, grid.spacing());
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("density has no mass");
  for (double& v : values) v /= m;
  return ProbabilityDensity(grid, std::move(values));
}

double ProbabilityDensity::value_at(double x) const {
  const double h = grid_.spacing();
  const double t = (x - grid_.min()) / h;
  const auto n = static_cast<long>(values_.size());
  if (t < 0.0 || t > static_cast<double>(n - 1)) return 0.0;
  const auto i = std::min(static_cast<long>(std::floor(t)), n - 2);
  const double u = t - static_cast<double>(i);
  auto sample = [&](long k) { return (k < 0 || k >= n) ? 0.0 : values_[static_cast<std::size_t>(k)]; };
  const double p0 = sample(i - 1), p1 = sample(i), p2 = sample(i + 1), p3 = sample(i + 2);
  const double v = p1 + 0.5 * u * (p2 - p0 + u * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + u * (3.0 * (p1 - p2) + p3 - p0)));
  return std::max(v, 0.0);
}

double ProbabilityDensity::mass() const { return trapezoid(values_, grid_.spacing()); }

double ProbabilityDensity::mean() const {
  std::vector<double> xf(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) xf[i] = grid_.at(i) * values_[i];
  return trapezoid(xf, grid_.spacing());
}

}  // namespace entropic
