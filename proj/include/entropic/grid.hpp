#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace entropic {

/// Uniform 1-D grid of `count` points spanning [min, max] inclusive.
class Grid {
public:
  Grid(double min, double max, std::size_t count);

  /// Grid centered on zero.
  static Grid symmetric(double half_width, std::size_t count);

  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  std::size_t count() const noexcept { return count_; }
  double spacing() const noexcept { return (max_ - min_) / static_cast<double>(count_ - 1); }
  double at(std::size_t i) const noexcept { return min_ + static_cast<double>(i) * spacing(); }
  std::vector<double> points() const;

  /// Extends the grid by `extra` points on each side, keeping the spacing.
  Grid widened(std::size_t extra) const;

  bool operator==(const Grid&) const = default;

private:
  double min_;
  double max_;
  std::size_t count_;
};

/// Trapezoidal integral of samples with spacing h.
double trapezoid(std::span<const double> values, double h);

/// Non-negative density on a uniform grid with unit trapezoidal mass.
///
/// Construction validates both properties (tolerance 1e-6 on the mass);
/// `normalized` rescales first and only requires non-negativity.
class ProbabilityDensity {
public:
  static constexpr double kMassTolerance = 1e-6;

  ProbabilityDensity(Grid grid, std::vector<double> values);

  /// Rescales `values` to unit mass. Entries in [-1e-12, 0) are clamped to zero.
  static ProbabilityDensity normalized(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  /// Cubic (Catmull-Rom) interpolation; zero outside the grid.
  double value_at(double x) const;

  double mass() const;
  double mean() const;

private:
  Grid grid_;
  std::vector<double> values_;
};

}  // namespace entropic
