#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "entropic/apparatus.hpp"
#include "entropic/entropy.hpp"
#include "entropic/grid.hpp"
#include "entropic/states.hpp"

namespace entropic {

struct OptimizerConfig {
  std::size_t n_max = 12;
  std::size_t max_iters = 20000;  // per restart
  double simplex_tol = 1e-9;  // stop once the simplex objective spread falls below this
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  double initial_step = 0.5;  // edge length of the starting simplex
  std::size_t grid_points = 1025;

  void validate() const;
};

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadResult {
  std::vector<double> argmin;
  double value = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
};

/// Raised when the objective returns a non-finite value; carries the best point seen.
class SearchError : public std::runtime_error {
public:
  SearchError(const std::string& what, NelderMeadResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const NelderMeadResult& best() const noexcept { return best_; }

private:
  NelderMeadResult best_;
};

/// Nelder-Mead simplex search (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
///
/// A round ends once the objective spread across the simplex drops below
/// `simplex_tol`; the simplex is then rebuilt around the best vertex and the
/// search continues until a round improves the best value by less than
/// `simplex_tol` (converged) or `max_iters` iterations are spent in total.
NelderMeadResult nelder_mead(const Objective& objective, std::span<const double> init,
                             const OptimizerConfig& config);

/// Collective entropy of Fock superpositions c_0..c_n_max for fixed noise.
///
/// Precomputes the smoothed products ψ_m ψ_n on both axes once, so each
/// evaluation is a weighted sum plus one entropy quadrature per axis.
class FockEntropyModel {
public:
  FockEntropyModel(const NoiseTerms& noise, std::size_t n_max, std::size_t grid_points = 1025);

  std::size_t n_max() const noexcept { return n_max_; }

  /// Entropies of a normalized coefficient vector of length n_max + 1.
  EntropyResult evaluate(std::span<const Complex> coeffs) const;

  /// Objective over 2(n_max+1) reals (interleaved re/im), normalized internally.
  double collective(std::span<const double> packed) const;

private:
  double axis_entropy(std::span<const Complex> coeffs, const std::vector<double>& table, const Grid& grid) const;

  std::size_t n_max_;
  Grid x_out_;
  Grid p_out_;
  std::vector<double> x_products_;  // pair-major, smoothed ψ_m ψ_n on x_out_
  std::vector<double> p_products_;
};

/// Unpacks interleaved (re, im) pairs into normalized coefficients.
std::vector<Complex> unpack_coefficients(std::span<const double> packed);

struct RestartOutcome {
  std::vector<Complex> coeffs;
  double entropy = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct OptimizationResult {
  std::vector<Complex> coeffs;
  double entropy = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::size_t best_restart = 0;
  std::vector<RestartOutcome> restarts;
};

/// No restart converged; the best attempt is attached.
class NonConvergenceError : public std::runtime_error {
public:
  NonConvergenceError(const std::string& what, OptimizationResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const OptimizationResult& best() const noexcept { return best_; }

private:
  OptimizationResult best_;
};

/// Minimizes the collective entropy over Fock superpositions up to n_max from
/// `restarts` seeded standard-normal starts. Picks the lowest entropy (ties go
/// to the lower restart index); deterministic for a fixed seed.
OptimizationResult find_minimal_entropy_state(const NoiseTerms& noise, const OptimizerConfig& config);

/// Even-n number-state amplitudes of the squeezed vacuum with position variance sigma2.
std::vector<Complex> squeezed_fock_amplitudes(double sigma2, std::size_t n_max);

/// |⟨σ|ψ⟩|² using the squeezed expansion up to n = 64. Throws CapabilityError
/// when that expansion misses 1e-10 or more of the norm.
double fidelity_with_squeezed(std::span<const Complex> coeffs, double sigma2);

/// ⟨x⟩ and ⟨p⟩ of a Fock superposition.
struct PhaseSpaceCenter {
  double x;
  double p;
};
PhaseSpaceCenter phase_space_center(std::span<const Complex> coeffs);

/// Fidelity with the squeezed vacuum after displacing the state back to the
/// phase-space origin. The collective entropy is displacement invariant, so
/// this is the shape comparison the uniqueness probe needs.
double aligned_fidelity_with_squeezed(std::span<const Complex> coeffs, double sigma2);

/// |⟨a|b⟩|² after recentering both states at the origin (position-space quadrature).
double centered_fidelity(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace entropic
