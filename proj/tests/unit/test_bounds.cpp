#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "entropic/bounds.hpp"
#include "entropic/entropy.hpp"
#include "entropic/errors.hpp"
#include "oracles.hpp"

using namespace entropic;

namespace {

constexpr double kPi = std::numbers::pi;
const double kOmega = 1.0 + std::log(2.0 * kPi);
const NoiseTerms kHalf(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));

ProbabilityDensity gaussian_density(const Grid& g, double variance, double shift = 0.0) {
  std::vector<double> v(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) v[i] = oracle::gaussian(g.at(i) - shift, variance);
  return ProbabilityDensity::normalized(g, std::move(v));
}

}  // namespace

TEST_CASE("theta") {
  CHECK(theta(0.0) == 0.5);
  CHECK(theta(1.0) == 0.0);
  CHECK(theta(0.5) == doctest::Approx(0.25 + 0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(theta(0.5) == doctest::Approx(0.596574).epsilon(1e-6));
  const double l = 0.3;
  CHECK(theta(l) == doctest::Approx(0.5 * (1 - l) * (1 - std::log(1 - l)) - 0.5 * l * std::log(l)).epsilon(1e-15));
  CHECK_THROWS_AS(theta(-0.1), DomainError);
  CHECK_THROWS_AS(theta(1.1), DomainError);
}

TEST_CASE("gaussian weight") {
  CHECK(gaussian_weight(1.0, 1.0) == 0.5);
  CHECK(gaussian_weight(2.0, 1.0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(gaussian_weight(1e-6, 1.0) == doctest::Approx(1e-12).epsilon(1e-9));
  CHECK_THROWS_AS(gaussian_weight(0.0, 1.0), DomainError);
}

TEST_CASE("lieb family special cases") {
  const NoiseTerms n(1.3, 0.9);
  const double sx = 1.7, sp = 0.4;
  CHECK(lieb_lower_bound(sx, sp, n, BoundParams(0.0, 0.0)) ==
        doctest::Approx(1.0 + std::log(2.0 * kPi * 1.3 * 0.9)).epsilon(1e-14));
  CHECK(lieb_lower_bound(sx, sp, n, BoundParams(1.0, 1.0)) == doctest::Approx(sx + sp).epsilon(1e-14));
  CHECK(lieb_lower_bound(sx, sp, n, BoundParams(0.5, 0.5)) ==
        doctest::Approx(std::log(2.0) + 0.5 * (lieb_lower_bound(sx, sp, n, BoundParams(0.0, 0.0)) +
                                               lieb_lower_bound(sx, sp, n, BoundParams(1.0, 1.0))))
            .epsilon(1e-14));
  CHECK_THROWS_AS(BoundParams(1.2, 0.0), DomainError);
}

TEST_CASE("hirschman deficit") {
  for (double s2 : {0.05, 0.5, 2.0, 9.0}) CHECK(std::abs(hirschman_deficit(make_squeezed(s2))) < 1e-5);
  CHECK(hirschman_constant() == doctest::Approx(1.0 + std::log(kPi)).epsilon(1e-15));

  auto f = [](double x) { return 2.0 * x * x * std::exp(-x * x) / std::sqrt(kPi); };
  const double ref = 2.0 * oracle::simpson_entropy(f, -12.0, 12.0, 40961) - hirschman_constant();
  const double d = hirschman_deficit(make_fock({0.0, 1.0}));
  CHECK(d > 0.5);
  CHECK(std::abs(d - ref) < 1e-5);
}

TEST_CASE("property: random states respect hirschman") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 15; ++i) CHECK(hirschman_deficit(make_fock(oracle::random_fock(rng, 8))) >= -1e-5);
}

TEST_CASE("single parameter bound endpoints and maximum") {
  const NoiseTerms n(1.1, 1.4);
  const double d = noise_product(n);
  CHECK(single_param_bound(n, 0.0) == doctest::Approx(1.0 + std::log(2.0 * kPi * d)).epsilon(1e-15));
  CHECK(single_param_bound(n, 0.0) == doctest::Approx(lieb_lower_bound(0, 0, n, BoundParams(0, 0))).epsilon(1e-15));
  CHECK(single_param_bound(n, 1.0) == doctest::Approx(hirschman_constant()).epsilon(1e-15));
  const double star = 1.0 / (1.0 + 2.0 * d);
  CHECK(single_param_bound(n, star) == doctest::Approx(1.0 + std::log(2.0 * kPi * (d + 0.5))).epsilon(1e-14));

  const auto best = oracle::golden_section_max([&](double l) { return single_param_bound(n, l); }, 0.0, 1.0);
  CHECK(best.x == doctest::Approx(star).epsilon(1e-6));
  CHECK(best.value == doctest::Approx(single_param_bound(n, star)).epsilon(1e-12));
}

TEST_CASE("optimal bound") {
  const OptimalBound floor = optimal_bound(kHalf);
  CHECK(floor.bound == doctest::Approx(kOmega).epsilon(1e-14));
  CHECK(floor.lambda == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(floor.bound - wehrl_constant()) < 1e-12);

  const OptimalBound unit = optimal_bound(NoiseTerms(1.0, 1.0));
  CHECK(unit.bound == doctest::Approx(1.0 + std::log(3.0 * kPi)).epsilon(1e-14));
  CHECK(unit.bound == doctest::Approx(3.243342).epsilon(1e-6));
  CHECK(unit.lambda == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  const OptimalBound ten = optimal_bound(NoiseTerms(std::sqrt(10.0), std::sqrt(10.0)));
  CHECK(ten.bound == doctest::Approx(1.0 + std::log(21.0 * kPi)).epsilon(1e-14));
  const auto golden = oracle::golden_section_max(
      [](double l) { return single_param_bound(NoiseTerms(std::sqrt(10.0), std::sqrt(10.0)), l); }, 0.0, 1.0);
  CHECK(ten.bound == doctest::Approx(golden.value).epsilon(1e-12));

  for (double d : {0.7, 3.0, 250.0}) CHECK(optimal_bound(NoiseTerms(d, 1.0)).bound > wehrl_constant());
}

TEST_CASE("wehrl constant") { CHECK(wehrl_constant() == doctest::Approx(2.837877066409345).epsilon(1e-15)); }

TEST_CASE("minimal variance") {
  CHECK(minimal_variance(NoiseTerms(0.8, 0.8)) == 0.5);
  CHECK(minimal_variance(NoiseTerms(1.0, 0.5)) == 1.0);
  CHECK(minimal_variance(NoiseTerms(0.5, 1.0)) == 0.25);
}

TEST_CASE("lieb convolution inequality") {
  const Grid g = Grid::symmetric(10.0, 2001);
  const double a2 = 0.81, b2 = 0.25;
  const auto f = gaussian_density(g, a2);
  const auto h = gaussian_density(g, b2);
  const double lg = gaussian_weight(std::sqrt(a2), std::sqrt(b2));
  const LiebCheck eq = lieb_convolution_check(f, h, lg);
  CHECK(std::abs(eq.lhs - eq.rhs) < 1e-5);
  const LiebCheck off = lieb_convolution_check(f, h, 0.9 * lg);
  CHECK(off.lhs - off.rhs > 0.0);

  std::vector<double> mix(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) {
    mix[i] = oracle::gaussian(g.at(i) - 2.5, 0.3) + oracle::gaussian(g.at(i) + 2.5, 0.3);
  }
  const auto bimodal = ProbabilityDensity::normalized(g, mix);
  for (double l : {0.0, 0.3, 0.7, 1.0}) {
    const LiebCheck c = lieb_convolution_check(bimodal, h, l);
    CHECK(c.lhs >= c.rhs - 1e-5);
  }
}

TEST_CASE("reports") {
  const BoundReport vac = report(make_squeezed(0.5), kHalf, BoundParams(0.5, 0.5));
  CHECK(std::abs(vac.collective - vac.optimal) < 1e-5);
  CHECK(std::abs(vac.collective - vac.omega) < 1e-5);

  const BoundReport f1 = report(make_fock({0.0, 1.0}), kHalf, BoundParams(0.3, 0.6));
  CHECK(f1.collective > f1.optimal + 1e-3);
  CHECK(f1.lambda_family == doctest::Approx(lieb_lower_bound(f1.s_x_system, f1.s_p_system, kHalf, f1.params)));

  const NoiseTerms two(2.0, 1.0);
  const BoundReport sq = report(make_squeezed(minimal_variance(two)), two, BoundParams(0.5, 0.5));
  CHECK(std::abs(sq.collective - (1.0 + std::log(5.0 * kPi))) < 1e-5);
}

TEST_CASE("sub-floor noise can violate omega without a violation error") {
  const NoiseTerms sub(0.4, 1.0);
  const BoundReport r = report(make_squeezed(minimal_variance(sub)), sub, BoundParams(0.5, 0.5));
  CHECK(r.collective < r.omega);
}

TEST_CASE("property: bound ordering on a log grid of products") {
  for (int i = 0; i < 50; ++i) {
    const double d = 0.5 * std::pow(2000.0, i / 49.0);
    const NoiseTerms n(std::sqrt(d * 3.0), std::sqrt(d / 3.0));
    const double best = optimal_bound(n).bound;
    CHECK(best - wehrl_constant() >= -1e-12);
    CHECK(best >= lieb_lower_bound(0, 0, n, BoundParams(0, 0)) - 1e-12);
    CHECK(best >= balanced_simplified_bound(n) - 1e-12);
    for (int k = 0; k <= 100; ++k) CHECK(best >= single_param_bound(n, k / 100.0) - 1e-12);
  }
}

TEST_CASE("property: single parameter bound is concave") {
  for (double d : {0.5, 1.0, 7.0, 300.0}) {
    const NoiseTerms n(d, 1.0);
    const int m = 400;
    for (int k = 1; k < m; ++k) {
      const double l = static_cast<double>(k) / m, step = 1.0 / m;
      const double second = single_param_bound(n, l + step) - 2.0 * single_param_bound(n, l) +
                            single_param_bound(n, l - step);
      CHECK(second <= 1e-9);
    }
  }
}

TEST_CASE("property: family dominance for random states") {
  std::mt19937_64 rng(52);
  for (int s = 0; s < 4; ++s) {
    const SystemState state = make_fock(oracle::random_fock(rng, 6));
    const SystemEntropies sys = system_entropies(state);
    for (int t = 0; t < 2; ++t) {
      const double dx = oracle::log_uniform(rng, 0.3, 3.0);
      const NoiseTerms n(dx, std::max(0.5 / dx, oracle::log_uniform(rng, 0.3, 3.0)));
      const double c = marginal_entropies(state, n).collective;
      for (int i = 0; i <= 10; ++i) {
        for (int k = 0; k <= 10; ++k) CHECK(c >= lieb_lower_bound(sys.s_x, sys.s_p, n, BoundParams(i / 10.0, k / 10.0)) - 1e-5);
      }
    }
  }
}
