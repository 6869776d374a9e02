#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "entropic/errors.hpp"
#include "entropic/states.hpp"
#include "oracles.hpp"

using namespace entropic;

TEST_CASE("squeezed vacuum variances") {
  const Grid g = Grid::symmetric(8.0, 1025);
  const SystemState vac = make_squeezed(0.5);
  CHECK(state_variance(position_density(vac, g)) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(state_variance(momentum_density(vac, g)) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(state_variance(momentum_density(make_squeezed(1.0))) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(state_variance(momentum_density(make_squeezed(2.0))) == doctest::Approx(0.125).epsilon(1e-6));
  CHECK_THROWS_AS(make_squeezed(-1.0), DomainError);
  CHECK_THROWS_AS(make_squeezed(0.0), DomainError);
}

TEST_CASE("hermite functions") {
  CHECK(hermite_wavefunction(0, 0.0) == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-14));
  CHECK(hermite_wavefunction(0, 0.0) == doctest::Approx(0.751126).epsilon(1e-6));
  CHECK(hermite_wavefunction(1, 0.0) == 0.0);
  CHECK(hermite_wavefunction(5, 1.3) ==
        doctest::Approx(static_cast<double>(oracle::hermite_explicit(5, 1.3L))).epsilon(1e-13));
  for (unsigned n : {2u, 7u, 12u, 20u}) {
    for (double x : {-3.1, -0.4, 0.9, 2.5}) {
      CHECK(hermite_wavefunction(n, x) ==
            doctest::Approx(static_cast<double>(oracle::hermite_explicit(n, x))).epsilon(1e-11));
    }
  }
}

TEST_CASE("fock densities") {
  const Grid g = Grid::symmetric(8.0, 1025);
  const auto fock0 = position_density(make_fock({1.0}), g);
  const auto vac = position_density(make_squeezed(0.5), g);
  for (std::size_t i = 0; i < g.count(); ++i) CHECK(std::abs(fock0[i] - vac[i]) < 1e-9);

  const auto fock1 = position_density(make_fock({0.0, 1.0}), g);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.count(); ++i) {
    const double x = g.at(i);
    worst = std::max(worst, std::abs(fock1[i] - 2.0 * x * x * std::exp(-x * x) / std::sqrt(std::numbers::pi)));
  }
  CHECK(worst < 1e-12);
  CHECK(fock1[g.count() / 2] == 0.0);
  CHECK(state_variance(fock1) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("fock momentum density has the position shape") {
  const Grid g = Grid::symmetric(9.0, 1025);
  const SystemState s = make_fock({0.0, 1.0});
  const auto x = position_density(s, g);
  const auto p = momentum_density(s, g);
  for (std::size_t i = 0; i < g.count(); ++i) CHECK(std::abs(x[i] - p[i]) < 1e-12);
}

TEST_CASE("grid wavefunction momentum") {
  const Grid g = Grid::symmetric(10.0, 2049);
  std::vector<Complex> psi(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) psi[i] = std::exp(-g.at(i) * g.at(i) / 2.0);
  const SystemState s = make_grid_wavefunction(g, psi);
  CHECK(state_variance(momentum_density(s, Grid::symmetric(10.0, 1025))) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("state variance of simple densities") {
  const Grid g = Grid::symmetric(10.0, 4097);
  std::vector<double> gauss(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) gauss[i] = oracle::gaussian(g.at(i), 1.0);
  CHECK(state_variance(ProbabilityDensity::normalized(g, gauss)) == doctest::Approx(1.0).epsilon(1e-6));

  const Grid u = Grid::symmetric(1.0, 4097);
  CHECK(state_variance(ProbabilityDensity::normalized(u, std::vector<double>(u.count(), 0.5))) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("construction normalizes") {
  const SystemState s = make_fock({3.0, Complex(0.0, 4.0)});
  const auto& c = s.as<FockSuperposition>()->coeffs;
  CHECK(std::norm(c[0]) + std::norm(c[1]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(make_fock({0.0, 0.0}), DomainError);
  CHECK_THROWS(make_fock(std::vector<Complex>(kMaxFockLevel + 2, 1.0)));

  const Grid g = Grid::symmetric(8.0, 801);
  std::vector<Complex> psi(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) psi[i] = 3.0 * std::exp(-g.at(i) * g.at(i));
  const SystemState state = make_grid_wavefunction(g, psi);
  const auto* w = state.as<GridWavefunction>();
  std::vector<double> mod2(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) mod2[i] = std::norm(w->values[i]);
  CHECK(trapezoid(mod2, g.spacing()) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("truncation is reported") {
  CHECK_THROWS_AS(position_density(make_squeezed(0.5), Grid::symmetric(2.0, 401)), TruncationError);
}

TEST_CASE("property: squeezed uncertainty product is 1/4") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const double s2 = oracle::log_uniform(rng, 0.05, 20.0);
    const SystemState s = make_squeezed(s2);
    const double vx = state_variance(position_density(s));
    const double vp = state_variance(momentum_density(s));
    CHECK(vx * vp == doctest::Approx(0.25).epsilon(1e-6));
  }
}

TEST_CASE("property: random real fock superpositions are normalized on both axes") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 10; ++i) {
    std::vector<Complex> c(9);
    for (auto& v : c) v = normal(rng);
    const SystemState s = make_fock(c);
    const Grid g = auto_position_grid(s);
    const auto x = position_density(s, g);
    const auto p = momentum_density(s, auto_momentum_grid(s));
    // Mass before the internal renormalization, recomputed from the oracle.
    std::vector<double> raw(g.count());
    for (std::size_t k = 0; k < g.count(); ++k) raw[k] = oracle::fock_density(c, g.at(k));
    CHECK(trapezoid(raw, g.spacing()) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(x.mass() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p.mass() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("property: fock density matches per-point summation") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 5; ++i) {
    const auto c = oracle::random_fock(rng, 10);
    const SystemState s = make_fock(c);
    const Grid g = auto_position_grid(s, 513);
    const auto d = position_density(s, g);
    std::vector<double> raw(g.count());
    for (std::size_t k = 0; k < g.count(); ++k) raw[k] = oracle::fock_density(c, g.at(k));
    const double mass = trapezoid(raw, g.spacing());
    for (std::size_t k = 0; k < g.count(); ++k) CHECK(std::abs(d[k] - raw[k] / mass) < 1e-12);
  }
}

TEST_CASE("property: fourier round trip") {
  const Grid xg = Grid::symmetric(12.0, 601);
  const Grid pg = Grid::symmetric(12.0, 601);
  std::vector<Complex> psi(xg.count());
  for (std::size_t i = 0; i < xg.count(); ++i) {
    const double x = xg.at(i);
    psi[i] = (x + Complex(0.0, 0.3) * x * x) * std::exp(-x * x / 2.0);
  }
  const SystemState state = make_grid_wavefunction(xg, psi);
  const auto* orig = state.as<GridWavefunction>();
  const GridWavefunction tilde = fourier_transform(*orig, pg);
  const GridWavefunction back = inverse_fourier_transform(tilde, xg);
  const SystemState again = make_grid_wavefunction(back.grid, back.values);
  const auto p1 = momentum_density(state, pg);
  const auto p2 = momentum_density(again, pg);
  double worst = 0.0;
  for (std::size_t i = 0; i < pg.count(); ++i) worst = std::max(worst, std::abs(p1[i] - p2[i]));
  CHECK(worst < 1e-8);
}
