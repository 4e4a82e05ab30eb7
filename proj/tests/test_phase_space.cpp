#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "psqm/phase_space.hpp"
#include "psqm/transform.hpp"

using namespace psqm;

namespace {

Grid1D test_grid() { return make_grid(-8.0, 16.0 / 256, 256); }

PhaseSpaceDensity make_density(const StateSpec& spec,
                               Convention conv = Convention::plain) {
  const WaveFunction psi = build_state(spec, test_grid());
  return density(probability_amplitude(build_characteristic(psi, conv)));
}

}  // namespace

TEST_CASE("phi rows are the momentum transforms of xi rows") {
  const Grid1D g = test_grid();
  const WaveFunction psi = build_state(GaussianSpec{0.0, 0.0, 1.0}, g);
  const CharacteristicAmplitude xi = build_characteristic(psi, Convention::plain);
  const ProbabilityAmplitudePS phi = probability_amplitude(xi);

  // Separable input: phi(x, p) = psi(x) * psi~(p).
  const MomentumField tilde = to_momentum(psi.field);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t k = 0; k < g.n; ++k)
      worst = std::max(worst, std::abs(phi.values[i * g.n + k] -
                                       psi.field.values[i] * tilde.values[k]));
  CHECK(worst < 1e-12);
}

TEST_CASE("zero xi maps to zero phi and back") {
  const Grid1D g = test_grid();
  CharacteristicAmplitude xi{g, 1.0, Convention::plain,
                             std::vector<cdouble>(g.n * g.n, 0.0)};
  const ProbabilityAmplitudePS phi = probability_amplitude(xi);
  for (const cdouble& v : phi.values) CHECK(v == cdouble(0.0));
  const CharacteristicAmplitude back = reconstruct_characteristic(phi);
  for (const cdouble& v : back.values) CHECK(v == cdouble(0.0));
}

TEST_CASE("round trip through phase space is the identity") {
  const Grid1D g = test_grid();
  for (const StateSpec& spec :
       {StateSpec{GaussianSpec{1.0, -0.5, 0.8}}, StateSpec{PlaneWaveSpec{4}}}) {
    const WaveFunction psi = build_state(spec, g);
    const CharacteristicAmplitude xi = build_characteristic(psi, Convention::plain);
    const CharacteristicAmplitude back =
        reconstruct_characteristic(probability_amplitude(xi));
    double worst = 0.0;
    for (std::size_t i = 0; i < xi.values.size(); ++i)
      worst = std::max(worst, std::abs(back.values[i] - xi.values[i]));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("density of the standard gaussian matches the closed form") {
  const PhaseSpaceDensity F = make_density(GaussianSpec{0.0, 0.0, 1.0});
  // F(x, p) = (1/pi) exp(-x^2) exp(-p^2).
  double worst = 0.0;
  for (std::size_t i = 0; i < F.n(); ++i) {
    const double x = F.grid.x(i);
    for (std::size_t k = 0; k < F.n(); ++k) {
      const double p = F.pgrid.p(k);
      worst = std::max(worst, std::abs(F.at(i, k) -
                                       std::exp(-x * x - p * p) / M_PI));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("F is non-negative with unit mass and factorizes exactly") {
  for (const StateSpec& spec :
       {StateSpec{GaussianSpec{0.0, 0.0, 1.0}},
        StateSpec{GaussianSpec{1.5, -2.0, 1.0}}, StateSpec{PlaneWaveSpec{5}},
        StateSpec{HoEigenstateSpec{3, 1.0, 1.0}}}) {
    const Grid1D g = test_grid();
    const WaveFunction psi = build_state(spec, g);
    const PhaseSpaceDensity F =
        density(probability_amplitude(build_characteristic(psi, Convention::plain)));

    for (double v : F.values) CHECK(v >= 0.0);

    std::vector<double> all(F.values);
    CHECK(oracle::riemann(all, F.grid.dx * F.pgrid.dp) ==
          doctest::Approx(1.0).epsilon(1e-10));

    const MomentumField tilde = to_momentum(psi.field);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
      for (std::size_t k = 0; k < g.n; ++k)
        worst = std::max(worst,
                         std::abs(F.at(i, k) - std::norm(psi.field.values[i]) *
                                                   std::norm(tilde.values[k])));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("marginals recover the 1-D densities") {
  const Grid1D g = test_grid();
  const WaveFunction psi = build_state(GaussianSpec{0.0, 0.0, 1.0}, g);
  const PhaseSpaceDensity F =
      density(probability_amplitude(build_characteristic(psi, Convention::plain)));
  const Marginals m = marginals(F);

  double worst = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    worst = std::max(worst,
                     std::abs(m.position[i] - std::exp(-x * x) / std::sqrt(M_PI)));
  }
  CHECK(worst < 1e-10);

  CHECK(oracle::riemann(m.position, g.dx) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(oracle::riemann(m.momentum, F.pgrid.dp) ==
        doctest::Approx(1.0).epsilon(1e-10));

  SUBCASE("plane-wave momentum marginal is a unit-mass single bin") {
    const PhaseSpaceDensity Fpw = make_density(StateSpec{PlaneWaveSpec{4}});
    const Marginals mpw = marginals(Fpw);
    std::size_t peak = 0;
    for (std::size_t k = 1; k < mpw.momentum.size(); ++k)
      if (mpw.momentum[k] > mpw.momentum[peak]) peak = k;
    CHECK(Fpw.pgrid.p(peak) ==
          doctest::Approx(two_pi * 4.0 / g.span()).epsilon(1e-12));
    CHECK(mpw.momentum[peak] * Fpw.pgrid.dp == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("ensemble averages against closed forms") {
  SUBCASE("standard gaussian is centered") {
    const PhaseSpaceDensity F = make_density(GaussianSpec{0.0, 0.0, 1.0});
    CHECK(std::abs(ensemble_average(F, Axis::x)) < 1e-10);
    CHECK(std::abs(ensemble_average(F, Axis::p)) < 1e-10);
  }
  SUBCASE("shifted drifting gaussian") {
    const PhaseSpaceDensity F = make_density(GaussianSpec{1.5, -2.0, 1.0});
    CHECK(ensemble_average(F, Axis::x) == doctest::Approx(1.5).epsilon(1e-8));
    CHECK(ensemble_average(F, Axis::p) == doctest::Approx(-2.0).epsilon(1e-8));
  }
  SUBCASE("plane wave k=5 on L=20") {
    const Grid1D g = make_grid(-10.0, 20.0 / 1024, 1024);
    const WaveFunction psi = build_state(PlaneWaveSpec{5}, g);
    const PhaseSpaceDensity F =
        density(probability_amplitude(build_characteristic(psi, Convention::plain)));
    CHECK(std::abs(ensemble_average(F, Axis::p) - oracle::frozen::pi_half) <
          1e-10);
  }
}

TEST_CASE("phase-space moments factor into singles") {
  const PhaseSpaceDensity F = make_density(GaussianSpec{1.0, 1.0, 1.0});
  CHECK(phase_space_moment(F, 0, 0) == doctest::Approx(1.0).epsilon(1e-10));
  const double x1 = phase_space_moment(F, 1, 0);
  const double p1 = phase_space_moment(F, 0, 1);
  const double x2 = phase_space_moment(F, 2, 0);
  const double p2 = phase_space_moment(F, 0, 2);
  CHECK(x2 == doctest::Approx(oracle::gauss_x2(1.0, 1.0)).epsilon(1e-8));
  CHECK(p2 == doctest::Approx(oracle::gauss_p2(1.0, 1.0)).epsilon(1e-8));
  // Statistical independence: joint moments split multiplicatively.
  CHECK(phase_space_moment(F, 1, 1) == doctest::Approx(x1 * p1).epsilon(1e-10));
  CHECK(phase_space_moment(F, 2, 2) == doctest::Approx(x2 * p2).epsilon(1e-10));
  CHECK(phase_space_moment(F, 4, 3) ==
        doctest::Approx(phase_space_moment(F, 4, 0) * phase_space_moment(F, 0, 3))
            .epsilon(1e-10));

  CHECK_THROWS_AS((void)phase_space_moment(F, 9, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)phase_space_moment(F, 0, -1), std::invalid_argument);
}

TEST_CASE("momentum-integral kernel path") {
  const Grid1D g = test_grid();
  const WaveFunction psi = build_state(GaussianSpec{0.0, 0.0, 1.0}, g);
  const CharacteristicAmplitude xi = build_characteristic(psi, Convention::plain);
  const PhaseSpaceDensity F = density(probability_amplitude(xi));

  SUBCASE("zero shift reduces to the position density") {
    const DensityKernel rho = wigner_moyal(F, 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
      worst = std::max(worst,
                       std::abs(rho.values[i] - std::norm(psi.field.values[i])));
    CHECK(worst < 1e-10);
  }
  SUBCASE("commensurate shifts match the translation path") {
    for (double delta : {g.dx, 0.5, -0.25}) {
      const DensityKernel a = wigner_moyal(F, delta);
      const DensityKernel b = translation_kernel(xi, delta);
      double worst = 0.0;
      for (std::size_t i = 0; i < g.n; ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
      CHECK(worst < 1e-10);
    }
  }
  SUBCASE("arbitrary real shifts are accepted by the integral form") {
    const DensityKernel rho = wigner_moyal(F, 0.3141);
    // |rho(x; delta)| <= rho(x; 0) pointwise (phases can only cancel).
    const DensityKernel zero = wigner_moyal(F, 0.0);
    for (std::size_t i = 0; i < g.n; ++i)
      CHECK(std::abs(rho.values[i]) <= zero.values[i].real() + 1e-12);
  }
  SUBCASE("plane-wave kernel is uniform with the single-bin phase") {
    const PhaseSpaceDensity Fpw = make_density(StateSpec{PlaneWaveSpec{4}});
    const double K = two_pi * 4.0 / g.span();
    const DensityKernel rho = wigner_moyal(Fpw, g.dx);
    const cdouble want = std::polar(1.0 / g.span(), K * g.dx);
    double worst = 0.0;
    for (const cdouble& v : rho.values)
      worst = std::max(worst, std::abs(v - want));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("conjugation convention leaves F unchanged") {
  const StateSpec spec = GaussianSpec{1.5, -2.0, 1.0};
  const PhaseSpaceDensity plain = make_density(spec, Convention::plain);
  const PhaseSpaceDensity conj = make_density(spec, Convention::conjugate);
  double worst = 0.0;
  for (std::size_t i = 0; i < plain.values.size(); ++i)
    worst = std::max(worst, std::abs(plain.values[i] - conj.values[i]));
  CHECK(worst < 1e-12);
}
