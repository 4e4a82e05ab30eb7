#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "psqm/schrodinger.hpp"
#include "psqm/errors.hpp"

using namespace psqm;

namespace {

HamiltonianSpec ho_spec(const Grid1D& g) {
  return HamiltonianSpec{1.0, 1.0,
                         sample_potential(HarmonicPotential{1.0}, g, 1.0)};
}

}  // namespace

TEST_CASE("hamiltonian stencil values") {
  const Grid1D g = make_grid(0.0, 1.0, 16);

  SUBCASE("free particle, unit spacing") {
    const TridiagonalOperator H =
        build_hamiltonian({1.0, 1.0, std::vector<double>(16, 0.0)}, g);
    for (double d : H.diag) CHECK(d == 1.0);
    for (double o : H.off) CHECK(o == -0.5);
    CHECK(H.off.size() == 15);
  }
  SUBCASE("harmonic potential adds x^2/2 on the diagonal") {
    const TridiagonalOperator H = build_hamiltonian(ho_spec(g), g);
    for (std::size_t i = 0; i < g.n; ++i)
      CHECK(H.diag[i] == 1.0 + 0.5 * g.x(i) * g.x(i));
  }
  SUBCASE("bad specs are rejected") {
    CHECK_THROWS_AS(
        (void)build_hamiltonian({0.0, 1.0, std::vector<double>(16, 0.0)}, g),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)build_hamiltonian({1.0, 1.0, std::vector<double>(8, 0.0)}, g),
        std::invalid_argument);
    std::vector<double> bad(16, 0.0);
    bad[3] = std::nan("");
    CHECK_THROWS_AS((void)build_hamiltonian({1.0, 1.0, bad}, g),
                    std::invalid_argument);
  }
}

TEST_CASE("harmonic oscillator spectrum at moderate resolution") {
  const Grid1D g = make_grid(-10.0, 20.0 / 512, 512);
  const EigenSolution sol = solve_eigen(build_hamiltonian(ho_spec(g), g), 6);
  // Second-order scheme at dx = 0.039: errors a few 1e-3 at the top level.
  for (int j = 0; j < 6; ++j)
    CHECK(sol.energies[j] == doctest::Approx(j + 0.5).epsilon(5e-3));
  for (int j = 1; j < 6; ++j) CHECK(sol.energies[j] > sol.energies[j - 1]);
}

TEST_CASE("dirichlet box spectrum") {
  const Grid1D g = make_grid(-8.0, 16.0 / 256, 256);
  const EigenSolution sol = solve_eigen(
      build_hamiltonian({1.0, 1.0, std::vector<double>(g.n, 0.0)}, g), 4);
  // The FD Dirichlet box is (n+1)*dx wide: walls sit one node outside.
  const double width = (static_cast<double>(g.n) + 1.0) * g.dx;
  for (int j = 0; j < 4; ++j) {
    const double want = oracle::box_level(j, 1.0, 1.0, width);
    CHECK(std::abs(sol.energies[j] - want) / want < 1e-3);
  }
}

TEST_CASE("ground state matches the analytic gaussian") {
  const Grid1D g = make_grid(-10.0, 20.0 / 1024, 1024);
  const EigenSolution sol = solve_eigen(build_hamiltonian(ho_spec(g), g), 1);
  const WaveFunction gauss = build_state(GaussianSpec{0.0, 0.0, 1.0}, g);
  std::vector<cdouble> terms(g.n);
  for (std::size_t i = 0; i < g.n; ++i)
    terms[i] = std::conj(sol.states[0].field.values[i]) * gauss.field.values[i];
  CHECK(std::abs(oracle::riemann(terms, g.dx)) > 1.0 - 1e-6);
}

TEST_CASE("eigensolution invariants and determinism") {
  const Grid1D g = make_grid(-10.0, 20.0 / 512, 512);
  const TridiagonalOperator H = build_hamiltonian(ho_spec(g), g);
  const EigenSolution a = solve_eigen(H, 5);

  SUBCASE("orthonormal states") {
    double worst = 0.0;
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 5; ++c) {
        std::vector<cdouble> terms(g.n);
        for (std::size_t i = 0; i < g.n; ++i)
          terms[i] = std::conj(a.states[r].field.values[i]) *
                     a.states[c].field.values[i];
        worst = std::max(worst, std::abs(oracle::riemann(terms, g.dx) -
                                         (r == c ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-8);
  }
  SUBCASE("residuals") {
    for (std::size_t j = 0; j < 5; ++j) {
      const auto& v = a.states[j].field.values;
      long double num = 0.0L, den = 0.0L;
      for (std::size_t i = 0; i < g.n; ++i) {
        cdouble hv = H.diag[i] * v[i];
        if (i > 0) hv += H.off[i - 1] * v[i - 1];
        if (i + 1 < g.n) hv += H.off[i] * v[i + 1];
        num += std::norm(hv - a.energies[j] * v[i]);
        den += std::norm(hv);
      }
      CHECK(std::sqrt(static_cast<double>(num / den)) < 1e-8);
    }
  }
  SUBCASE("bit-identical rerun") {
    const EigenSolution b = solve_eigen(H, 5);
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(a.energies[j] == b.energies[j]);
      for (std::size_t i = 0; i < g.n; ++i)
        CHECK(a.states[j].field.values[i] == b.states[j].field.values[i]);
    }
  }
  SUBCASE("sign convention: largest component positive") {
    for (std::size_t j = 0; j < 5; ++j) {
      const auto& v = a.states[j].field.values;
      std::size_t imax = 0;
      for (std::size_t i = 1; i < g.n; ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
      CHECK(v[imax].real() > 0.0);
    }
  }
  SUBCASE("k bounds") {
    CHECK_THROWS_AS((void)solve_eigen(H, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)solve_eigen(H, g.n + 1), std::invalid_argument);
  }
}

TEST_CASE("square well binds states below zero") {
  const Grid1D g = make_grid(-8.0, 16.0 / 256, 256);
  const HamiltonianSpec spec{
      1.0, 1.0, sample_potential(SquareWellPotential{5.0, 2.0, 0.0}, g, 1.0)};
  const EigenSolution sol = solve_eigen(build_hamiltonian(spec, g), 3);
  CHECK(sol.energies[0] < 0.0);
  CHECK(sol.energies[0] > -5.0);
}

TEST_CASE("energy expectation") {
  SUBCASE("ho ground state gives 1/2") {
    const Grid1D g = make_grid(-10.0, 20.0 / 1024, 1024);
    const WaveFunction psi = build_state(GaussianSpec{0.0, 0.0, 1.0}, g);
    CHECK(energy_expectation(psi, ho_spec(g)) ==
          doctest::Approx(0.5).epsilon(1e-8));
  }
  SUBCASE("plane wave k=5, L=20, V=0") {
    const Grid1D g = make_grid(-10.0, 20.0 / 1024, 1024);
    const WaveFunction psi = build_state(PlaneWaveSpec{5}, g);
    const HamiltonianSpec free{1.0, 1.0, std::vector<double>(g.n, 0.0)};
    CHECK(std::abs(energy_expectation(psi, free) - oracle::frozen::pw_energy) <
          1e-8);
  }
  SUBCASE("fd eigenstates reproduce their eigenvalues") {
    const Grid1D g = make_grid(-10.0, 20.0 / 1024, 1024);
    const HamiltonianSpec spec = ho_spec(g);
    const EigenSolution sol = solve_eigen(build_hamiltonian(spec, g), 3);
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(std::abs(energy_expectation(sol.states[j], spec) -
                     sol.energies[j]) < 5e-4);
  }
}

TEST_CASE("two-integral energy split is internally consistent") {
  const Grid1D g = make_grid(-10.0, 20.0 / 1024, 1024);
  const HamiltonianSpec spec = ho_spec(g);

  SUBCASE("ho ground state: both paths at 1/2") {
    const WaveFunction psi = build_state(GaussianSpec{0.0, 0.0, 1.0}, g);
    const DerivationReport rep = derivation_consistency(psi, spec);
    CHECK(rep.total_split == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(rep.total_direct == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(rep.relative_gap < 1e-8);
  }
  SUBCASE("second excited analytic state: both paths at 5/2") {
    const WaveFunction psi = build_state(HoEigenstateSpec{2, 1.0, 1.0}, g);
    const DerivationReport rep = derivation_consistency(psi, spec);
    CHECK(rep.total_split == doctest::Approx(2.5).epsilon(5e-4));
    CHECK(rep.relative_gap < 1e-8);
  }
  SUBCASE("free gaussian: kinetic only") {
    const HamiltonianSpec free{1.0, 1.0, std::vector<double>(g.n, 0.0)};
    const WaveFunction psi = build_state(GaussianSpec{0.0, 0.0, 1.0}, g);
    const DerivationReport rep = derivation_consistency(psi, free);
    CHECK(rep.potential == 0.0);
    CHECK(rep.total_split == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(rep.relative_gap < 1e-8);
  }
}

TEST_CASE("eigenvalue error shrinks at second order under refinement") {
  double err[3];
  for (int r = 0; r < 3; ++r) {
    const std::size_t n = 256u << r;
    const Grid1D g = make_grid(-10.0, 20.0 / static_cast<double>(n), n);
    const EigenSolution sol = solve_eigen(build_hamiltonian(ho_spec(g), g), 1);
    err[r] = std::abs(sol.energies[0] - 0.5);
  }
  CHECK(err[0] / err[1] > 3.5);
  CHECK(err[0] / err[1] < 4.5);
  CHECK(err[1] / err[2] > 3.5);
  CHECK(err[1] / err[2] < 4.5);
}

TEST_CASE("potential samplers") {
  const Grid1D g = make_grid(-2.0, 0.25, 16);
  const auto zero = sample_potential(ZeroPotential{}, g, 1.0);
  for (double v : zero) CHECK(v == 0.0);

  const auto quart = sample_potential(QuarticPotential{2.0}, g, 1.0);
  for (std::size_t i = 0; i < g.n; ++i)
    CHECK(quart[i] == doctest::Approx(2.0 * std::pow(g.x(i), 4)).epsilon(1e-14));

  const auto well = sample_potential(SquareWellPotential{3.0, 1.0, 0.0}, g, 1.0);
  for (std::size_t i = 0; i < g.n; ++i) {
    if (std::abs(g.x(i)) <= 0.5)
      CHECK(well[i] == -3.0);
    else
      CHECK(well[i] == 0.0);
  }
}
