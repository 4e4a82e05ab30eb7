#include "psqm/phase_space.hpp"

#include <cmath>
#include <stdexcept>

#include "psqm/transform.hpp"

namespace psqm {

namespace {

double ipow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_square(std::size_t values, std::size_t n, const char* who) {
  if (values != n * n)
    throw std::invalid_argument(std::string(who) + ": field/grid size mismatch");
}

}  // namespace

ProbabilityAmplitudePS probability_amplitude(const CharacteristicAmplitude& xi) {
  const std::size_t n = xi.n();
  check_square(xi.values.size(), n, "probability_amplitude");
  ProbabilityAmplitudePS phi{xi.grid, momentum_grid(xi.grid, xi.hbar), xi.hbar,
                             xi.convention, {}};
  phi.values.resize(n * n);
  std::vector<cdouble> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    row.assign(xi.values.begin() + i * n, xi.values.begin() + (i + 1) * n);
    const auto out = detail::momentum_transform(row, xi.grid, xi.hbar);
    std::copy(out.begin(), out.end(), phi.values.begin() + i * n);
  }
  return phi;
}

CharacteristicAmplitude reconstruct_characteristic(
    const ProbabilityAmplitudePS& phi) {
  const std::size_t n = phi.n();
  check_square(phi.values.size(), n, "reconstruct_characteristic");
  CharacteristicAmplitude xi{phi.grid, phi.hbar, phi.source_convention, {}};
  xi.values.resize(n * n);
  std::vector<cdouble> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    row.assign(phi.values.begin() + i * n, phi.values.begin() + (i + 1) * n);
    const auto out = detail::position_transform(row, phi.grid, phi.hbar);
    std::copy(out.begin(), out.end(), xi.values.begin() + i * n);
  }
  return xi;
}

PhaseSpaceDensity density(const ProbabilityAmplitudePS& phi) {
  const std::size_t n = phi.n();
  check_square(phi.values.size(), n, "density");
  PhaseSpaceDensity F{phi.grid, phi.pgrid, phi.hbar, {}};
  F.values.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) F.values[i] = std::norm(phi.values[i]);
  return F;
}

Marginals marginals(const PhaseSpaceDensity& F) {
  const std::size_t n = F.n();
  check_square(F.values.size(), n, "marginals");
  Marginals m;
  m.position.resize(n);
  m.momentum.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::span<const double> row(F.values.data() + i * n, n);
    m.position[i] = pairwise_sum(row) * F.pgrid.dp;
  }
  std::vector<double> col(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) col[i] = F.values[i * n + k];
    m.momentum[k] = pairwise_sum(std::span<const double>(col)) * F.grid.dx;
  }
  return m;
}

double ensemble_average(const PhaseSpaceDensity& F, Axis which) {
  return phase_space_moment(F, which == Axis::x ? 1 : 0,
                            which == Axis::p ? 1 : 0);
}

double phase_space_moment(const PhaseSpaceDensity& F, int n, int m) {
  if (n < 0 || m < 0 || n > 8 || m > 8)
    throw std::invalid_argument("phase_space_moment: powers must be in [0, 8]");
  const std::size_t size = F.n();
  check_square(F.values.size(), size, "phase_space_moment");
  std::vector<double> terms(size), rows(size);
  for (std::size_t i = 0; i < size; ++i) {
    const double* row = F.values.data() + i * size;
    for (std::size_t k = 0; k < size; ++k)
      terms[k] = ipow(F.pgrid.p(k), m) * row[k];
    rows[i] = ipow(F.grid.x(i), n) * pairwise_sum(std::span<const double>(terms));
  }
  return pairwise_sum(std::span<const double>(rows)) * F.grid.dx * F.pgrid.dp;
}

DensityKernel wigner_moyal(const PhaseSpaceDensity& F, double delta) {
  const std::size_t n = F.n();
  check_square(F.values.size(), n, "wigner_moyal");
  DensityKernel out{F.grid, delta, std::vector<cdouble>(n)};
  std::vector<cdouble> phases(n), terms(n);
  for (std::size_t k = 0; k < n; ++k)
    phases[k] = std::polar(1.0, F.pgrid.p(k) * delta / F.hbar);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = F.values.data() + i * n;
    for (std::size_t k = 0; k < n; ++k) terms[k] = row[k] * phases[k];
    out.values[i] = pairwise_sum(std::span<const cdouble>(terms)) * F.pgrid.dp;
  }
  return out;
}

}  // namespace psqm
