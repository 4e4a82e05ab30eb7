#include "psqm/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace psqm {

namespace {

constexpr double pi = 3.14159265358979323846;

std::vector<cdouble> sample_plane_wave(const PlaneWaveSpec& s,
                                       const Grid1D& grid) {
  const double L = grid.span();
  const double K = two_pi * static_cast<double>(s.k_index) / L;
  const double amp = 1.0 / std::sqrt(L);
  std::vector<cdouble> v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i)
    v[i] = std::polar(amp, K * grid.x(i));
  return v;
}

std::vector<cdouble> sample_gaussian(const GaussianSpec& s, const Grid1D& grid,
                                     double hbar) {
  if (!(s.sigma > 0.0))
    throw std::invalid_argument("gaussian state: sigma must be positive");
  const double norm = std::pow(pi * s.sigma * s.sigma, -0.25);
  std::vector<cdouble> v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double u = (grid.x(i) - s.center) / s.sigma;
    v[i] = std::polar(norm * std::exp(-0.5 * u * u),
                      s.momentum * (grid.x(i) - s.center) / hbar);
  }
  return v;
}

// Orthonormal Hermite functions h_k(y): the recurrence coefficients keep
// unit L2 norm at every step, so nothing overflows for k up to ~50.
std::vector<cdouble> sample_ho(const HoEigenstateSpec& s, const Grid1D& grid,
                               double hbar) {
  if (s.level < 0)
    throw std::invalid_argument("ho_eigenstate: level must be >= 0");
  if (!(s.mass > 0.0) || !(s.omega > 0.0))
    throw std::invalid_argument("ho_eigenstate: mass and omega must be positive");
  const double alpha = std::sqrt(s.mass * s.omega / hbar);  // y = alpha x
  const double amp = std::sqrt(alpha);
  std::vector<cdouble> v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double y = alpha * grid.x(i);
    double hk = std::pow(pi, -0.25) * std::exp(-0.5 * y * y);
    double hkm1 = 0.0;
    for (int k = 1; k <= s.level; ++k) {
      const double next = std::sqrt(2.0 / k) * y * hk -
                          std::sqrt((k - 1.0) / k) * hkm1;
      hkm1 = hk;
      hk = next;
    }
    v[i] = amp * hk;
  }
  return v;
}

void check_tail_mass(const ComplexField1D& raw, const StateSpec& spec,
                     double hbar) {
  const double mass_on_grid = field_norm(raw);
  const double tail = std::abs(1.0 - mass_on_grid);
  if (tail <= tail_mass_limit) return;

  std::string need;
  if (const auto* g = std::get_if<GaussianSpec>(&spec)) {
    need = "span covering [" + std::to_string(g->center - 5.2 * g->sigma) +
           ", " + std::to_string(g->center + 5.2 * g->sigma) + "]";
  } else if (const auto* h = std::get_if<HoEigenstateSpec>(&spec)) {
    const double l = std::sqrt(hbar / (h->mass * h->omega));
    const double half = (std::sqrt(2.0 * h->level + 1.0) + 5.2) * l;
    need = "half-width >= " + std::to_string(half) + " about the origin";
  }
  throw std::invalid_argument(
      "build_state: probability mass on the grid differs from 1 by " +
      std::to_string(tail) + " (limit 1e-12); the state needs " + need +
      " or a finer dx");
}

}  // namespace

WaveFunction build_state(const StateSpec& spec, const Grid1D& grid,
                         double hbar) {
  if (!(hbar > 0.0))
    throw std::invalid_argument("build_state: hbar must be positive");
  ComplexField1D raw{grid, {}};
  if (const auto* pw = std::get_if<PlaneWaveSpec>(&spec)) {
    raw.values = sample_plane_wave(*pw, grid);
    // periodic by construction, no tail to check
  } else if (const auto* g = std::get_if<GaussianSpec>(&spec)) {
    raw.values = sample_gaussian(*g, grid, hbar);
    check_tail_mass(raw, spec, hbar);
  } else {
    raw.values = sample_ho(std::get<HoEigenstateSpec>(spec), grid, hbar);
    check_tail_mass(raw, spec, hbar);
  }
  return normalize(raw, hbar);
}

WaveFunction normalize(const ComplexField1D& raw, double hbar) {
  if (raw.values.size() != raw.grid.n)
    throw std::invalid_argument("normalize: field/grid size mismatch");
  const double norm2 = field_norm(raw);
  if (!(norm2 > 0.0) || !std::isfinite(norm2))
    throw std::invalid_argument("normalize: field has zero (or non-finite) norm");
  const double scale = 1.0 / std::sqrt(norm2);
  WaveFunction psi{raw, hbar};
  for (auto& v : psi.field.values) v *= scale;
  return psi;
}

}  // namespace psqm
