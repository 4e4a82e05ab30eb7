#include "psqm/internal_space.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace psqm {

namespace {

constexpr double pi = 3.14159265358979323846;

cdouble continuum_value(const ContinuumState& state, cdouble w, double hbar) {
  if (const auto* pw = std::get_if<PlaneWaveK>(&state)) {
    return std::exp(cdouble{0.0, 1.0} * pw->k * w);
  }
  const auto& g = std::get<GaussianSpec>(state);
  const cdouble u = (w - g.center) / g.sigma;
  const double amp = std::pow(pi * g.sigma * g.sigma, -0.25);
  return amp * std::exp(-0.5 * u * u +
                        cdouble{0.0, 1.0} * (g.momentum / hbar) * (w - g.center));
}

// 4th-order central first derivative; valid for 2 <= i <= n-3.
cdouble stencil4(const std::vector<cdouble>& f, std::size_t i, double h) {
  return (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
}

}  // namespace

CharacteristicAmplitude build_characteristic(const WaveFunction& psi,
                                             Convention convention) {
  const Grid1D& grid = psi.field.grid;
  const std::size_t n = grid.n;
  CharacteristicAmplitude xi{grid, psi.hbar, convention, {}};
  xi.values.resize(n * n);
  const auto& v = psi.field.values;
  for (std::size_t i = 0; i < n; ++i) {
    const cdouble row = convention == Convention::plain ? v[i] : std::conj(v[i]);
    cdouble* out = xi.values.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) out[j] = row * v[j];
  }
  return xi;
}

double symmetry_residual(const CharacteristicAmplitude& xi) {
  const std::size_t n = xi.n();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      worst = std::max(worst, std::abs(xi.at(i, j) - xi.at(j, i)));
  return worst;
}

DensityKernel translation_kernel(const CharacteristicAmplitude& xi,
                                 double delta) {
  const std::size_t n = xi.n();
  const double dx = xi.grid.dx;
  const double steps = delta / dx;
  const long long s = std::llround(steps);
  if (std::abs(steps - static_cast<double>(s)) > 1e-9)
    throw std::invalid_argument(
        "translation_kernel: delta = " + std::to_string(delta) +
        " is not an integer multiple of dx = " + std::to_string(dx));
  const std::size_t shift =
      static_cast<std::size_t>(((s % static_cast<long long>(n)) + n) % n);

  DensityKernel out{xi.grid, delta, std::vector<cdouble>(n)};
  std::vector<cdouble> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cdouble* row = xi.values.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t js = j + shift;
      if (js >= n) js -= n;
      terms[j] = std::conj(row[j]) * row[js];
    }
    out.values[i] = pairwise_sum(std::span<const cdouble>(terms)) * dx;
  }
  return out;
}

ContinuumState continuum_form(const StateSpec& spec, const Grid1D& grid) {
  if (const auto* pw = std::get_if<PlaneWaveSpec>(&spec))
    return PlaneWaveK{two_pi * static_cast<double>(pw->k_index) / grid.span()};
  if (const auto* g = std::get_if<GaussianSpec>(&spec)) return *g;
  throw std::invalid_argument(
      "continuum_form: only plane_wave and gaussian states have the "
      "closed-form continuation psi(i x')");
}

double analyticity_residual(const ContinuumState& state, const Patch2D& patch,
                            double hbar) {
  if (patch.samples < 8)
    throw std::invalid_argument("analyticity_residual: patch needs >= 8 samples");
  if (!(patch.hi > patch.lo))
    throw std::invalid_argument("analyticity_residual: empty patch");
  const std::size_t s = patch.samples;
  const double h = (patch.hi - patch.lo) / static_cast<double>(s - 1);

  // zeta(x, x') = psi(x) psi(i x') is a separable product, so the two
  // partial derivatives reduce to 1-D stencils on the factors.
  std::vector<cdouble> u(s), v(s);
  for (std::size_t a = 0; a < s; ++a) {
    const double t = patch.lo + h * static_cast<double>(a);
    u[a] = continuum_value(state, cdouble{t, 0.0}, hbar);
    v[a] = continuum_value(state, cdouble{0.0, t}, hbar);
  }

  double worst = 0.0;
  for (std::size_t a = 2; a + 2 < s; ++a) {
    const cdouble du = stencil4(u, a, h);
    for (std::size_t b = 2; b + 2 < s; ++b) {
      const cdouble dv = stencil4(v, b, h);
      // 2 d(zeta)/d(conj z) = (d/dx + i d/dx') zeta
      const cdouble cr = du * v[b] + cdouble{0.0, 1.0} * u[a] * dv;
      worst = std::max(worst, std::abs(cr));
    }
  }
  return worst;
}

}  // namespace psqm
