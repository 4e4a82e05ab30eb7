#include "psqm/transform.hpp"

#include <cmath>
#include <stdexcept>

#include "psqm/fft.hpp"

namespace psqm {

namespace detail {

std::vector<cdouble> momentum_transform(const std::vector<cdouble>& values,
                                        const Grid1D& grid, double hbar) {
  const std::size_t n = grid.n;
  const std::size_t half = n / 2;
  std::vector<cdouble> work = values;
  fft_radix2(work, /*inverse=*/false);

  const MomentumGrid pg = momentum_grid(grid, hbar);
  const double scale = grid.dx / std::sqrt(two_pi * hbar);
  std::vector<cdouble> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    // ascending-p index i holds signed bin k = i - n/2, stored at
    // FFT bin (i + n/2) mod n
    const cdouble phase = std::polar(scale, -pg.p(i) * grid.x0 / hbar);
    out[i] = phase * work[(i + half) & (n - 1)];
  }
  return out;
}

std::vector<cdouble> position_transform(const std::vector<cdouble>& values,
                                        const Grid1D& grid, double hbar) {
  const std::size_t n = grid.n;
  const std::size_t half = n / 2;
  const MomentumGrid pg = momentum_grid(grid, hbar);

  std::vector<cdouble> work(n);
  for (std::size_t i = 0; i < n; ++i)
    work[(i + half) & (n - 1)] =
        values[i] * std::polar(1.0, pg.p(i) * grid.x0 / hbar);
  fft_radix2(work, /*inverse=*/true);

  const double scale = pg.dp / std::sqrt(two_pi * hbar);
  for (auto& v : work) v *= scale;
  return work;
}

void apply_momentum_power(std::vector<cdouble>& values, int m,
                          const Grid1D& grid, double hbar) {
  if (m == 0) return;
  const std::size_t n = grid.n;
  const MomentumGrid pg = momentum_grid(grid, hbar);
  fft_radix2(values, /*inverse=*/false);
  for (std::size_t b = 0; b < n; ++b) {
    // FFT bin b carries signed k = b for b < n/2, else b - n
    const double k = b < n / 2 ? static_cast<double>(b)
                               : static_cast<double>(b) - static_cast<double>(n);
    const double p = k * pg.dp;
    double mult = 1.0;
    for (int q = 0; q < m; ++q) mult *= p;
    values[b] *= mult;
  }
  fft_radix2(values, /*inverse=*/true);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& v : values) v *= inv_n;
}

}  // namespace detail

MomentumField to_momentum(const ComplexField1D& f, double hbar) {
  if (f.values.size() != f.grid.n)
    throw std::invalid_argument("to_momentum: field/grid size mismatch");
  return MomentumField{momentum_grid(f.grid, hbar), f.grid,
                       detail::momentum_transform(f.values, f.grid, hbar)};
}

ComplexField1D from_momentum(const MomentumField& g) {
  if (g.values.size() != g.pgrid.n)
    throw std::invalid_argument("from_momentum: field/grid size mismatch");
  return ComplexField1D{
      g.xgrid, detail::position_transform(g.values, g.xgrid, g.pgrid.hbar)};
}

ComplexField1D spectral_derivative(const ComplexField1D& f, int order,
                                   double hbar) {
  if (order < 1) throw std::invalid_argument("spectral_derivative: order >= 1");
  if (f.values.size() != f.grid.n)
    throw std::invalid_argument("spectral_derivative: field/grid size mismatch");
  const std::size_t n = f.grid.n;
  const MomentumGrid pg = momentum_grid(f.grid, hbar);

  std::vector<cdouble> work = f.values;
  detail::fft_radix2(work, /*inverse=*/false);
  for (std::size_t b = 0; b < n; ++b) {
    const double k = b < n / 2 ? static_cast<double>(b)
                               : static_cast<double>(b) - static_cast<double>(n);
    const cdouble ip(0.0, k * pg.dp / hbar);
    cdouble mult(1.0, 0.0);
    for (int q = 0; q < order; ++q) mult *= ip;
    work[b] *= mult;
  }
  detail::fft_radix2(work, /*inverse=*/true);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& v : work) v *= inv_n;
  return ComplexField1D{f.grid, std::move(work)};
}

}  // namespace psqm
