#include "psqm/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace psqm {

Grid1D make_grid(double x0, double dx, std::size_t n) {
  if (!(dx > 0.0) || !std::isfinite(dx))
    throw std::invalid_argument("make_grid: dx must be positive and finite, got " +
                                std::to_string(dx));
  if (!std::isfinite(x0))
    throw std::invalid_argument("make_grid: x0 must be finite");
  if (n < 16 || !is_power_of_two(n))
    throw std::invalid_argument(
        "make_grid: n must be a power of two >= 16, got " + std::to_string(n));
  if (!std::isfinite(dx * static_cast<double>(n)))
    throw std::invalid_argument("make_grid: span overflows");
  return Grid1D{x0, dx, n};
}

MomentumGrid momentum_grid(const Grid1D& grid, double hbar) {
  if (!(hbar > 0.0))
    throw std::invalid_argument("momentum_grid: hbar must be positive");
  // Grouped as (2*pi*hbar) / (n*dx): n*dx is exact (n is a power of two),
  // so dp*dx*n reproduces 2*pi*hbar on the grids the suite uses.
  const double dp = (two_pi * hbar) / (grid.dx * static_cast<double>(grid.n));
  return MomentumGrid{dp, grid.n, hbar};
}

ComplexField1D make_field(const Grid1D& grid) {
  return ComplexField1D{grid, std::vector<cdouble>(grid.n)};
}

double field_norm(const ComplexField1D& f) {
  std::vector<double> sq(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i)
    sq[i] = std::norm(f.values[i]);
  return pairwise_sum(sq) * f.grid.dx;
}

double field_norm(const MomentumField& g) {
  std::vector<double> sq(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i)
    sq[i] = std::norm(g.values[i]);
  return pairwise_sum(sq) * g.pgrid.dp;
}

}  // namespace psqm
