#pragma once

#include <cstddef>
#include <vector>

#include "psqm/numeric.hpp"

namespace psqm {

/// Uniform 1-D sample lattice x_i = x0 + i*dx, i in [0, n).
/// n must be a power of two >= 16 so the transforms stay radix-2.
struct Grid1D {
  double x0 = 0.0;
  double dx = 1.0;
  std::size_t n = 0;

  double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
  double span() const { return dx * static_cast<double>(n); }
};

Grid1D make_grid(double x0, double dx, std::size_t n);

/// Momentum lattice conjugate to a Grid1D: p_k = k*dp for signed
/// k in [-n/2, n/2), dp = 2*pi*hbar/(n*dx). Values are stored in
/// ascending p order, so index i carries k = i - n/2.
struct MomentumGrid {
  double dp = 0.0;
  std::size_t n = 0;
  double hbar = 1.0;

  double p(std::size_t i) const {
    return dp * (static_cast<double>(i) - static_cast<double>(n / 2));
  }
  double p0() const { return -dp * static_cast<double>(n / 2); }
};

MomentumGrid momentum_grid(const Grid1D& grid, double hbar = 1.0);

struct ComplexField1D {
  Grid1D grid;
  std::vector<cdouble> values;
};

/// A field over momentum bins. Keeps the originating position grid so the
/// inverse transform can reconstruct phases exactly.
struct MomentumField {
  MomentumGrid pgrid;
  Grid1D xgrid;
  std::vector<cdouble> values;
};

ComplexField1D make_field(const Grid1D& grid);
double field_norm(const ComplexField1D& f);  // sum |f|^2 dx
double field_norm(const MomentumField& g);   // sum |g|^2 dp

}  // namespace psqm
