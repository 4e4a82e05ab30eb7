#pragma once

#include "psqm/states.hpp"

namespace psqm {

enum class Convention { plain, conjugate };

/// Characteristic amplitude xi(x, x') on the internal space, stored densely
/// row-major: values[i*n + j] = xi(x_i, x'_j), both axes on the same grid.
/// plain:     xi = psi(x) psi(x')   (symmetric under x <-> x')
/// conjugate: xi = conj(psi(x)) psi(x')
struct CharacteristicAmplitude {
  Grid1D grid;
  double hbar = 1.0;
  Convention convention = Convention::plain;
  std::vector<cdouble> values;

  std::size_t n() const { return grid.n; }
  cdouble at(std::size_t i, std::size_t j) const { return values[i * grid.n + j]; }
};

CharacteristicAmplitude build_characteristic(const WaveFunction& psi,
                                             Convention convention);

/// max |xi(x,x') - xi(x',x)|; zero (to roundoff) for the plain convention.
double symmetry_residual(const CharacteristicAmplitude& xi);

/// Two-point kernel rho(x + delta/2, x - delta/2) sampled over x.
struct DensityKernel {
  Grid1D grid;
  double delta = 0.0;
  std::vector<cdouble> values;
};

/// Infinitesimal-translation form of the kernel:
///   rho_i = sum_j conj(xi(x_i, x'_j)) xi(x_i, x'_j + delta) dx'
/// The shift is realized by a periodic index roll, so delta must be an
/// integer multiple of dx.
DensityKernel translation_kernel(const CharacteristicAmplitude& xi,
                                 double delta);

/// Closed-form continuum states for the analytic-continuation check.
struct PlaneWaveK {
  double k = 0.0;
};
using ContinuumState = std::variant<PlaneWaveK, GaussianSpec>;

/// Maps a StateSpec to its continuum closed form (plane_wave needs the grid
/// span to fix K). Throws for state kinds with no closed continuation.
ContinuumState continuum_form(const StateSpec& spec, const Grid1D& grid);

/// Square 2-D sample patch [lo, hi]^2 with `samples` points per axis.
struct Patch2D {
  double lo = -1.0;
  double hi = 1.0;
  std::size_t samples = 128;
};

/// Builds zeta(x, x') = psi(x) psi(i x') on the patch and returns the
/// max-abs residual of the discrete Cauchy-Riemann operator
/// (d/dx + i d/dx') zeta for z = x + i x', using 4th-order central
/// stencils on interior points. Zero (to roundoff) iff zeta is analytic.
double analyticity_residual(const ContinuumState& state, const Patch2D& patch,
                            double hbar = 1.0);

}  // namespace psqm
