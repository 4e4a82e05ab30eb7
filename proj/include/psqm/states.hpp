#pragma once

#include <variant>

#include "psqm/grid.hpp"

namespace psqm {

/// Normalized complex amplitudes on a grid: sum |psi|^2 dx == 1.
struct WaveFunction {
  ComplexField1D field;
  double hbar = 1.0;

  const Grid1D& grid() const { return field.grid; }
};

/// exp(i*K*x)/sqrt(L) with K = 2*pi*k_index/L; commensurate by construction.
struct PlaneWaveSpec {
  long k_index = 0;
};

/// (pi*sigma^2)^(-1/4) exp(-(x-center)^2/(2 sigma^2)) exp(i momentum (x-center)/hbar)
struct GaussianSpec {
  double center = 0.0;
  double momentum = 0.0;
  double sigma = 1.0;
};

/// Harmonic-oscillator eigenstate |level> for mass m and frequency omega,
/// built by the orthonormal Hermite-function recurrence.
struct HoEigenstateSpec {
  int level = 0;
  double mass = 1.0;
  double omega = 1.0;
};

using StateSpec = std::variant<PlaneWaveSpec, GaussianSpec, HoEigenstateSpec>;

/// Builds and grid-normalizes a reference state. For localized states the
/// probability mass lying outside the grid span must be below
/// tail_mass_limit, otherwise the constructor throws with the span it
/// would need.
WaveFunction build_state(const StateSpec& spec, const Grid1D& grid,
                         double hbar = 1.0);

WaveFunction normalize(const ComplexField1D& raw, double hbar = 1.0);

inline constexpr double tail_mass_limit = 1e-12;

}  // namespace psqm
