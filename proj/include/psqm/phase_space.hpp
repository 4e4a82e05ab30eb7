#pragma once

#include "psqm/internal_space.hpp"

namespace psqm {

/// Probability amplitude phi(x, p): row i is the momentum transform of
/// xi(x_i, .) over the internal coordinate. values[i*n + k], p ascending.
struct ProbabilityAmplitudePS {
  Grid1D grid;
  MomentumGrid pgrid;
  double hbar = 1.0;
  Convention source_convention = Convention::plain;
  std::vector<cdouble> values;

  std::size_t n() const { return grid.n; }
};

/// Non-negative phase-space density F = |phi|^2 with unit total mass.
struct PhaseSpaceDensity {
  Grid1D grid;
  MomentumGrid pgrid;
  double hbar = 1.0;
  std::vector<double> values;

  std::size_t n() const { return grid.n; }
  double at(std::size_t i, std::size_t k) const { return values[i * grid.n + k]; }
};

ProbabilityAmplitudePS probability_amplitude(const CharacteristicAmplitude& xi);

/// Inverse of probability_amplitude; round-trips to 1e-12 max-abs.
CharacteristicAmplitude reconstruct_characteristic(
    const ProbabilityAmplitudePS& phi);

PhaseSpaceDensity density(const ProbabilityAmplitudePS& phi);

struct Marginals {
  std::vector<double> position;  // integral of F over p, sampled on grid
  std::vector<double> momentum;  // integral of F over x, sampled on pgrid
};

Marginals marginals(const PhaseSpaceDensity& F);

enum class Axis { x, p };

/// <x> or <p> as a plain Riemann double sum over F with weights dx dp.
double ensemble_average(const PhaseSpaceDensity& F, Axis which);

/// General mixed moment through the density: sum x^n p^m F dx dp.
double phase_space_moment(const PhaseSpaceDensity& F, int n, int m);

/// Momentum-integral form of the infinitesimal transformation:
///   rho_i = sum_k F(x_i, p_k) exp(i p_k delta / hbar) dp
/// Any real delta is accepted; on grid-commensurate delta this equals the
/// internal-space translation_kernel to roundoff.
DensityKernel wigner_moyal(const PhaseSpaceDensity& F, double delta);

}  // namespace psqm
