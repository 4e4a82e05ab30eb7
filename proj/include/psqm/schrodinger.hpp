#pragma once

#include "psqm/states.hpp"

namespace psqm {

struct HamiltonianSpec {
  double mass = 1.0;
  double hbar = 1.0;
  std::vector<double> potential;  // V(x_i), one sample per grid node
};

/// Real symmetric tridiagonal operator tied to the grid it was built on.
struct TridiagonalOperator {
  Grid1D grid;
  double hbar = 1.0;
  std::vector<double> diag;
  std::vector<double> off;  // off.size() == diag.size() - 1
};

/// Kinetic part by second-order central differences with Dirichlet walls:
/// diagonal hbar^2/(m dx^2) + V(x_i), off-diagonal -hbar^2/(2 m dx^2).
TridiagonalOperator build_hamiltonian(const HamiltonianSpec& spec,
                                      const Grid1D& grid);

struct EigenSolution {
  std::vector<double> energies;      // ascending
  std::vector<WaveFunction> states;  // orthonormal, one per energy
};

/// k lowest eigenpairs by Sturm-sequence bisection plus inverse iteration.
/// Fully deterministic: fixed integer-seeded start vectors, fixed sign
/// convention. Throws on non-convergence with iteration diagnostics.
EigenSolution solve_eigen(const TridiagonalOperator& H, std::size_t k);

/// <E> = <p^2>/2m (spectral) + sum V |psi|^2 dx. The imaginary residue of
/// the kinetic expectation is checked to stay below 1e-10.
double energy_expectation(const WaveFunction& psi, const HamiltonianSpec& spec);

/// The two-integral energy split: kinetic through the internal-space moment
/// machinery, potential through the position integral. total_split must
/// reproduce energy_expectation.
struct DerivationReport {
  double kinetic_internal = 0.0;
  double potential = 0.0;
  double total_split = 0.0;
  double total_direct = 0.0;
  double relative_gap = 0.0;
};

DerivationReport derivation_consistency(const WaveFunction& psi,
                                        const HamiltonianSpec& spec);

/// Built-in potential shapes, sampled onto a grid.
struct ZeroPotential {};
struct HarmonicPotential {
  double omega = 1.0;
};
struct QuarticPotential {
  double lambda = 1.0;
};
struct SquareWellPotential {
  double depth = 1.0;  // V = -depth inside the well, 0 outside
  double width = 1.0;
  double center = 0.0;
};
using PotentialSpec = std::variant<ZeroPotential, HarmonicPotential,
                                   QuarticPotential, SquareWellPotential>;

std::vector<double> sample_potential(const PotentialSpec& spec,
                                     const Grid1D& grid, double mass);

}  // namespace psqm
