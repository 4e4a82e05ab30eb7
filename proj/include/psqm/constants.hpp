#pragma once

#include <utility>
#include <vector>

namespace psqm {

/// SI constants; defaults are the 2018 CODATA/SI-definition values.
/// This is the one dimensionful corner of the library.
struct PhysicalConstants {
  double h = 6.62607015e-34;      // J s (exact by SI definition)
  double c = 299792458.0;         // m/s (exact)
  double m_e = 9.1093837015e-31;  // kg
};

/// Oscillation amplitude A and equilibrium spacing d of the string relation
///   h/c = 2 pi^2 m_e A^2 / d.
struct StringParams {
  double amplitude = 0.0;  // A, meters
  double spacing = 1.0;    // d, meters
};

/// Inverts the relation for A: sqrt(h d / (2 pi^2 m_e c)). Accepts h == 0
/// (the classical limit, returning A == 0); d must be positive.
double amplitude_from_spacing(double d, const PhysicalConstants& consts = {});

/// |h/c - 2 pi^2 m_e A^2/d| / (h/c).
double ratio_residual(const StringParams& params,
                      const PhysicalConstants& consts = {});

/// Evaluates A(h) over a strictly descending list of h values with d fixed.
/// A scales as sqrt(h), so the returned amplitudes are strictly decreasing.
std::vector<std::pair<double, double>> planck_limit_scan(
    const std::vector<double>& h_values, double d,
    const PhysicalConstants& consts = {});

}  // namespace psqm
