#pragma once

#include "psqm/internal_space.hpp"

namespace psqm {

enum class MomentPath { internal, separable, phase_space };
enum class OperatorOrder { xp, px };

/// Moments come out of real-valued physics; the imaginary part that the
/// complex arithmetic leaves behind is reported, never dropped.
struct MomentResult {
  cdouble value;
  MomentPath path = MomentPath::internal;
  double imaginary_residual = 0.0;
  /// |<x^n p^m> - <p^m x^n>|; filled by moment_xp, zero elsewhere.
  double ordering_difference = 0.0;
};

inline constexpr int max_moment_power = 8;

/// <x^n> = sum conj(xi) x^n xi dx' dx over the internal space.
MomentResult moment_x(const CharacteristicAmplitude& xi, int n);

/// <p^m> with the momentum operator (-i hbar d/dx')^m acting along the
/// internal coordinate, realized spectrally.
MomentResult moment_p(const CharacteristicAmplitude& xi, int m);

/// Mixed moment; x^n multiplies along the x axis while the derivative acts
/// along x'. Both operator orders are evaluated and their difference is
/// reported in the result.
MomentResult moment_xp(const CharacteristicAmplitude& xi, int n, int m,
                       OperatorOrder order = OperatorOrder::xp);

/// Separable reduction: a product of two 1-D integrals over psi.
MomentResult separable_moment(const WaveFunction& psi, int n, int m);

}  // namespace psqm
