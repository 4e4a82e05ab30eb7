#pragma once

#include "psqm/grid.hpp"

namespace psqm {

/// Unitary discrete realization of
///   g(p) = (1/sqrt(2*pi*hbar)) * integral f(x) exp(-i*p*x/hbar) dx
/// on the grid's momentum lattice, with the x0 offset folded into a phase
/// so that the kernel really is exp(-i*p*x/hbar) at the sample points.
/// Discrete Parseval holds: sum |g|^2 dp == sum |f|^2 dx.
MomentumField to_momentum(const ComplexField1D& f, double hbar = 1.0);

/// Exact inverse of to_momentum (kernel exp(+i*p*x/hbar), weight dp).
ComplexField1D from_momentum(const MomentumField& g);

/// d^order/dx^order computed spectrally: transform, multiply each bin by
/// (i*p/hbar)^order, transform back. Exact to roundoff for fields that are
/// grid-commensurate trigonometric polynomials.
ComplexField1D spectral_derivative(const ComplexField1D& f, int order,
                                   double hbar = 1.0);

namespace detail {

/// Core of to_momentum on a raw sample vector (ascending-p output).
std::vector<cdouble> momentum_transform(const std::vector<cdouble>& values,
                                        const Grid1D& grid, double hbar);

/// Core of from_momentum on a raw ascending-p vector.
std::vector<cdouble> position_transform(const std::vector<cdouble>& values,
                                        const Grid1D& grid, double hbar);

/// Applies the momentum-operator power: multiply bin k by p_k^m in the
/// momentum representation. This is (-i*hbar d/dx)^m.
void apply_momentum_power(std::vector<cdouble>& values, int m,
                          const Grid1D& grid, double hbar);

}  // namespace detail

}  // namespace psqm
