#pragma once

#include <vector>

#include "psqm/numeric.hpp"

namespace psqm::detail {

/// In-place radix-2 DIT transform, unnormalized:
///   forward:  X_k = sum_j a_j exp(-2*pi*i*j*k/n)
///   inverse:  x_j = sum_k a_k exp(+2*pi*i*j*k/n)
/// a.size() must be a power of two.
void fft_radix2(std::vector<cdouble>& a, bool inverse);

}  // namespace psqm::detail
