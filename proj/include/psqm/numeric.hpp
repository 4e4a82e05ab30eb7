#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace psqm {

using cdouble = std::complex<double>;

/// Pairwise (cascade) summation. All big reductions in the library go
/// through this so results are independent of any future chunking of the
/// outer loops and carry O(eps log n) roundoff instead of O(eps n).
double pairwise_sum(std::span<const double> v);
cdouble pairwise_sum(std::span<const cdouble> v);

bool is_power_of_two(std::size_t n);

/// FNV-1a 64-bit hash of a byte string, hex-encoded. Used for the
/// manifest checksums; stable across platforms.
std::string fnv1a64_hex(std::string_view bytes);

inline constexpr double two_pi = 6.283185307179586476925286766559;

}  // namespace psqm
