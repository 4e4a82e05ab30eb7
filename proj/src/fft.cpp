#include "psqm/fft.hpp"

#include <cassert>
#include <cmath>

namespace psqm::detail {

void fft_radix2(std::vector<cdouble>& a, bool inverse) {
  const std::size_t n = a.size();
  assert(n != 0 && (n & (n - 1)) == 0);
  if (n == 1) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  std::vector<cdouble> twiddle(n / 2);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const double ang = sign * two_pi / static_cast<double>(len);
    for (std::size_t j = 0; j < half; ++j)
      twiddle[j] = std::polar(1.0, ang * static_cast<double>(j));
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const cdouble u = a[i + j];
        const cdouble v = a[i + j + half] * twiddle[j];
        a[i + j] = u + v;
        a[i + j + half] = u - v;
      }
    }
  }
}

}  // namespace psqm::detail
