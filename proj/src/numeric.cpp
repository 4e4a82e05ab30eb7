#include "psqm/numeric.hpp"

#include <array>
#include <cstdio>

namespace psqm {

namespace {

template <typename T>
T pairwise_sum_impl(std::span<const T> v) {
  if (v.size() <= 32) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum_impl(v.first(half)) + pairwise_sum_impl(v.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_sum_impl(v); }

cdouble pairwise_sum(std::span<const cdouble> v) {
  return pairwise_sum_impl(v);
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf.data());
}

}  // namespace psqm
