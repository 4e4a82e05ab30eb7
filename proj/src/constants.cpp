#include "psqm/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace psqm {

namespace {

constexpr double pi = 3.14159265358979323846;

void check_consts(const PhysicalConstants& c) {
  if (!(c.h >= 0.0) || !(c.c > 0.0) || !(c.m_e > 0.0))
    throw std::invalid_argument(
        "physical constants must satisfy h >= 0, c > 0, m_e > 0");
}

}  // namespace

double amplitude_from_spacing(double d, const PhysicalConstants& consts) {
  check_consts(consts);
  if (!(d > 0.0))
    throw std::invalid_argument("amplitude_from_spacing: d must be positive, got " +
                                std::to_string(d));
  return std::sqrt(consts.h * d / (2.0 * pi * pi * consts.m_e * consts.c));
}

double ratio_residual(const StringParams& params,
                      const PhysicalConstants& consts) {
  check_consts(consts);
  if (!(params.spacing > 0.0))
    throw std::invalid_argument("ratio_residual: spacing must be positive");
  if (!(params.amplitude >= 0.0))
    throw std::invalid_argument("ratio_residual: amplitude must be non-negative");
  const double lhs = consts.h / consts.c;
  const double rhs = 2.0 * pi * pi * consts.m_e * params.amplitude *
                     params.amplitude / params.spacing;
  return std::abs(lhs - rhs) / lhs;
}

std::vector<std::pair<double, double>> planck_limit_scan(
    const std::vector<double>& h_values, double d,
    const PhysicalConstants& consts) {
  if (h_values.empty())
    throw std::invalid_argument("planck_limit_scan: empty h list");
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    if (!(h_values[i] > 0.0))
      throw std::invalid_argument("planck_limit_scan: h values must be positive");
    if (i > 0 && !(h_values[i] < h_values[i - 1]))
      throw std::invalid_argument(
          "planck_limit_scan: h values must be strictly descending");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(h_values.size());
  for (double h : h_values) {
    PhysicalConstants c = consts;
    c.h = h;
    out.emplace_back(h, amplitude_from_spacing(d, c));
  }
  return out;
}

}  // namespace psqm
