#include "psqm/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "psqm/transform.hpp"

namespace psqm {

namespace {

double ipow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_power(int v, const char* name) {
  if (v < 0 || v > max_moment_power)
    throw std::invalid_argument(std::string("moment power ") + name +
                                " must be in [0, 8]");
}

MomentResult finish(cdouble value, MomentPath path) {
  return MomentResult{value, path, std::abs(value.imag()), 0.0};
}

// Row contractions over the internal coordinate. x^n is constant along a
// row, so the mixed-moment orderings differ only in where that scalar
// multiplies; the momentum operator itself commutes with it exactly.
std::vector<cdouble> row_p_contractions(const CharacteristicAmplitude& xi,
                                        int m) {
  const std::size_t n = xi.n();
  std::vector<cdouble> s(n), row(n), terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    row.assign(xi.values.begin() + i * n, xi.values.begin() + (i + 1) * n);
    std::vector<cdouble> acted = row;
    if (m > 0) detail::apply_momentum_power(acted, m, xi.grid, xi.hbar);
    for (std::size_t j = 0; j < n; ++j) terms[j] = std::conj(row[j]) * acted[j];
    s[i] = pairwise_sum(std::span<const cdouble>(terms));
  }
  return s;
}

cdouble contract_x(const CharacteristicAmplitude& xi,
                   const std::vector<cdouble>& rowsums, int n_power,
                   bool scalar_first) {
  const std::size_t n = xi.n();
  std::vector<cdouble> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = ipow(xi.grid.x(i), n_power);
    terms[i] = scalar_first ? w * rowsums[i] : rowsums[i] * w;
  }
  const double dx = xi.grid.dx;
  return pairwise_sum(std::span<const cdouble>(terms)) * dx * dx;
}

}  // namespace

MomentResult moment_x(const CharacteristicAmplitude& xi, int n) {
  check_power(n, "n");
  return finish(contract_x(xi, row_p_contractions(xi, 0), n, true),
                MomentPath::internal);
}

MomentResult moment_p(const CharacteristicAmplitude& xi, int m) {
  check_power(m, "m");
  return finish(contract_x(xi, row_p_contractions(xi, m), 0, true),
                MomentPath::internal);
}

MomentResult moment_xp(const CharacteristicAmplitude& xi, int n, int m,
                       OperatorOrder order) {
  check_power(n, "n");
  check_power(m, "m");
  const auto rowsums = row_p_contractions(xi, m);
  // xp: x^n scales the finished row contraction; px: the scalar rides with
  // the row before contraction closes. The operators act on different axes,
  // so the two orders are the same contraction and the reported difference
  // measures only evaluation-order roundoff.
  const cdouble xp = contract_x(xi, rowsums, n, true);
  const cdouble px = contract_x(xi, rowsums, n, false);
  MomentResult out = finish(order == OperatorOrder::xp ? xp : px,
                            MomentPath::internal);
  out.ordering_difference = std::abs(xp - px);
  return out;
}

MomentResult separable_moment(const WaveFunction& psi, int n, int m) {
  check_power(n, "n");
  check_power(m, "m");
  const Grid1D& grid = psi.field.grid;
  const std::size_t size = grid.n;
  const auto& v = psi.field.values;

  std::vector<double> xterms(size);
  for (std::size_t i = 0; i < size; ++i)
    xterms[i] = ipow(grid.x(i), n) * std::norm(v[i]);
  const double xint = pairwise_sum(std::span<const double>(xterms)) * grid.dx;

  std::vector<cdouble> acted = v;
  if (m > 0) detail::apply_momentum_power(acted, m, grid, psi.hbar);
  std::vector<cdouble> pterms(size);
  for (std::size_t j = 0; j < size; ++j)
    pterms[j] = std::conj(v[j]) * acted[j];
  const cdouble pint =
      pairwise_sum(std::span<const cdouble>(pterms)) * grid.dx;

  return finish(xint * pint, MomentPath::separable);
}

}  // namespace psqm
