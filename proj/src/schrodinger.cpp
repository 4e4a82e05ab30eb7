#include "psqm/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "psqm/errors.hpp"
#include "psqm/internal_space.hpp"
#include "psqm/moments.hpp"
#include "psqm/transform.hpp"

namespace psqm {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// Number of eigenvalues of T strictly below lambda (Sturm sequence count
// with the usual pivot floor to survive exact hits).
std::size_t sturm_count(const TridiagonalOperator& T, double lambda,
                        double pivmin) {
  std::size_t count = 0;
  double q = T.diag[0] - lambda;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < T.diag.size(); ++i) {
    q = T.diag[i] - lambda - T.off[i - 1] * T.off[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// splitmix64; gives a reproducible, grid-independent start vector.
double hash_unit(std::uint64_t j) {
  std::uint64_t z = j + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
}

// One inverse-iteration solve (T - shift I) v = b by partial-pivoted
// elimination; the pivoting introduces a second superdiagonal.
void shifted_solve(const TridiagonalOperator& T, double shift,
                   std::vector<double>& v) {
  const std::size_t n = T.diag.size();
  std::vector<double> a(n), b(n - 1), c(n - 1), d2(n > 2 ? n - 2 : 0, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i] = T.diag[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    b[i] = T.off[i];  // subdiagonal, mutated during elimination
    c[i] = T.off[i];  // superdiagonal
  }
  const double tiny = std::numeric_limits<double>::min() * 4.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(b[i]) > std::abs(a[i])) {
      std::swap(a[i], b[i]);
      std::swap(c[i], a[i + 1]);
      if (i + 2 < n) {
        d2[i] = c[i + 1];
        c[i + 1] = 0.0;
      }
      std::swap(v[i], v[i + 1]);
    }
    if (std::abs(a[i]) < tiny) a[i] = std::copysign(tiny, a[i]);
    const double m = b[i] / a[i];
    a[i + 1] -= m * c[i];
    if (i + 2 < n) c[i + 1] -= m * d2[i];
    v[i + 1] -= m * v[i];
  }
  if (std::abs(a[n - 1]) < tiny) a[n - 1] = std::copysign(tiny, a[n - 1]);
  for (std::size_t ri = n; ri-- > 0;) {
    double s = v[ri];
    if (ri + 1 < n) s -= c[ri] * v[ri + 1];
    if (ri + 2 < n) s -= d2[ri] * v[ri + 2];
    v[ri] = s / a[ri];
  }
}

void apply_tridiag(const TridiagonalOperator& T, const std::vector<double>& v,
                   std::vector<double>& out) {
  const std::size_t n = T.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = T.diag[i] * v[i];
    if (i > 0) s += T.off[i - 1] * v[i - 1];
    if (i + 1 < n) s += T.off[i] * v[i + 1];
    out[i] = s;
  }
}

double norm2(const std::vector<double>& v) {
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
  return std::sqrt(pairwise_sum(std::span<const double>(sq)));
}

double potential_integral(const WaveFunction& psi,
                          const std::vector<double>& V) {
  const std::size_t n = psi.field.grid.n;
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i)
    terms[i] = V[i] * std::norm(psi.field.values[i]);
  return pairwise_sum(std::span<const double>(terms)) * psi.field.grid.dx;
}

void check_spec(const HamiltonianSpec& spec, const Grid1D& grid) {
  if (!(spec.mass > 0.0))
    throw std::invalid_argument("hamiltonian: mass must be positive");
  if (!(spec.hbar > 0.0))
    throw std::invalid_argument("hamiltonian: hbar must be positive");
  if (spec.potential.size() != grid.n)
    throw std::invalid_argument(
        "hamiltonian: potential has " + std::to_string(spec.potential.size()) +
        " samples for a grid of " + std::to_string(grid.n));
  for (double v : spec.potential)
    if (!std::isfinite(v))
      throw std::invalid_argument("hamiltonian: potential sample not finite");
}

}  // namespace

TridiagonalOperator build_hamiltonian(const HamiltonianSpec& spec,
                                      const Grid1D& grid) {
  check_spec(spec, grid);
  const double t = spec.hbar * spec.hbar / (2.0 * spec.mass * grid.dx * grid.dx);
  TridiagonalOperator T{grid, spec.hbar, {}, {}};
  T.diag.resize(grid.n);
  T.off.assign(grid.n - 1, -t);
  for (std::size_t i = 0; i < grid.n; ++i)
    T.diag[i] = 2.0 * t + spec.potential[i];
  return T;
}

EigenSolution solve_eigen(const TridiagonalOperator& H, std::size_t k) {
  const std::size_t n = H.diag.size();
  if (k < 1 || k > n)
    throw std::invalid_argument("solve_eigen: k must be in [1, " +
                                std::to_string(n) + "], got " +
                                std::to_string(k));

  double lo = H.diag[0], hi = H.diag[0], maxod = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(H.off[i - 1]) : 0.0) +
                     (i + 1 < n ? std::abs(H.off[i]) : 0.0);
    lo = std::min(lo, H.diag[i] - r);
    hi = std::max(hi, H.diag[i] + r);
    if (i + 1 < n) maxod = std::max(maxod, H.off[i] * H.off[i]);
  }
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, maxod);
  const double scale = std::max(std::abs(lo), std::abs(hi));

  EigenSolution sol;
  sol.energies.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    double a = lo, b = hi;
    while (b - a > 2.0 * eps * std::max(scale, std::abs(a)) &&
           b - a > pivmin) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (sturm_count(H, mid, pivmin) <= j)
        a = mid;
      else
        b = mid;
    }
    sol.energies[j] = 0.5 * (a + b);
  }

  // Inverse iteration per eigenvalue, re-orthogonalized against the
  // eigenvectors already accepted so near-degenerate pairs stay clean.
  std::vector<std::vector<double>> vecs;
  std::vector<double> work(n);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = hash_unit(static_cast<std::uint64_t>(j) * 0x100000001ull + i);
    double nv = norm2(v);
    for (auto& x : v) x /= nv;

    const double target = 64.0 * eps * scale;
    double residual = std::numeric_limits<double>::infinity();
    const int max_iter = 10;
    int iterations = 0;
    while (iterations < max_iter) {
      ++iterations;
      shifted_solve(H, sol.energies[j], v);
      for (const auto& prev : vecs) {
        std::vector<double> prod(n);
        for (std::size_t i = 0; i < n; ++i) prod[i] = prev[i] * v[i];
        const double proj = pairwise_sum(std::span<const double>(prod));
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * prev[i];
      }
      nv = norm2(v);
      if (!(nv > 0.0) || !std::isfinite(nv)) {
        // solve degenerated (start vector in the span of earlier states or
        // overflow); restart from a different deterministic seed
        for (std::size_t i = 0; i < n; ++i)
          v[i] = hash_unit((static_cast<std::uint64_t>(j) + 17) * 0x1000003ull +
                           i * 2654435761ull + iterations);
        nv = norm2(v);
        for (auto& x : v) x /= nv;
        continue;
      }
      for (auto& x : v) x /= nv;
      apply_tridiag(H, v, work);
      for (std::size_t i = 0; i < n; ++i)
        work[i] -= sol.energies[j] * v[i];
      residual = norm2(work);
      if (residual <= target) break;
    }
    if (residual > target)
      throw convergence_error(
          "solve_eigen: inverse iteration stalled at eigenvalue " +
          std::to_string(sol.energies[j]) + " (index " + std::to_string(j) +
          "): residual " + std::to_string(residual) + ", target " +
          std::to_string(target) + ", after " + std::to_string(iterations) +
          " iterations");

    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    if (v[imax] < 0.0)
      for (auto& x : v) x = -x;
    vecs.push_back(std::move(v));
  }

  const double inv_sqrt_dx = 1.0 / std::sqrt(H.grid.dx);
  for (std::size_t j = 0; j < k; ++j) {
    ComplexField1D f{H.grid, std::vector<cdouble>(n)};
    for (std::size_t i = 0; i < n; ++i)
      f.values[i] = vecs[j][i] * inv_sqrt_dx;
    sol.states.push_back(WaveFunction{std::move(f), H.hbar});
  }
  return sol;
}

double energy_expectation(const WaveFunction& psi,
                          const HamiltonianSpec& spec) {
  const Grid1D& grid = psi.field.grid;
  check_spec(spec, grid);
  std::vector<cdouble> acted = psi.field.values;
  detail::apply_momentum_power(acted, 2, grid, spec.hbar);
  std::vector<cdouble> terms(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i)
    terms[i] = std::conj(psi.field.values[i]) * acted[i];
  const cdouble p2 = pairwise_sum(std::span<const cdouble>(terms)) * grid.dx;
  const cdouble total =
      p2 / (2.0 * spec.mass) + potential_integral(psi, spec.potential);
  if (std::abs(total.imag()) > 1e-10)
    throw std::runtime_error(
        "energy_expectation: imaginary residue " +
        std::to_string(std::abs(total.imag())) + " exceeds 1e-10");
  return total.real();
}

DerivationReport derivation_consistency(const WaveFunction& psi,
                                        const HamiltonianSpec& spec) {
  const Grid1D& grid = psi.field.grid;
  check_spec(spec, grid);
  DerivationReport r;
  const auto xi = build_characteristic(psi, Convention::plain);
  r.kinetic_internal = moment_p(xi, 2).value.real() / (2.0 * spec.mass);
  r.potential = potential_integral(psi, spec.potential);
  r.total_split = r.kinetic_internal + r.potential;
  r.total_direct = energy_expectation(psi, spec);
  r.relative_gap = std::abs(r.total_split - r.total_direct) /
                   std::max(std::abs(r.total_direct), 1e-300);
  return r;
}

std::vector<double> sample_potential(const PotentialSpec& spec,
                                     const Grid1D& grid, double mass) {
  std::vector<double> V(grid.n, 0.0);
  if (std::holds_alternative<ZeroPotential>(spec)) return V;
  if (const auto* h = std::get_if<HarmonicPotential>(&spec)) {
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double x = grid.x(i);
      V[i] = 0.5 * mass * h->omega * h->omega * x * x;
    }
    return V;
  }
  if (const auto* q = std::get_if<QuarticPotential>(&spec)) {
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double x2 = grid.x(i) * grid.x(i);
      V[i] = q->lambda * x2 * x2;
    }
    return V;
  }
  const auto& w = std::get<SquareWellPotential>(spec);
  for (std::size_t i = 0; i < grid.n; ++i)
    if (std::abs(grid.x(i) - w.center) <= 0.5 * w.width) V[i] = -w.depth;
  return V;
}

}  // namespace psqm
