// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
// Tolerances are pinned here as literals on purpose; they are the contract.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "psqm/constants.hpp"
#include "psqm/internal_space.hpp"
#include "psqm/moments.hpp"
#include "psqm/phase_space.hpp"
#include "psqm/runner.hpp"
#include "psqm/schrodinger.hpp"
#include "psqm/transform.hpp"

using namespace psqm;
namespace fs = std::filesystem;

#ifndef PSQM_CONFIG_DIR
#error "PSQM_CONFIG_DIR must be defined by the build"
#endif

namespace {

int failures = 0;

void report(int index, bool pass, const std::string& what) {
  std::printf("%s  %d. %s\n", pass ? "PASS" : "FAIL", index, what.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<StateSpec> test_states() {
  return {GaussianSpec{0.0, 0.0, 1.0}, GaussianSpec{1.5, -2.0, 1.0},
          StateSpec{PlaneWaveSpec{5}}, HoEigenstateSpec{3, 1.0, 1.0}};
}

Grid1D desk_grid() { return make_grid(-8.0, 16.0 / 1024, 1024); }

std::string fmt(const char* stem, double value, double bound, double secs) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s (worst %.3e, bound %.1e, %.1fs)", stem,
                value, bound, secs);
  return buf;
}

// --- criterion 1: the two kernel paths agree on commensurate shifts -------

void criterion_kernel_paths() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid1D g = desk_grid();
  double worst = 0.0;
  for (const StateSpec& spec : test_states()) {
    const WaveFunction psi = build_state(spec, g);
    const CharacteristicAmplitude xi =
        build_characteristic(psi, Convention::plain);
    const PhaseSpaceDensity F = density(probability_amplitude(xi));
    for (double delta : {0.0, g.dx, 0.5}) {
      const DensityKernel integral = wigner_moyal(F, delta);
      const DensityKernel translation = translation_kernel(xi, delta);
      for (std::size_t i = 0; i < g.n; ++i)
        worst = std::max(worst,
                         std::abs(integral.values[i] - translation.values[i]));
    }
  }
  const double secs = seconds_since(t0);
  report(1, worst < 1e-10 && secs < 10.0,
         fmt("momentum-integral and internal-translation kernels agree",
             worst, 1e-10, secs));
}

// --- criterion 2: three moment paths agree, no ordering problem -----------

void criterion_moment_paths() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid1D g = desk_grid();
  double worst_rel = 0.0, worst_ord = 0.0;
  for (const StateSpec& spec : test_states()) {
    const WaveFunction psi = build_state(spec, g);
    const CharacteristicAmplitude xi =
        build_characteristic(psi, Convention::plain);
    const PhaseSpaceDensity F = density(probability_amplitude(xi));
    for (int n = 0; n <= 4; ++n)
      for (int m = 0; m <= 4; ++m) {
        if (n + m == 0) continue;
        const MomentResult internal = moment_xp(xi, n, m, OperatorOrder::xp);
        const MomentResult separable = separable_moment(psi, n, m);
        const double phase = phase_space_moment(F, n, m);
        // Relative agreement with a 1e-10 absolute floor near zero.
        const double scale = std::max(
            {std::abs(internal.value), std::abs(separable.value), 0.01});
        worst_rel = std::max(
            {worst_rel, std::abs(internal.value - separable.value) / scale,
             std::abs(internal.value - cdouble(phase)) / scale});
        worst_ord = std::max(worst_ord, internal.ordering_difference);
      }
  }
  const double secs = seconds_since(t0);
  const bool pass = worst_rel < 1e-8 && worst_ord < 1e-12 && secs < 30.0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "three moment paths agree without ordering problem "
                "(rel %.3e vs 1e-8, ordering %.3e vs 1e-12, %.1fs)",
                worst_rel, worst_ord, secs);
  report(2, pass, buf);
}

// --- criterion 3: F factorizes, is non-negative, has unit mass ------------

void criterion_density_shape() {
  const Grid1D g = desk_grid();
  double worst_fact = 0.0, worst_mass = 0.0;
  bool non_negative = true;
  for (const StateSpec& spec : test_states()) {
    const WaveFunction psi = build_state(spec, g);
    const PhaseSpaceDensity F = density(
        probability_amplitude(build_characteristic(psi, Convention::plain)));
    const MomentumField tilde = to_momentum(psi.field);
    for (std::size_t i = 0; i < g.n; ++i)
      for (std::size_t k = 0; k < g.n; ++k) {
        const double v = F.at(i, k);
        if (v < 0.0) non_negative = false;
        worst_fact = std::max(
            worst_fact, std::abs(v - std::norm(psi.field.values[i]) *
                                         std::norm(tilde.values[k])));
      }
    std::vector<double> rows(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      std::vector<double> row(F.values.begin() + i * g.n,
                              F.values.begin() + (i + 1) * g.n);
      rows[i] = pairwise_sum(std::span<const double>(row));
    }
    const double mass =
        pairwise_sum(std::span<const double>(rows)) * g.dx * F.pgrid.dp;
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "density factorizes (%.3e vs 1e-12), stays non-negative and "
                "keeps unit mass (%.3e vs 1e-10)",
                worst_fact, worst_mass);
  report(3, worst_fact < 1e-12 && non_negative && worst_mass < 1e-10, buf);
}

// --- criterion 4: Schrodinger endpoint spectra -----------------------------

void criterion_spectra() {
  const auto t0 = std::chrono::steady_clock::now();

  const Grid1D g = make_grid(-10.0, 20.0 / 2048, 2048);
  const HamiltonianSpec ho{1.0, 1.0,
                           sample_potential(HarmonicPotential{1.0}, g, 1.0)};
  const EigenSolution sol = solve_eigen(build_hamiltonian(ho, g), 6);
  double worst_ho = 0.0;
  for (int j = 0; j < 6; ++j)
    worst_ho = std::max(worst_ho, std::abs(sol.energies[j] - (j + 0.5)));

  const Grid1D g2 = make_grid(-10.0, 20.0 / 4096, 4096);
  const HamiltonianSpec ho2{1.0, 1.0,
                            sample_potential(HarmonicPotential{1.0}, g2, 1.0)};
  const double e0 = std::abs(sol.energies[0] - 0.5);
  const double e1 =
      std::abs(solve_eigen(build_hamiltonian(ho2, g2), 1).energies[0] - 0.5);
  const double ratio = e0 / e1;

  const Grid1D gb = make_grid(-8.0, 16.0 / 256, 256);
  const HamiltonianSpec box{1.0, 1.0, std::vector<double>(gb.n, 0.0)};
  const EigenSolution bsol = solve_eigen(build_hamiltonian(box, gb), 4);
  const double width = (static_cast<double>(gb.n) + 1.0) * gb.dx;
  double worst_box = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double kj = M_PI * (j + 1) / width;
    const double want = kj * kj / 2.0;
    worst_box = std::max(worst_box,
                         std::abs(bsol.energies[j] - want) / want);
  }

  const double secs = seconds_since(t0);
  const bool pass = worst_ho < 5e-4 && ratio > 3.5 && ratio < 4.5 &&
                    worst_box < 1e-3 && secs < 60.0;
  char buf[230];
  std::snprintf(buf, sizeof buf,
                "oscillator and box spectra match closed forms "
                "(ho %.3e vs 5e-4, refinement ratio %.2f in [3.5, 4.5], "
                "box %.3e vs 1e-3, %.1fs)",
                worst_ho, ratio, worst_box, secs);
  report(4, pass, buf);
}

// --- criterion 5: the two-integral energy split ----------------------------

void criterion_energy_split() {
  const Grid1D g = make_grid(-10.0, 20.0 / 1024, 1024);
  const HamiltonianSpec ho{1.0, 1.0,
                           sample_potential(HarmonicPotential{1.0}, g, 1.0)};
  double worst_energy = 0.0, worst_gap = 0.0;
  for (int j = 0; j <= 3; ++j) {
    const WaveFunction psi = build_state(HoEigenstateSpec{j, 1.0, 1.0}, g);
    const DerivationReport rep = derivation_consistency(psi, ho);
    worst_energy = std::max(worst_energy,
                            std::abs(rep.total_split - (j + 0.5)));
    worst_gap = std::max(worst_gap, rep.relative_gap);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "energy split reproduces the spectrum (%.3e vs 5e-4) and both "
                "paths agree (%.3e vs 1e-8)",
                worst_energy, worst_gap);
  report(5, worst_energy < 5e-4 && worst_gap < 1e-8, buf);
}

// --- criterion 6: analyticity of the continued product state ---------------

void criterion_analyticity() {
  const double pw = analyticity_residual(PlaneWaveK{1.0}, Patch2D{});
  const double ga = analyticity_residual(GaussianSpec{0.0, 0.0, 1.0}, Patch2D{});
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "plane-wave continuation is analytic (%.3e vs 1e-8); gaussian "
                "residual reported order-1 (%.3f)",
                pw, ga);
  report(6, pw < 1e-8 && ga > 0.05 && ga < 20.0, buf);
}

// --- criterion 7: the constants relation algebra ---------------------------

void criterion_constants() {
  const PhysicalConstants base{};
  double worst_rt = 0.0;
  for (double d : {1e-12, 1e-10, 1.0}) {
    const double A = amplitude_from_spacing(d, base);
    worst_rt = std::max(worst_rt, ratio_residual({A, d}, base));
  }

  const double d = 1e-10;
  const double A0 = amplitude_from_spacing(d, base);
  double worst_scale = 0.0;
  for (double f : {1.0, 0.5, 0.25}) {
    PhysicalConstants s = base;
    s.h = f * base.h;
    worst_scale =
        std::max(worst_scale, std::abs(amplitude_from_spacing(d, s) /
                                           (A0 * std::sqrt(f)) -
                                       1.0));
  }
  PhysicalConstants sc = base;
  sc.c = 4.0 * base.c;
  worst_scale = std::max(
      worst_scale, std::abs(2.0 * amplitude_from_spacing(d, sc) / A0 - 1.0));

  PhysicalConstants dead = base;
  dead.h = 0.0;
  const bool collapses = amplitude_from_spacing(d, dead) == 0.0;

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "constants relation round-trips (%.3e vs 1e-14), scales as "
                "sqrt(h) and 1/sqrt(c) (%.3e vs 1e-12), vanishes at h=0",
                worst_rt, worst_scale);
  report(7, worst_rt < 1e-14 && worst_scale < 1e-12 && collapses, buf);
}

// --- criterion 8: conjugation convention changes nothing -------------------

void criterion_convention() {
  const Grid1D g = desk_grid();
  double worst = 0.0;
  for (const StateSpec& spec : test_states()) {
    const WaveFunction psi = build_state(spec, g);
    const CharacteristicAmplitude plain =
        build_characteristic(psi, Convention::plain);
    const CharacteristicAmplitude conj =
        build_characteristic(psi, Convention::conjugate);
    const PhaseSpaceDensity Fp = density(probability_amplitude(plain));
    const PhaseSpaceDensity Fc = density(probability_amplitude(conj));
    for (std::size_t i = 0; i < Fp.values.size(); ++i)
      worst = std::max(worst, std::abs(Fp.values[i] - Fc.values[i]));

    const Marginals mp = marginals(Fp), mc = marginals(Fc);
    for (std::size_t i = 0; i < g.n; ++i)
      worst = std::max({worst, std::abs(mp.position[i] - mc.position[i]),
                        std::abs(mp.momentum[i] - mc.momentum[i])});

    for (int n = 0; n <= 4; ++n)
      for (int m = 0; m <= 4; ++m) {
        if (n + m == 0) continue;
        worst = std::max(worst,
                         std::abs(moment_xp(plain, n, m, OperatorOrder::xp).value -
                                  moment_xp(conj, n, m, OperatorOrder::xp).value));
      }
  }
  report(8, worst < 1e-12,
         fmt("plain and conjugate conventions give identical observables",
             worst, 1e-12, 0.0));
}

// --- criterion 9: byte-identical reruns ------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void criterion_determinism() {
  const fs::path base = fs::temp_directory_path() / "psqm_acceptance";
  fs::remove_all(base);
  const fs::path a = base / "a", b = base / "b";

  CommandOptions opt;
  opt.kind = CommandKind::verify;
  opt.config_path = fs::path(PSQM_CONFIG_DIR) / "ho_verify.json";
  opt.output_dir = a;
  const RunOutcome first = run_command(opt);
  opt.output_dir = b;
  const RunOutcome second = run_command(opt);

  bool identical = first.exit_code == 0 && second.exit_code == 0;
  std::size_t files = 0;
  if (identical) {
    for (const auto& entry : fs::directory_iterator(a)) {
      const fs::path other = b / entry.path().filename();
      if (!fs::exists(other) ||
          slurp(entry.path()) != slurp(other))
        identical = false;
      ++files;
    }
    for (const auto& entry : fs::directory_iterator(b))
      if (!fs::exists(a / entry.path().filename())) identical = false;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "two verify runs produce byte-identical outputs "
                "(%zu files compared)",
                files);
  report(9, identical && files > 0, buf);
}

}  // namespace

int main() {
  criterion_kernel_paths();
  criterion_moment_paths();
  criterion_density_shape();
  criterion_spectra();
  criterion_energy_split();
  criterion_analyticity();
  criterion_constants();
  criterion_convention();
  criterion_determinism();
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
