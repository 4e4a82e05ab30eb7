#include "psqm/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "psqm/constants.hpp"
#include "psqm/errors.hpp"
#include "psqm/moments.hpp"
#include "psqm/schrodinger.hpp"
#include "psqm/verify.hpp"

namespace psqm {

namespace {

const char* command_name(CommandKind kind) {
  switch (kind) {
    case CommandKind::state: return "state";
    case CommandKind::phase_space: return "phase-space";
    case CommandKind::moments: return "moments";
    case CommandKind::eigensolve: return "eigensolve";
    case CommandKind::kernel: return "kernel";
    case CommandKind::constants: return "constants";
    case CommandKind::verify: return "verify";
  }
  return "?";
}

// Lazily built pipeline objects shared by the output writers.
struct Pipeline {
  const ExperimentConfig& cfg;
  std::optional<Grid1D> grid_;
  std::optional<WaveFunction> psi_;
  std::optional<CharacteristicAmplitude> xi_;
  std::optional<PhaseSpaceDensity> F_;

  const Grid1D& grid() {
    if (!grid_) {
      if (!cfg.grid) throw config_error("this command needs a \"grid\"");
      grid_ = grid_from_config(*cfg.grid);
    }
    return *grid_;
  }
  const WaveFunction& psi() {
    if (!psi_) {
      if (!cfg.state) throw config_error("this command needs a \"state\"");
      psi_ = build_state(*cfg.state, grid(), cfg.hbar);
    }
    return *psi_;
  }
  const CharacteristicAmplitude& xi() {
    if (!xi_) xi_ = build_characteristic(psi(), cfg.convention);
    return *xi_;
  }
  const PhaseSpaceDensity& F() {
    if (!F_) F_ = density(probability_amplitude(xi()));
    return *F_;
  }
  HamiltonianSpec hamiltonian() {
    if (!cfg.hamiltonian)
      throw config_error("this command needs a \"hamiltonian\"");
    return HamiltonianSpec{
        cfg.hamiltonian->mass, cfg.hbar,
        sample_potential(cfg.hamiltonian->potential, grid(),
                         cfg.hamiltonian->mass)};
  }
};

void record(std::vector<InvariantRecord>* inv, const std::string& name,
            double value, double tolerance) {
  if (inv) inv->push_back({name, value, tolerance, value <= tolerance, false});
}

OutputFileRecord write_state_csv(const std::filesystem::path& dir,
                                 Pipeline& pl,
                                 std::vector<InvariantRecord>* inv) {
  const auto& psi = pl.psi();
  CsvFile csv(dir, "state.csv", "x,re_psi,im_psi");
  for (std::size_t i = 0; i < psi.grid().n; ++i)
    csv.row({format_double(psi.grid().x(i)),
             format_double(psi.field.values[i].real()),
             format_double(psi.field.values[i].imag())});
  record(inv, "state.normalization", std::abs(field_norm(psi.field) - 1.0),
         pl.cfg.tolerances.normalization);
  return csv.close("state");
}

OutputFileRecord write_density_csv(const std::filesystem::path& dir,
                                   Pipeline& pl,
                                   std::vector<InvariantRecord>* inv) {
  const auto& F = pl.F();
  CsvFile csv(dir, "density.csv", "x,p,F");
  for (std::size_t i = 0; i < F.n(); ++i) {
    const std::string x = format_double(F.grid.x(i));
    for (std::size_t k = 0; k < F.n(); ++k)
      csv.row({x, format_double(F.pgrid.p(k)), format_double(F.at(i, k))});
  }
  if (inv) {
    double neg = 0.0;
    for (double v : F.values) neg = std::max(neg, -v);
    inv->push_back({"phase.positivity", neg, 0.0, neg == 0.0, false});
    std::vector<double> rows(F.n()), terms(F.n());
    for (std::size_t i = 0; i < F.n(); ++i) {
      for (std::size_t k = 0; k < F.n(); ++k) terms[k] = F.at(i, k);
      rows[i] = pairwise_sum(std::span<const double>(terms));
    }
    const double mass = pairwise_sum(std::span<const double>(rows)) *
                        F.grid.dx * F.pgrid.dp;
    record(inv, "phase.normalization", std::abs(mass - 1.0),
           pl.cfg.tolerances.normalization);
  }
  return csv.close("density");
}

OutputFileRecord write_marginals_csv(const std::filesystem::path& dir,
                                     Pipeline& pl,
                                     std::vector<InvariantRecord>* inv) {
  const auto& F = pl.F();
  const Marginals m = marginals(F);
  CsvFile csv(dir, "marginals.csv", "axis,coord,density");
  for (std::size_t i = 0; i < F.n(); ++i)
    csv.row({"x", format_double(F.grid.x(i)), format_double(m.position[i])});
  for (std::size_t k = 0; k < F.n(); ++k)
    csv.row({"p", format_double(F.pgrid.p(k)), format_double(m.momentum[k])});
  if (inv) {
    std::vector<double> pos = m.position, mom = m.momentum;
    const double pmass =
        pairwise_sum(std::span<const double>(pos)) * F.grid.dx;
    const double mmass =
        pairwise_sum(std::span<const double>(mom)) * F.pgrid.dp;
    record(inv, "phase.marginal_mass",
           std::max(std::abs(pmass - 1.0), std::abs(mmass - 1.0)),
           pl.cfg.tolerances.normalization);
  }
  return csv.close("marginals");
}

OutputFileRecord write_density_summary(const std::filesystem::path& dir,
                                       Pipeline& pl) {
  const auto& F = pl.F();
  const Marginals m = marginals(F);
  nlohmann::ordered_json j;
  std::vector<double> pos = m.position, mom = m.momentum;
  j["norm"] = pairwise_sum(std::span<const double>(pos)) * F.grid.dx;
  j["mean_x"] = ensemble_average(F, Axis::x);
  j["mean_p"] = ensemble_average(F, Axis::p);
  j["marginal_x"] = m.position;
  j["marginal_p"] = m.momentum;
  const std::string body = j.dump(2) + "\n";
  const auto path = dir / "summary.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write " + path.string());
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  out.flush();
  if (!out) throw io_error("write failed for " + path.string());
  return OutputFileRecord{"summary", "summary.json",
                          "fnv1a64:" + fnv1a64_hex(body)};
}

const char* path_name(MomentPath p) {
  switch (p) {
    case MomentPath::internal: return "internal";
    case MomentPath::separable: return "separable";
    case MomentPath::phase_space: return "phase_space";
  }
  return "?";
}

OutputFileRecord write_moments_csv(const std::filesystem::path& dir,
                                   const std::vector<std::pair<int, int>>& pairs,
                                   Pipeline& pl,
                                   std::vector<InvariantRecord>* inv) {
  CsvFile csv(dir, "moments.csv", "n,m,path,re,im,residual");
  const Tolerances& tol = pl.cfg.tolerances;
  const double floor = tol.moment_absolute / tol.moment_relative;
  double three_path = 0.0, ordering = 0.0, hermiticity = 0.0;
  for (const auto& [n, m] : pairs) {
    const MomentResult internal = moment_xp(pl.xi(), n, m, OperatorOrder::xp);
    const MomentResult separable = separable_moment(pl.psi(), n, m);
    const double phase = phase_space_moment(pl.F(), n, m);
    auto emit = [&](const MomentResult& r) {
      csv.row({std::to_string(n), std::to_string(m), path_name(r.path),
               format_double(r.value.real()), format_double(r.value.imag()),
               format_double(r.imaginary_residual)});
    };
    emit(internal);
    emit(separable);
    csv.row({std::to_string(n), std::to_string(m), "phase_space",
             format_double(phase), format_double(0.0), format_double(0.0)});
    auto err = [&](cdouble a, cdouble b) {
      return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
    };
    three_path = std::max({three_path, err(internal.value, separable.value),
                           err(internal.value, {phase, 0.0}),
                           err(separable.value, {phase, 0.0})});
    ordering = std::max(ordering, internal.ordering_difference);
    hermiticity = std::max({hermiticity, internal.imaginary_residual,
                            separable.imaginary_residual});
  }
  record(inv, "moments.three_path", three_path, tol.moment_relative);
  record(inv, "moments.ordering", ordering, tol.ordering);
  record(inv, "moments.hermiticity", hermiticity, tol.hermiticity);
  return csv.close("moments");
}

OutputFileRecord write_kernel_csv(const std::filesystem::path& dir,
                                  const std::vector<double>& deltas,
                                  Pipeline& pl,
                                  std::vector<InvariantRecord>* inv) {
  CsvFile csv(dir, "kernel.csv", "delta,x,re,im");
  double equivalence = 0.0;
  bool any_commensurate = false;
  for (double d : deltas) {
    const DensityKernel k6 = wigner_moyal(pl.F(), d);
    for (std::size_t i = 0; i < k6.grid.n; ++i)
      csv.row({format_double(d), format_double(k6.grid.x(i)),
               format_double(k6.values[i].real()),
               format_double(k6.values[i].imag())});
    const double steps = d / pl.grid().dx;
    if (std::abs(steps - std::llround(steps)) < 1e-9) {
      any_commensurate = true;
      const DensityKernel k7 = translation_kernel(pl.xi(), d);
      for (std::size_t i = 0; i < k6.values.size(); ++i)
        equivalence =
            std::max(equivalence, std::abs(k6.values[i] - k7.values[i]));
    }
  }
  if (any_commensurate)
    record(inv, "phase.kernel_equivalence", equivalence,
           pl.cfg.tolerances.kernel_equivalence);
  return csv.close("kernel");
}

struct SpectrumArtifacts {
  std::vector<OutputFileRecord> records;
  std::vector<std::pair<double, double>> series;  // (k, E_k) for plotting
};

SpectrumArtifacts write_spectrum_csv(const std::filesystem::path& dir,
                                     std::size_t k, Pipeline& pl,
                                     std::vector<InvariantRecord>* inv) {
  const auto hspec = pl.hamiltonian();
  const Grid1D& grid = pl.grid();
  if (k < 1 || k > grid.n)
    throw config_error("eigensolve: k must be in [1, " +
                       std::to_string(grid.n) + "], got " + std::to_string(k));
  const auto H = build_hamiltonian(hspec, grid);
  const EigenSolution sol = solve_eigen(H, k);

  SpectrumArtifacts art;
  CsvFile spectrum(dir, "spectrum.csv", "k,energy");
  for (std::size_t j = 0; j < k; ++j) {
    spectrum.row({std::to_string(j), format_double(sol.energies[j])});
    art.series.emplace_back(static_cast<double>(j), sol.energies[j]);
  }
  art.records.push_back(spectrum.close("spectrum"));

  for (std::size_t j = 0; j < k; ++j) {
    CsvFile st(dir, "eigenstate_" + std::to_string(j) + ".csv",
               "x,re_psi,im_psi");
    for (std::size_t i = 0; i < grid.n; ++i)
      st.row({format_double(grid.x(i)),
              format_double(sol.states[j].field.values[i].real()),
              format_double(sol.states[j].field.values[i].imag())});
    art.records.push_back(st.close("eigenstate"));
  }

  if (inv) {
    double gram = 0.0, res = 0.0;
    std::vector<cdouble> terms(grid.n);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        for (std::size_t i = 0; i < grid.n; ++i)
          terms[i] = std::conj(sol.states[a].field.values[i]) *
                     sol.states[b].field.values[i];
        const cdouble g =
            pairwise_sum(std::span<const cdouble>(terms)) * grid.dx;
        gram = std::max(gram, std::abs(g - (a == b ? 1.0 : 0.0)));
      }
      std::vector<double> hv2(grid.n), err2(grid.n);
      const auto& v = sol.states[a].field.values;
      for (std::size_t i = 0; i < grid.n; ++i) {
        cdouble hv = H.diag[i] * v[i];
        if (i > 0) hv += H.off[i - 1] * v[i - 1];
        if (i + 1 < grid.n) hv += H.off[i] * v[i + 1];
        hv2[i] = std::norm(hv);
        err2[i] = std::norm(hv - sol.energies[a] * v[i]);
      }
      res = std::max(res,
                     std::sqrt(pairwise_sum(std::span<const double>(err2))) /
                         std::sqrt(pairwise_sum(std::span<const double>(hv2))));
    }
    record(inv, "schrodinger.orthonormality", gram,
           pl.cfg.tolerances.orthonormality);
    record(inv, "schrodinger.eigen_residual", res,
           pl.cfg.tolerances.eigen_residual);
  }
  return art;
}

struct ConstantsArtifacts {
  OutputFileRecord record_;
  std::vector<std::pair<double, double>> series;
};

ConstantsArtifacts write_constants_csv(const std::filesystem::path& dir,
                                       const ConstantsScanOutput& req,
                                       const Tolerances& tol,
                                       std::vector<InvariantRecord>* inv) {
  const PhysicalConstants base{};
  std::vector<double> hs;
  for (double f : req.h_factors) hs.push_back(f * base.h);
  const auto scan = planck_limit_scan(hs, req.d, base);
  CsvFile csv(dir, "constants_scan.csv", "h,A");
  ConstantsArtifacts art;
  for (const auto& [h, a] : scan) {
    csv.row({format_double(h), format_double(a)});
    art.series.emplace_back(h, a);
  }
  if (inv) {
    const double A0 = amplitude_from_spacing(req.d, base);
    record(inv, "constants.round_trip", ratio_residual({A0, req.d}, base),
           tol.constants_round_trip);
    double worst = 0.0;
    for (const auto& [h, a] : scan)
      worst = std::max(worst,
                       std::abs(a / (A0 * std::sqrt(h / base.h)) - 1.0));
    record(inv, "constants.scaling_h", worst, tol.constants_scaling);
  }
  art.record_ = csv.close("constants_scan");
  return art;
}

OutputFileRecord write_plot(const std::filesystem::path& dir,
                            const std::string& body) {
  const auto path = dir / "plot.dat";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write " + path.string());
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  out.flush();
  if (!out) throw io_error("write failed for " + path.string());
  return OutputFileRecord{"plot", "plot.dat", "fnv1a64:" + fnv1a64_hex(body)};
}

void check_plot_kind(const std::optional<std::string>& plot,
                     const char* natural, const char* command) {
  if (!plot) return;
  if (*plot != natural)
    throw config_error(std::string("plot kind \"") + *plot +
                       "\" is not available for " + command +
                       " (emits " + natural + " data)");
}

RunOutcome run_impl(const CommandOptions& opt) {
  RunOutcome out;
  out.manifest.command = command_name(opt.kind);
  out.manifest.config_path = opt.config_path.string();

  const ExperimentConfig cfg =
      load_config(opt.config_path, opt.set_overrides);

  std::filesystem::path dir = cfg.output_dir;
  if (const char* env = std::getenv("PSQM_OUTPUT_DIR")) dir = env;
  if (opt.output_dir) dir = *opt.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw io_error("cannot create output directory " + dir.string() + ": " +
                   ec.message());

  Pipeline pl{cfg, {}, {}, {}, {}};
  auto& outputs = out.manifest.outputs;
  auto* inv = &out.manifest.invariants;

  switch (opt.kind) {
    case CommandKind::state: {
      check_plot_kind(opt.plot, "line", "state");
      outputs.push_back(write_state_csv(dir, pl, inv));
      if (opt.plot) {
        std::vector<std::pair<double, double>> series;
        for (std::size_t i = 0; i < pl.grid().n; ++i)
          series.emplace_back(pl.grid().x(i),
                              std::norm(pl.psi().field.values[i]));
        std::ostringstream os;
        emit_plot_line(os, series);
        outputs.push_back(write_plot(dir, os.str()));
      }
      break;
    }
    case CommandKind::phase_space: {
      check_plot_kind(opt.plot, "heatmap", "phase-space");
      outputs.push_back(write_density_csv(dir, pl, inv));
      outputs.push_back(write_density_summary(dir, pl));
      for (const auto& req : cfg.outputs)
        if (std::holds_alternative<MarginalsOutput>(req))
          outputs.push_back(write_marginals_csv(dir, pl, inv));
      if (opt.plot) {
        std::ostringstream os;
        emit_plot_heatmap(os, pl.F());
        outputs.push_back(write_plot(dir, os.str()));
      }
      break;
    }
    case CommandKind::moments: {
      if (opt.plot) throw config_error("moments has no plottable series");
      std::vector<std::pair<int, int>> pairs;
      if (opt.moment_n || opt.moment_m) {
        if (!opt.moment_n || !opt.moment_m)
          throw config_error("moments needs both --n and --m (or neither)");
        const int n = *opt.moment_n, m = *opt.moment_m;
        if (n < 0 || m < 0 || n > 8 || m > 8)
          throw config_error("moment powers must be in [0, 8]");
        if (n + m < 1) throw config_error("moment powers need n + m >= 1");
        pairs.emplace_back(n, m);
      } else {
        for (const auto& req : cfg.outputs)
          if (const auto* mo = std::get_if<MomentsOutput>(&req))
            pairs.insert(pairs.end(), mo->pairs.begin(), mo->pairs.end());
        if (pairs.empty())
          throw config_error(
              "no moments requested: pass --n/--m or add a moments output");
      }
      outputs.push_back(write_moments_csv(dir, pairs, pl, inv));
      break;
    }
    case CommandKind::eigensolve: {
      check_plot_kind(opt.plot, "line", "eigensolve");
      std::size_t k = 4;
      for (const auto& req : cfg.outputs)
        if (const auto* s = std::get_if<SpectrumOutput>(&req)) k = s->k;
      if (opt.eigen_k) k = *opt.eigen_k;
      auto art = write_spectrum_csv(dir, k, pl, inv);
      for (auto& r : art.records) outputs.push_back(std::move(r));
      if (opt.plot) {
        std::ostringstream os;
        emit_plot_line(os, art.series);
        outputs.push_back(write_plot(dir, os.str()));
      }
      break;
    }
    case CommandKind::kernel: {
      check_plot_kind(opt.plot, "line", "kernel");
      std::vector<double> deltas;
      if (opt.kernel_delta) {
        deltas.push_back(*opt.kernel_delta);
      } else {
        for (const auto& req : cfg.outputs)
          if (const auto* ko = std::get_if<KernelOutput>(&req))
            deltas.insert(deltas.end(), ko->deltas.begin(), ko->deltas.end());
        if (deltas.empty()) deltas.push_back(0.0);
      }
      outputs.push_back(write_kernel_csv(dir, deltas, pl, inv));
      if (opt.plot) {
        const DensityKernel k6 = wigner_moyal(pl.F(), deltas.front());
        std::vector<std::pair<double, double>> series;
        for (std::size_t i = 0; i < k6.grid.n; ++i)
          series.emplace_back(k6.grid.x(i), k6.values[i].real());
        std::ostringstream os;
        emit_plot_line(os, series);
        outputs.push_back(write_plot(dir, os.str()));
      }
      break;
    }
    case CommandKind::constants: {
      check_plot_kind(opt.plot, "line", "constants");
      ConstantsScanOutput req;
      for (const auto& r : cfg.outputs)
        if (const auto* c = std::get_if<ConstantsScanOutput>(&r)) req = *c;
      auto art = write_constants_csv(dir, req, cfg.tolerances, inv);
      outputs.push_back(art.record_);
      if (opt.plot) {
        std::ostringstream os;
        emit_plot_line(os, art.series);
        outputs.push_back(write_plot(dir, os.str()));
      }
      break;
    }
    case CommandKind::verify: {
      if (opt.plot) throw config_error("verify has no plottable series");
      for (const auto& req : cfg.outputs) {
        if (std::holds_alternative<DensityOutput>(req))
          outputs.push_back(write_density_csv(dir, pl, nullptr));
        else if (std::holds_alternative<MarginalsOutput>(req))
          outputs.push_back(write_marginals_csv(dir, pl, nullptr));
        else if (const auto* mo = std::get_if<MomentsOutput>(&req))
          outputs.push_back(write_moments_csv(dir, mo->pairs, pl, nullptr));
        else if (const auto* ko = std::get_if<KernelOutput>(&req))
          outputs.push_back(write_kernel_csv(dir, ko->deltas, pl, nullptr));
        else if (const auto* so = std::get_if<SpectrumOutput>(&req)) {
          auto art = write_spectrum_csv(dir, so->k, pl, nullptr);
          for (auto& r : art.records) outputs.push_back(std::move(r));
        } else if (const auto* co = std::get_if<ConstantsScanOutput>(&req)) {
          outputs.push_back(
              write_constants_csv(dir, *co, cfg.tolerances, nullptr).record_);
        }
      }
      const auto suite = run_invariant_suite(cfg);
      inv->insert(inv->end(), suite.begin(), suite.end());
      break;
    }
  }

  bool pass = true;
  for (const auto& r : out.manifest.invariants)
    if (!r.diagnostic && !r.pass) pass = false;
  out.manifest.pass = pass;
  write_manifest(out.manifest, dir);
  out.exit_code = pass ? exit_ok : exit_invariant_failure;
  return out;
}

}  // namespace

RunOutcome run_command(const CommandOptions& options) {
  try {
    return run_impl(options);
  } catch (const config_error& e) {
    return RunOutcome{exit_config_error, {}, e.what()};
  } catch (const io_error& e) {
    return RunOutcome{exit_io_error, {}, e.what()};
  } catch (const std::invalid_argument& e) {
    return RunOutcome{exit_config_error, {}, e.what()};
  } catch (const std::exception& e) {
    return RunOutcome{exit_invariant_failure, {}, e.what()};
  }
}

void emit_plot_heatmap(std::ostream& os, const PhaseSpaceDensity& F) {
  for (std::size_t i = 0; i < F.n(); ++i) {
    const std::string x = format_double(F.grid.x(i));
    for (std::size_t k = 0; k < F.n(); ++k)
      os << x << ' ' << format_double(F.pgrid.p(k)) << ' '
         << format_double(F.at(i, k)) << '\n';
    os << '\n';
  }
}

void emit_plot_line(std::ostream& os,
                    const std::vector<std::pair<double, double>>& series) {
  if (series.empty()) throw config_error("empty series has nothing to plot");
  for (const auto& [a, b] : series)
    os << format_double(a) << ' ' << format_double(b) << '\n';
}

}  // namespace psqm
