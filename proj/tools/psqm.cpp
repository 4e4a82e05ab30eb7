#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psqm/runner.hpp"

namespace {

void print_summary(const psqm::RunOutcome& out) {
  if (!out.error.empty()) {
    std::fprintf(stderr, "error: %s\n", out.error.c_str());
    return;
  }
  const auto& man = out.manifest;
  for (const auto& f : man.outputs)
    std::printf("wrote %s (%s)\n", f.path.c_str(), f.checksum.c_str());
  for (const auto& r : man.invariants) {
    if (r.diagnostic)
      std::printf("diag %-38s %.3e\n", r.name.c_str(), r.value);
    else
      std::printf("%-4s %-38s %.3e <= %.3e\n", r.pass ? "ok" : "FAIL",
                  r.name.c_str(), r.value, r.tolerance);
  }
  std::printf("%s\n", man.pass ? "PASS" : "FAIL");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space quantum mechanics pipeline"};
  app.require_subcommand(1);

  psqm::CommandOptions opt;
  std::string config;
  std::vector<std::string> overrides;
  std::string plot;
  std::string output_dir;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config, "JSON experiment config")
        ->required();
    sub->add_option("--set", overrides,
                    "Override a config value, dotted.path=value (repeatable)");
    sub->add_option("-o,--output-dir", output_dir,
                    "Output directory (beats PSQM_OUTPUT_DIR and the config)");
    return sub;
  };

  auto* state = add_common(app.add_subcommand(
      "state", "Sample the configured state and write state.csv"));
  state->add_option("--plot", plot, "Emit plot.dat (line: x, |psi|^2)");

  auto* phase = add_common(app.add_subcommand(
      "phase-space", "Build F(x, p) and write density.csv (+ marginals)"));
  phase->add_option("--plot", plot, "Emit plot.dat (heatmap: x p F)");

  auto* moments = add_common(app.add_subcommand(
      "moments", "Evaluate moments along all three paths"));
  int mn = 0, mm = 0;
  bool mn_set = false, mm_set = false;
  moments->add_option("--n", mn, "Position power (with --m)")
      ->each([&](const std::string&) { mn_set = true; });
  moments->add_option("--m", mm, "Momentum power (with --n)")
      ->each([&](const std::string&) { mm_set = true; });

  auto* eigen = add_common(app.add_subcommand(
      "eigensolve", "Lowest-k spectrum of the configured Hamiltonian"));
  std::size_t kk = 0;
  bool kk_set = false;
  eigen->add_option("--k", kk, "How many eigenpairs (beats the config)")
      ->each([&](const std::string&) { kk_set = true; });
  eigen->add_option("--plot", plot, "Emit plot.dat (line: k, E_k)");

  auto* kernel = add_common(app.add_subcommand(
      "kernel", "Two-point density kernel rho(x; delta)"));
  double kd = 0.0;
  bool kd_set = false;
  kernel->add_option("--delta", kd, "Single displacement (beats the config)")
      ->each([&](const std::string&) { kd_set = true; });
  kernel->add_option("--plot", plot, "Emit plot.dat (line: x, Re rho)");

  auto* consts = add_common(app.add_subcommand(
      "constants", "Planck-limit amplitude scan A(h)"));
  consts->add_option("--plot", plot, "Emit plot.dat (line: h, A)");

  add_common(app.add_subcommand(
      "verify", "Write configured outputs and run the invariant suite"));

  CLI11_PARSE(app, argc, argv);

  auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (name == "state") opt.kind = psqm::CommandKind::state;
  else if (name == "phase-space") opt.kind = psqm::CommandKind::phase_space;
  else if (name == "moments") opt.kind = psqm::CommandKind::moments;
  else if (name == "eigensolve") opt.kind = psqm::CommandKind::eigensolve;
  else if (name == "kernel") opt.kind = psqm::CommandKind::kernel;
  else if (name == "constants") opt.kind = psqm::CommandKind::constants;
  else opt.kind = psqm::CommandKind::verify;

  opt.config_path = config;
  opt.set_overrides = overrides;
  if (mn_set) opt.moment_n = mn;
  if (mm_set) opt.moment_m = mm;
  if (kk_set) opt.eigen_k = kk;
  if (kd_set) opt.kernel_delta = kd;
  if (!plot.empty()) opt.plot = plot;
  if (!output_dir.empty()) opt.output_dir = output_dir;

  const psqm::RunOutcome out = psqm::run_command(opt);
  print_summary(out);
  return out.exit_code;
}
