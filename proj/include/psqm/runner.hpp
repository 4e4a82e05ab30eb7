#pragma once

#include <iosfwd>
#include <optional>

#include "psqm/config.hpp"
#include "psqm/phase_space.hpp"
#include "psqm/results.hpp"

namespace psqm {

enum class CommandKind {
  state,
  phase_space,
  moments,
  eigensolve,
  kernel,
  constants,
  verify,
};

struct CommandOptions {
  CommandKind kind = CommandKind::verify;
  std::filesystem::path config_path;
  std::vector<std::string> set_overrides;  // dotted-path key=value
  std::optional<int> moment_n;
  std::optional<int> moment_m;
  std::optional<std::size_t> eigen_k;
  std::optional<double> kernel_delta;
  std::optional<std::string> plot;  // "heatmap" | "line"
  std::optional<std::filesystem::path> output_dir;  // beats env + config
};

/// Exit codes: 0 success, 1 invariant failure, 2 config error, 3 I/O error.
struct RunOutcome {
  int exit_code = 0;
  ResultManifest manifest;
  std::string error;  // set when the run died before producing a manifest
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_invariant_failure = 1;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_io_error = 3;

RunOutcome run_command(const CommandOptions& options);

/// Gnuplot-ready plot data. Heatmaps come out as "x p F" triples with a
/// blank line between consecutive x rows; lines as two columns.
void emit_plot_heatmap(std::ostream& os, const PhaseSpaceDensity& F);
void emit_plot_line(std::ostream& os,
                    const std::vector<std::pair<double, double>>& series);

}  // namespace psqm
