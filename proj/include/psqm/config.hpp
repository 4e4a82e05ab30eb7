#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "psqm/internal_space.hpp"
#include "psqm/schrodinger.hpp"

namespace psqm {

struct GridConfig {
  double x0 = 0.0;
  double dx = 0.0;
  std::size_t n = 0;
};

struct HamiltonianConfig {
  double mass = 1.0;
  PotentialSpec potential = ZeroPotential{};
};

struct DensityOutput {};
struct MarginalsOutput {};
struct MomentsOutput {
  std::vector<std::pair<int, int>> pairs;  // (n, m), n+m >= 1, each <= 8
};
struct KernelOutput {
  std::vector<double> deltas;
};
struct SpectrumOutput {
  std::size_t k = 1;
};
struct ConstantsScanOutput {
  double d = 1e-10;
  std::vector<double> h_factors = {1.0, 0.5, 0.25};  // strictly descending
};
using OutputRequest =
    std::variant<DensityOutput, MarginalsOutput, MomentsOutput, KernelOutput,
                 SpectrumOutput, ConstantsScanOutput>;

/// Named tolerances the verify suite asserts at. Config may override any
/// of them under "tolerances"; unknown names are rejected.
struct Tolerances {
  double normalization = 1e-10;
  double unitarity = 1e-12;
  double round_trip = 1e-12;
  double derivative = 1e-10;
  double symmetry = 1e-14;
  double kernel_equivalence = 1e-10;
  double kernel_hermiticity = 1e-12;
  double factorization = 1e-12;
  double moment_relative = 1e-8;
  double moment_absolute = 1e-10;
  double independence = 1e-10;
  double ordering = 1e-12;
  double convention = 1e-12;
  double hermiticity = 1e-10;
  double orthonormality = 1e-8;
  double eigen_residual = 1e-8;
  double energy_consistency = 5e-4;
  double convergence_order = 0.5;  // |Richardson ratio - 4| bound
  double derivation_split = 1e-8;
  double constants_round_trip = 1e-14;
  double constants_scaling = 1e-12;
  double analyticity = 1e-8;
};

struct ExperimentConfig {
  std::optional<GridConfig> grid;
  std::optional<StateSpec> state;
  Convention convention = Convention::plain;
  double hbar = 1.0;
  std::optional<HamiltonianConfig> hamiltonian;
  std::vector<OutputRequest> outputs;
  std::filesystem::path output_dir = "out";
  Tolerances tolerances;
};

/// Loads and validates a JSON config file. Unknown keys are fatal and the
/// diagnostic names the offending key by its dotted path. Distinct errors
/// for a missing file (io_error), a parse failure and a validation failure
/// (config_error).
ExperimentConfig load_config(const std::filesystem::path& path);

/// Same validation applied to an in-memory JSON document; `overrides` are
/// dotted-path assignments ("grid.n=2048") applied before validation.
ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides);

Grid1D grid_from_config(const GridConfig& gc);

}  // namespace psqm
