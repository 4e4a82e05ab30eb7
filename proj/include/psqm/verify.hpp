#pragma once

#include "psqm/config.hpp"
#include "psqm/results.hpp"

namespace psqm {

/// Runs every library invariant against the configured grid/state (and
/// hamiltonian, when present) at the configured tolerances. This is the
/// engine behind the `verify` subcommand.
std::vector<InvariantRecord> run_invariant_suite(const ExperimentConfig& cfg);

}  // namespace psqm
