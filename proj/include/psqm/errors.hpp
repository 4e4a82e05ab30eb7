#pragma once

#include <stdexcept>
#include <string>

namespace psqm {

/// Bad or inconsistent experiment configuration (maps to CLI exit 2).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem trouble while reading configs or writing results (exit 3).
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative solver ran out of iterations; message carries diagnostics.
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace psqm
