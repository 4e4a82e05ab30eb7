#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "psqm/numeric.hpp"

namespace psqm {

/// Doubles are written with 17 significant digits so that reading them
/// back reproduces the exact bit pattern.
std::string format_double(double v);

struct OutputFileRecord {
  std::string kind;
  std::string path;      // relative to the run directory
  std::string checksum;  // "fnv1a64:<hex>" over the file bytes
};

struct InvariantRecord {
  std::string name;
  double value = 0.0;      // measured residual / deviation
  double tolerance = 0.0;  // the bound it was held to
  bool pass = false;
  bool diagnostic = false;  // reported, not asserted; never fails a run
};

struct ResultManifest {
  std::string command;
  std::string config_path;
  std::vector<OutputFileRecord> outputs;
  std::vector<InvariantRecord> invariants;
  bool pass = true;  // all non-diagnostic invariants passed
};

/// Minimal deterministic CSV writer: "\n" line ends, 17-digit numbers,
/// byte-identical output for identical inputs.
class CsvFile {
 public:
  CsvFile(const std::filesystem::path& dir, const std::string& name,
          const std::string& header);
  void row(const std::vector<std::string>& cells);
  /// Flushes, closes and returns the record (path relative to dir).
  OutputFileRecord close(const std::string& kind);

 private:
  std::filesystem::path path_;
  std::string name_;
  std::string body_;
};

void write_manifest(const ResultManifest& manifest,
                    const std::filesystem::path& dir);

}  // namespace psqm
