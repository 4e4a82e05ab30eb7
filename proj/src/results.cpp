#include "psqm/results.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "psqm/errors.hpp"

namespace psqm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvFile::CsvFile(const std::filesystem::path& dir, const std::string& name,
                 const std::string& header)
    : path_(dir / name), name_(name) {
  body_ = header;
  body_ += '\n';
}

void CsvFile::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
}

OutputFileRecord CsvFile::close(const std::string& kind) {
  std::ofstream out(path_, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write " + path_.string());
  out.write(body_.data(), static_cast<std::streamsize>(body_.size()));
  out.flush();
  if (!out) throw io_error("write failed for " + path_.string());
  return OutputFileRecord{kind, name_, "fnv1a64:" + fnv1a64_hex(body_)};
}

void write_manifest(const ResultManifest& manifest,
                    const std::filesystem::path& dir) {
  nlohmann::ordered_json doc;
  doc["command"] = manifest.command;
  doc["config"] = manifest.config_path;
  doc["pass"] = manifest.pass;
  doc["outputs"] = nlohmann::ordered_json::array();
  for (const auto& o : manifest.outputs)
    doc["outputs"].push_back({{"kind", o.kind},
                              {"path", o.path},
                              {"checksum", o.checksum}});
  doc["invariants"] = nlohmann::ordered_json::array();
  for (const auto& r : manifest.invariants)
    doc["invariants"].push_back({{"name", r.name},
                                 {"value", r.value},
                                 {"tolerance", r.tolerance},
                                 {"pass", r.pass},
                                 {"diagnostic", r.diagnostic}});
  const auto path = dir / "manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write " + path.string());
  const std::string text = doc.dump(2) + "\n";
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw io_error("write failed for " + path.string());
}

}  // namespace psqm
