// Artifact plumbing: CSV emission, JSON serialization, run manifests and
// small parsing helpers shared by the library and the CLI.
#pragma once

#include "crucispec/eigensolve.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace crucispec::io {

using nlohmann::json;

// "1/64" -> 0.015625; plain decimals pass through.
double parse_rational(const std::string &text);

// Locale-independent full-precision formatting (shortest round-trip).
std::string format_double(double v);

// Writes rows as CSV with a header line; every field formatted via
// format_double for numeric entries.
struct CsvWriter {
  explicit CsvWriter(const std::filesystem::path &path,
                     const std::vector<std::string> &header);
  ~CsvWriter();
  CsvWriter(const CsvWriter &) = delete;
  CsvWriter &operator=(const CsvWriter &) = delete;
  void row(const std::vector<std::string> &fields);
  void row_numeric(const std::vector<double> &values);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

json to_json(const SpectrumSlice &slice);
SpectrumSlice spectrum_from_json(const json &j);

// FNV-1a over the canonical (sorted-key) JSON dump; keys run configs and
// cache entries.
std::uint64_t config_hash(const json &config);

struct RunManifest {
  std::uint64_t config_hash = 0;
  std::string tool_version;
  json config;
  json timings_ms;                 // stage -> milliseconds
  std::vector<std::string> inputs;  // cached artifacts consumed
  std::vector<std::string> outputs; // files written

  json to_json() const;
  void write(const std::filesystem::path &path) const;
};

} // namespace crucispec::io
