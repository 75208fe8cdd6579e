#include "crucispec/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace crucispec::io {

double parse_rational(const std::string &text) {
  const auto slash = text.find('/');
  const auto to_double = [](const std::string &s) {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos != s.size())
      throw std::invalid_argument("parse_rational: trailing junk in '" + s + "'");
    return v;
  };
  if (slash == std::string::npos)
    return to_double(text);
  const double num = to_double(text.substr(0, slash));
  const double den = to_double(text.substr(slash + 1));
  if (den == 0.0)
    throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
  return num / den;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct CsvWriter::Impl {
  std::ofstream out;
  size_t columns = 0;
};

CsvWriter::CsvWriter(const std::filesystem::path &path,
                     const std::vector<std::string> &header)
    : impl_(std::make_unique<Impl>()) {
  impl_->out.open(path);
  if (!impl_->out)
    throw std::runtime_error("CsvWriter: cannot open " + path.string());
  impl_->columns = header.size();
  row(header);
}

CsvWriter::~CsvWriter() = default;

void CsvWriter::row(const std::vector<std::string> &fields) {
  if (fields.size() != impl_->columns)
    throw std::invalid_argument("CsvWriter: column count mismatch");
  for (size_t i = 0; i < fields.size(); ++i)
    impl_->out << fields[i] << (i + 1 == fields.size() ? '\n' : ',');
}

void CsvWriter::row_numeric(const std::vector<double> &values) {
  std::vector<std::string> fields;
  fields.reserve(values.size());
  for (double v : values)
    fields.push_back(format_double(v));
  row(fields);
}

json to_json(const SpectrumSlice &slice) {
  return json{{"eigenvalues", slice.eigenvalues},
              {"residuals", slice.residuals},
              {"cutoff", slice.cutoff_used},
              {"count_below_cutoff", slice.converged_count_below_cutoff}};
}

SpectrumSlice spectrum_from_json(const json &j) {
  SpectrumSlice s;
  s.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  s.residuals = j.at("residuals").get<std::vector<double>>();
  s.cutoff_used = j.at("cutoff").get<double>();
  s.converged_count_below_cutoff = j.at("count_below_cutoff").get<int>();
  return s;
}

std::uint64_t config_hash(const json &config) {
  // nlohmann::json objects iterate in sorted key order, so dump() is canonical
  const std::string dump = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json RunManifest::to_json() const {
  return json{{"config_hash", config_hash}, {"tool_version", tool_version},
              {"config", config},           {"timings_ms", timings_ms},
              {"inputs", inputs},           {"outputs", outputs}};
}

void RunManifest::write(const std::filesystem::path &path) const {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("RunManifest: cannot open " + path.string());
  out << to_json().dump(2) << '\n';
}

} // namespace crucispec::io
