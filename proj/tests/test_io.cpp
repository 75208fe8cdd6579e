#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crucispec/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace crucispec;
namespace fs = std::filesystem;

TEST_CASE("parse_rational") {
  CHECK(io::parse_rational("1/64") == doctest::Approx(0.015625));
  CHECK(io::parse_rational("3/8") == doctest::Approx(0.375));
  CHECK(io::parse_rational("0.25") == doctest::Approx(0.25));
  CHECK(io::parse_rational("200") == doctest::Approx(200.0));
  CHECK_THROWS(io::parse_rational("1/0"));
  CHECK_THROWS(io::parse_rational("abc"));
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 9.869604401089358, -2.5e-13, 0.0})
    CHECK(std::stod(io::format_double(v)) == v);
}

TEST_CASE("config_hash ignores key order, sees values") {
  const io::json a{{"x", 1}, {"y", 2.5}};
  const io::json b{{"y", 2.5}, {"x", 1}};
  const io::json c{{"x", 1}, {"y", 2.51}};
  CHECK(io::config_hash(a) == io::config_hash(b));
  CHECK(io::config_hash(a) != io::config_hash(c));
}

TEST_CASE("spectrum slice json round-trip") {
  SpectrumSlice s;
  s.eigenvalues = {1.5, 2.25};
  s.residuals = {1e-9, 3e-9};
  s.vectors = {{0.6, 0.8}, {0.8, -0.6}};
  s.cutoff_used = 9.87;
  s.converged_count_below_cutoff = 2;
  const auto t = io::spectrum_from_json(io::to_json(s));
  CHECK(t.eigenvalues == s.eigenvalues);
  CHECK(t.residuals == s.residuals);
  CHECK(t.vectors.empty()); // vectors are intentionally not serialized
  CHECK(t.cutoff_used == s.cutoff_used);
  CHECK(t.converged_count_below_cutoff == s.converged_count_below_cutoff);
}

TEST_CASE("csv writer output") {
  const fs::path p = fs::temp_directory_path() / "crucispec_test.csv";
  {
    io::CsvWriter csv(p, {"a", "b"});
    csv.row({"x", "1"});
    csv.row_numeric({0.5, 0.25});
  }
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == "a,b\nx,1\n0.5,0.25\n");
  fs::remove(p);
}

TEST_CASE("manifest write") {
  io::RunManifest m;
  m.tool_version = "test";
  m.config = io::json{{"command", "unit"}};
  m.config_hash = io::config_hash(m.config);
  m.outputs = {"a.csv"};
  const fs::path p = fs::temp_directory_path() / "crucispec_manifest.json";
  m.write(p);
  std::ifstream f(p);
  io::json j;
  f >> j;
  CHECK(j.at("tool_version") == "test");
  CHECK(j.at("outputs").size() == 1);
  fs::remove(p);
}
