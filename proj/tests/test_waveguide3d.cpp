#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crucispec/waveguide3d.hpp"

#include <cmath>

using namespace crucispec;

namespace {

SectorResult synthetic_sector(std::string name, double cutoff, double cutoff_c,
                              std::vector<double> evs, int weight = 1) {
  SectorResult s;
  s.name = std::move(name);
  s.weight = weight;
  s.cutoff_fd = cutoff;
  s.cutoff_fd_coarse = cutoff_c;
  s.slice.eigenvalues = evs;
  s.slice.residuals.assign(evs.size(), 1e-9);
  s.coarse = std::move(evs); // pretend perfect grid convergence
  return s;
}

} // namespace

TEST_CASE("counting certifies below the global cutoff only") {
  DiscreteSpectrumReport rep;
  rep.profile = CrossSectionProfile::ellipse(1.0);
  // global essential threshold is min(10, 56) = 10; the 50 in the second
  // sector is embedded, not discrete
  rep.sectors.push_back(synthetic_sector("a", 10.0, 10.0, {8.0, 12.0}));
  rep.sectors.push_back(synthetic_sector("b", 56.0, 56.0, {50.0, 60.0}));
  const int n = count_discrete(rep);
  CHECK(n == 1);
  CHECK(rep.eigenvalues == std::vector<double>{8.0});
  CHECK(rep.parity_labels[0] == "a");
  CHECK(!rep.na480_flag);
}

TEST_CASE("weighted sectors count twice and merge sorted") {
  DiscreteSpectrumReport rep;
  rep.profile = CrossSectionProfile::ellipse(1.0);
  rep.sectors.push_back(synthetic_sector("single", 10.0, 10.0, {7.0}));
  rep.sectors.push_back(synthetic_sector("pair", 10.0, 10.0, {6.0}, 2));
  CHECK(count_discrete(rep) == 3);
  CHECK(rep.eigenvalues == std::vector<double>{6.0, 6.0, 7.0});
}

TEST_CASE("margin band flags ambiguity instead of certifying") {
  DiscreteSpectrumReport rep;
  rep.profile = CrossSectionProfile::ellipse(1.0);
  auto s = synthetic_sector("a", 10.0, 10.0, {9.999999999, 8.0});
  // pretend the coarse grid saw a very different gap -> wide margin
  s.coarse = {9.7, 8.3};
  s.cutoff_fd_coarse = 10.0;
  rep.sectors.push_back(std::move(s));
  const int n = count_discrete(rep);
  CHECK(n == 1); // 8.0 is safely below even with the wide margin
  CHECK(rep.ambiguous.size() == 1);
  CHECK(rep.ambiguous[0] == doctest::Approx(9.999999999));
}

TEST_CASE("empty count raises the consistency flag") {
  DiscreteSpectrumReport rep;
  rep.profile = CrossSectionProfile::ellipse(1.0);
  rep.sectors.push_back(synthetic_sector("a", 10.0, 10.0, {10.5, 11.0}));
  CHECK(count_discrete(rep) == 0);
  CHECK(rep.na480_flag);
}

TEST_CASE("recounting is idempotent") {
  DiscreteSpectrumReport rep;
  rep.profile = CrossSectionProfile::ellipse(1.0);
  rep.sectors.push_back(synthetic_sector("a", 10.0, 10.0, {8.0, 9.0}));
  count_discrete(rep);
  const auto evs = rep.eigenvalues;
  count_discrete(rep);
  CHECK(rep.eigenvalues == evs);
}

TEST_CASE("sector solve on a tiny cruciform") {
  // coarse circular-section cruciform; the fully even sector carries the
  // ground state, which the full-domain solve must reproduce
  CruciformDomain dom{CrossSectionProfile::ellipse(1.0), 2.0,
                      SymmetrySector{AxisParity::Even, AxisParity::Even,
                                     AxisParity::Even}};
  Solve3DOptions opts;
  opts.k = 1;
  opts.tol = 1e-7;
  const auto sec = solve_3d_sector(dom, 1.0 / 8.0, opts);
  CruciformDomain full{CrossSectionProfile::ellipse(1.0), 2.0,
                       SymmetrySector::full()};
  const auto whole = solve_3d_sector(full, 1.0 / 8.0, opts);
  CHECK(sec.eigenvalues[0] ==
        doctest::Approx(whole.eigenvalues[0]).epsilon(1e-8));
}

TEST_CASE("report json carries the counting fields") {
  DiscreteSpectrumReport rep;
  rep.profile = CrossSectionProfile::rhombus(2.0);
  rep.L = 6.0;
  rep.sectors.push_back(synthetic_sector("a", 10.0, 10.0, {8.0}));
  count_discrete(rep);
  const auto j = rep.to_json();
  CHECK(j.at("kind") == "rhombus");
  CHECK(j.at("total_count") == 1);
  CHECK(j.at("sectors").size() == 1);
  CHECK(j.at("eigenvalues")[0] == 8.0);
}
