#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crucispec/geometry.hpp"

#include <cmath>

using namespace crucispec;

TEST_CASE("rhombus width function") {
  const auto p = CrossSectionProfile::rhombus(10.0);
  CHECK(p.width(0.0) == 1.0);
  CHECK(p.width(2.5) == doctest::Approx(0.5));
  CHECK(p.width(5.0) == doctest::Approx(0.0));
  CHECK(p.width(-2.5) == doctest::Approx(0.5));
  CHECK(p.width_derivative(1.0) == doctest::Approx(-0.2));
  CHECK(p.width_derivative(-1.0) == doctest::Approx(0.2));
  CHECK(p.alpha == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS((void)p.width(5.1), DomainError);
}

TEST_CASE("ellipse width function") {
  const auto p = CrossSectionProfile::ellipse(8.0);
  CHECK(p.width(0.0) == 1.0);
  CHECK(p.width(4.0) == doctest::Approx(0.0));
  CHECK(p.width(2.0) == doctest::Approx(std::sqrt(0.75)));
  CHECK(p.alpha == doctest::Approx(0.5));
  // h'(tau) = -4 tau / (H^2 h)
  const double t = 1.5, h = p.width(t);
  CHECK(p.width_derivative(t) == doctest::Approx(-4 * t / (64.0 * h)));
}

TEST_CASE("custom width table") {
  auto p = CrossSectionProfile::custom(
      6.0, {{-1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}}, 2.0 / 3.0);
  CHECK(p.width(0.0) == doctest::Approx(1.0));
  CHECK(p.width(1.5) == doctest::Approx(0.5)); // s = 0.5, linear ramp
  CHECK(p.unique_central_maximum());
  CHECK_THROWS_AS(CrossSectionProfile::custom(6.0, {{0.0, 1.0}}, 0.5),
                  std::invalid_argument);
}

TEST_CASE("section membership is strict") {
  const auto p = CrossSectionProfile::rhombus(4.0);
  CHECK(p.section_contains(0.0, 0.0));
  CHECK(p.section_contains(0.49, 0.0));
  CHECK(!p.section_contains(0.5, 0.0));  // wall
  CHECK(!p.section_contains(0.0, 2.0));  // tip
  CHECK(p.section_contains(0.2, 1.0));   // width 0.5 there
  CHECK(!p.section_contains(0.26, 1.0));
}

TEST_CASE("cruciform domain is the union of two arms") {
  CruciformDomain dom{CrossSectionProfile::ellipse(4.0), 6.0,
                      SymmetrySector::full()};
  CHECK(contains(dom, {3.0, 0.2, 0.3}));   // x1 arm
  CHECK(contains(dom, {0.2, -3.0, 0.3}));  // x2 arm
  CHECK(!contains(dom, {3.0, 3.0, 0.0}));  // outside both
  CHECK(!contains(dom, {6.5, 0.0, 0.0}));  // beyond truncation
  CHECK(!contains(dom, {3.0, 0.0, 2.0}));  // above the section
}

TEST_CASE("profile_from_kind") {
  CHECK(profile_from_kind("rhombus", 7.0).kind == ProfileKind::Rhombus);
  CHECK(profile_from_kind("ellipse", 7.0).kind == ProfileKind::Ellipse);
  CHECK_THROWS_AS(profile_from_kind("pentagon", 7.0), std::invalid_argument);
  CHECK_THROWS_AS(profile_from_kind("rhombus", -1.0), std::invalid_argument);
}
