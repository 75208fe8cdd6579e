// Cross-section profiles, the width function h, and the 3D cruciform domain.
#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crucispec {

enum class ProfileKind { Rhombus, Ellipse, CustomWidth };

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The cross-section omega^H = {(y, tau): |tau| < H/2, |y| < h(tau)/2} where
// h is the full width:
//   Rhombus: h(tau) = 1 - (2/H)|tau|
//   Ellipse: h(tau) = sqrt(1 - 4 tau^2 / H^2)
//   CustomWidth: piecewise-linear table in the normalized coordinate
//                s = 2 tau / H in [-1, 1], values in [0, 1]
struct CrossSectionProfile {
  ProfileKind kind = ProfileKind::Rhombus;
  double H = 1.0;
  // CustomWidth only: (s, h) knots with s increasing over [-1, 1]
  std::vector<std::array<double, 2>> width_table;
  // exponent of the local width behavior at the maximum; fixed per kind
  // (2/3 rhombus, 1/2 ellipse), caller-declared for CustomWidth
  double alpha = 2.0 / 3.0;

  static CrossSectionProfile rhombus(double H);
  static CrossSectionProfile ellipse(double H);
  static CrossSectionProfile custom(double H,
                                    std::vector<std::array<double, 2>> table,
                                    double alpha);

  // Full width h(tau); domain error outside |tau| <= H/2.
  double width(double tau) const;
  // Derivative h'(tau) (one-sided value on the rhombus ridge).
  double width_derivative(double tau) const;
  // Membership test for omega^H, no range restriction.
  bool section_contains(double y, double tau) const;
  // Whether max h = 1 is attained uniquely at tau = 0 (always true for the
  // built-in kinds; scanned for CustomWidth).
  bool unique_central_maximum() const;
};

double width(const CrossSectionProfile &profile, double tau);

// Reflection parity sectors.  Even keeps the symmetry plane with a Neumann-type
// fold, Odd imposes the artificial Dirichlet plane, None means no reduction.
enum class AxisParity { None, Even, Odd };

struct SymmetrySector {
  AxisParity x1 = AxisParity::None;
  AxisParity x2 = AxisParity::None;
  AxisParity z = AxisParity::None;

  static SymmetrySector full() { return {}; }
  static SymmetrySector even_z() {
    return {AxisParity::None, AxisParity::None, AxisParity::Even};
  }
  static SymmetrySector odd_z() {
    return {AxisParity::None, AxisParity::None, AxisParity::Odd};
  }
};

// Q^H truncated to |x1|, |x2| <= L.
struct CruciformDomain {
  CrossSectionProfile profile;
  double arm_halflength = 6.0;
  SymmetrySector sector;

  bool contains(const std::array<double, 3> &x) const;
};

bool contains(const CruciformDomain &domain, const std::array<double, 3> &x);

CrossSectionProfile profile_from_kind(const std::string &kind, double H);

} // namespace crucispec
