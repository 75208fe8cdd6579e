#include "crucispec/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace crucispec {

CrossSectionProfile CrossSectionProfile::rhombus(double H) {
  if (H <= 0.0)
    throw std::invalid_argument("profile: H must be positive");
  CrossSectionProfile p;
  p.kind = ProfileKind::Rhombus;
  p.H = H;
  p.alpha = 2.0 / 3.0;
  return p;
}

CrossSectionProfile CrossSectionProfile::ellipse(double H) {
  if (H <= 0.0)
    throw std::invalid_argument("profile: H must be positive");
  CrossSectionProfile p;
  p.kind = ProfileKind::Ellipse;
  p.H = H;
  p.alpha = 0.5;
  return p;
}

CrossSectionProfile
CrossSectionProfile::custom(double H, std::vector<std::array<double, 2>> table,
                            double alpha) {
  if (H <= 0.0)
    throw std::invalid_argument("profile: H must be positive");
  if (table.size() < 2)
    throw std::invalid_argument("profile: width table needs >= 2 knots");
  for (size_t i = 0; i < table.size(); ++i) {
    if (table[i][1] < 0.0 || table[i][1] > 1.0)
      throw std::invalid_argument("profile: width values must lie in [0, 1]");
    if (i > 0 && table[i][0] <= table[i - 1][0])
      throw std::invalid_argument("profile: width table abscissae must increase");
  }
  CrossSectionProfile p;
  p.kind = ProfileKind::CustomWidth;
  p.H = H;
  p.width_table = std::move(table);
  p.alpha = alpha;
  return p;
}

double CrossSectionProfile::width(double tau) const {
  if (std::abs(tau) > 0.5 * H * (1.0 + 1e-12))
    throw DomainError("width: |tau| exceeds H/2");
  switch (kind) {
  case ProfileKind::Rhombus:
    return std::max(0.0, 1.0 - (2.0 / H) * std::abs(tau));
  case ProfileKind::Ellipse:
    return std::sqrt(std::max(0.0, 1.0 - 4.0 * tau * tau / (H * H)));
  case ProfileKind::CustomWidth: {
    const double s = std::clamp(2.0 * tau / H, width_table.front()[0],
                                width_table.back()[0]);
    auto it = std::lower_bound(
        width_table.begin() + 1, width_table.end(), s,
        [](const std::array<double, 2> &knot, double v) { return knot[0] < v; });
    const auto &b = *it;
    const auto &a = *(it - 1);
    const double t = (s - a[0]) / (b[0] - a[0]);
    return a[1] + t * (b[1] - a[1]);
  }
  }
  return 0.0;
}

double CrossSectionProfile::width_derivative(double tau) const {
  switch (kind) {
  case ProfileKind::Rhombus:
    return tau >= 0.0 ? -2.0 / H : 2.0 / H;
  case ProfileKind::Ellipse: {
    const double w = width(tau);
    if (w <= 0.0)
      return 0.0;
    return -4.0 * tau / (H * H * w);
  }
  case ProfileKind::CustomWidth: {
    const double eps = 1e-7 * H;
    const double lo = std::max(-0.5 * H, tau - eps);
    const double hi = std::min(0.5 * H, tau + eps);
    return (width(hi) - width(lo)) / (hi - lo);
  }
  }
  return 0.0;
}

bool CrossSectionProfile::section_contains(double y, double tau) const {
  if (std::abs(tau) >= 0.5 * H)
    return false;
  return std::abs(y) < 0.5 * width(tau);
}

bool CrossSectionProfile::unique_central_maximum() const {
  if (kind != ProfileKind::CustomWidth)
    return true;
  double best = -1.0;
  double best_s = 0.0;
  bool unique = true;
  for (int i = 0; i <= 2000; ++i) {
    const double s = -1.0 + i / 1000.0;
    const double w = width(0.5 * H * s);
    if (w > best + 1e-12) {
      best = w;
      best_s = s;
      unique = true;
    } else if (w > best - 1e-12 && std::abs(s - best_s) > 2e-3) {
      unique = false;
    }
  }
  return unique && std::abs(best_s) < 2e-3 && std::abs(best - 1.0) < 1e-9;
}

double width(const CrossSectionProfile &profile, double tau) {
  return profile.width(tau);
}

bool CruciformDomain::contains(const std::array<double, 3> &x) const {
  const double L = arm_halflength;
  if (std::abs(x[0]) > L || std::abs(x[1]) > L)
    return false;
  const auto sector_ok = [](AxisParity p, double v) {
    // Odd sectors carry the artificial Dirichlet plane at v = 0; the open
    // half v > 0 represents the sector.
    return p == AxisParity::None || v > 0.0 || (p == AxisParity::Even && v == 0.0);
  };
  if (!sector_ok(sector.x1, x[0]) || !sector_ok(sector.x2, x[1]) ||
      !sector_ok(sector.z, x[2]))
    return false;
  return profile.section_contains(x[1], x[2]) ||
         profile.section_contains(x[0], x[2]);
}

bool contains(const CruciformDomain &domain, const std::array<double, 3> &x) {
  return domain.contains(x);
}

CrossSectionProfile profile_from_kind(const std::string &kind, double H) {
  if (kind == "rhombus")
    return CrossSectionProfile::rhombus(H);
  if (kind == "ellipse")
    return CrossSectionProfile::ellipse(H);
  throw std::invalid_argument("unknown profile kind: " + kind);
}

} // namespace crucispec
