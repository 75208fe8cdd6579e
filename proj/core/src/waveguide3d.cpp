#include "crucispec/waveguide3d.hpp"

#include "crucispec/grid.hpp"

#include <algorithm>
#include <cmath>

namespace crucispec {

namespace {

Fold to_fold(AxisParity p) {
  switch (p) {
  case AxisParity::None:
    return Fold::None;
  case AxisParity::Even:
    return Fold::Even;
  case AxisParity::Odd:
    return Fold::Odd;
  }
  return Fold::None;
}

const char *parity_name(AxisParity p) {
  return p == AxisParity::None ? "none" : (p == AxisParity::Even ? "even" : "odd");
}

std::string sector_name(const SymmetrySector &s) {
  return std::string("x1:") + parity_name(s.x1) + " x2:" + parity_name(s.x2) +
         " z:" + parity_name(s.z);
}

int z_aniso_for(const CrossSectionProfile &profile, const Solve3DOptions &opts) {
  if (opts.z_aniso > 0)
    return opts.z_aniso;
  return std::max(1, static_cast<int>(std::floor(profile.H / 10.0)));
}

struct SectorGrid {
  Grid grid;
  InsidePredicate inside;
};

SectorGrid sector_grid(const CruciformDomain &domain, double h, double hz,
                       std::int64_t budget) {
  CruciformDomain base = domain;
  base.sector = SymmetrySector::full(); // parities live in the grid folds
  InsidePredicate inside = [base](const std::array<double, 3> &x) {
    return base.contains(x);
  };
  std::array<AxisSpec, 3> axes{};
  axes[0] = AxisSpec::symmetric(h, domain.arm_halflength, to_fold(domain.sector.x1));
  axes[1] = AxisSpec::symmetric(h, domain.arm_halflength, to_fold(domain.sector.x2));
  axes[2] = AxisSpec::symmetric(hz, 0.5 * domain.profile.H, to_fold(domain.sector.z));
  return {build_grid(3, axes, inside, budget), std::move(inside)};
}

// Fitted log-slope of the slab RMS of the eigenvector along the x1 arm.
double arm_decay_rate(const Grid &g, const std::vector<double> &v, double L) {
  const double h = g.axes[0].h;
  const int i_lo = static_cast<int>(std::lround((L - 3.0) / h));
  const int i_hi = static_cast<int>(std::lround((L - 1.0) / h));
  std::vector<double> rms(i_hi - i_lo + 1, 0.0);
  for (std::int64_t p = 0; p < g.size; ++p) {
    const int i = g.node[p][0];
    if (i >= i_lo && i <= i_hi)
      rms[i - i_lo] += v[p] * v[p];
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t j = 0; j < rms.size(); ++j) {
    if (rms[j] <= 0.0)
      continue;
    const double x = (i_lo + static_cast<int>(j)) * h;
    const double y = 0.5 * std::log(rms[j]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2)
    return 0.0;
  return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// Q^H sits inside Pi x (-H/2, H/2), so every eigenvalue is at least Lambda_Pi
// (about 6.51); shifting just below that keeps shift-invert effective when the
// trapped modes crowd the (Lambda_Pi, pi^2) window at large H.
constexpr double kShift3D = 6.0;

Fold effective_fold_y(AxisParity p1, AxisParity p2) {
  // continuum threshold of the sector: each arm contributes the cross-section
  // eigenvalue with the transverse parity; the lower (even) branch wins
  const auto is_even = [](AxisParity p) { return p != AxisParity::Odd; };
  return (is_even(p1) || is_even(p2)) ? Fold::Even : Fold::Odd;
}

} // namespace

SpectrumSlice solve_3d_sector(const CruciformDomain &domain, double spacing,
                              const Solve3DOptions &opts) {
  const double hz = z_aniso_for(domain.profile, opts) * spacing;
  auto sg = sector_grid(domain, spacing, hz, opts.node_budget);
  const auto op = assemble_laplacian(sg.grid);
  LanczosOptions lopts;
  lopts.keep_vectors = opts.keep_vectors;
  lopts.shift = kShift3D;
  return lanczos_smallest(*op, opts.k, opts.tol, opts.seed, lopts);
}

DiscreteSpectrumReport solve_3d_report(const CrossSectionProfile &profile,
                                       double L, double spacing,
                                       const Solve3DOptions &opts) {
  DiscreteSpectrumReport rep;
  rep.profile = profile;
  rep.L = L;
  rep.spacing_xy = spacing;
  const int az = z_aniso_for(profile, opts);
  rep.spacing_z = az * spacing;
  rep.cutoff_continuum =
      solve_cross_section(profile, std::min(spacing, 1.0 / 64.0)).lambda_dagger;

  struct XPair {
    AxisParity p1, p2;
    int weight;
  };
  const XPair xpairs[] = {{AxisParity::Even, AxisParity::Even, 1},
                          {AxisParity::Even, AxisParity::Odd, 2},
                          {AxisParity::Odd, AxisParity::Odd, 1}};
  const AxisParity zs[] = {AxisParity::Even, AxisParity::Odd};

  for (const auto &xp : xpairs)
    for (const auto pz : zs) {
      SectorResult sec;
      sec.sector = SymmetrySector{xp.p1, xp.p2, pz};
      sec.name = sector_name(sec.sector);
      sec.weight = xp.weight;

      CruciformDomain dom{profile, L, sec.sector};
      auto fine = sector_grid(dom, spacing, az * spacing, opts.node_budget);
      const auto op = assemble_laplacian(fine.grid);
      LanczosOptions lopts;
      lopts.keep_vectors = true;
      lopts.shift = kShift3D;
      sec.slice = lanczos_smallest(*op, opts.k, opts.tol, opts.seed, lopts);
      for (const auto &v : sec.slice.vectors)
        sec.decay_rates.push_back(arm_decay_rate(fine.grid, v, L));
      sec.slice.vectors.clear(); // not worth carrying in the report

      auto coarse = sector_grid(dom, 2.0 * spacing, 2.0 * az * spacing,
                                opts.node_budget);
      const auto op_c = assemble_laplacian(coarse.grid);
      LanczosOptions copts;
      copts.keep_vectors = false;
      copts.shift = kShift3D;
      sec.coarse = lanczos_smallest(*op_c, opts.k, opts.tol, opts.seed, copts)
                       .eigenvalues;

      const Fold fy = effective_fold_y(xp.p1, xp.p2);
      const Fold fz = to_fold(pz);
      sec.cutoff_fd =
          cross_section_fd_lambda(profile, spacing, az * spacing, fy, fz);
      sec.cutoff_fd_coarse = cross_section_fd_lambda(
          profile, 2.0 * spacing, 2.0 * az * spacing, fy, fz);
      sec.slice.cutoff_used = sec.cutoff_fd;
      rep.sectors.push_back(std::move(sec));
    }

  count_discrete(rep);
  return rep;
}

int count_discrete(DiscreteSpectrumReport &rep) {
  rep.eigenvalues.clear();
  rep.parity_labels.clear();
  rep.ambiguous.clear();
  // the essential spectrum starts at the minimum cutoff over all sectors; a
  // sector eigenvalue above that is embedded, not discrete
  double global_fd = rep.sectors.empty() ? 0.0 : rep.sectors[0].cutoff_fd;
  double global_fd_coarse =
      rep.sectors.empty() ? 0.0 : rep.sectors[0].cutoff_fd_coarse;
  for (const auto &sec : rep.sectors)
    if (sec.cutoff_fd < global_fd) {
      global_fd = sec.cutoff_fd;
      global_fd_coarse = sec.cutoff_fd_coarse;
    }
  std::vector<std::pair<double, std::string>> certified;
  for (auto &sec : rep.sectors) {
    int below = 0;
    for (size_t n = 0; n < sec.slice.eigenvalues.size(); ++n) {
      const double lam = sec.slice.eigenvalues[n];
      const double gap_s = sec.cutoff_fd - lam;
      const double gap_g = global_fd - lam;
      double shift_s = 0.0, shift_g = 0.0;
      if (n < sec.coarse.size()) {
        shift_s = std::abs((sec.cutoff_fd_coarse - sec.coarse[n]) - gap_s) / 3.0;
        shift_g = std::abs((global_fd_coarse - sec.coarse[n]) - gap_g) / 3.0;
      }
      const double margin_s = 3.0 * sec.slice.residuals[n] + shift_s;
      const double margin_g = 3.0 * sec.slice.residuals[n] + shift_g;
      if (gap_s > margin_s && gap_g > margin_g) {
        ++below;
        for (int w = 0; w < sec.weight; ++w)
          certified.emplace_back(lam, sec.name);
      } else if (gap_s > -margin_s && gap_g > -margin_g) {
        rep.ambiguous.push_back(lam);
      }
    }
    sec.slice.converged_count_below_cutoff = below;
  }
  std::sort(certified.begin(), certified.end());
  for (auto &[lam, name] : certified) {
    rep.eigenvalues.push_back(lam);
    rep.parity_labels.push_back(name);
  }
  rep.total_count = static_cast<int>(rep.eigenvalues.size());
  rep.na480_flag = rep.total_count < 1; // every valid geometry has >= 1
  return rep.total_count;
}

nlohmann::json DiscreteSpectrumReport::to_json() const {
  nlohmann::json sects = nlohmann::json::array();
  for (const auto &s : sectors)
    sects.push_back({{"sector", s.name},
                     {"weight", s.weight},
                     {"eigenvalues", s.slice.eigenvalues},
                     {"residuals", s.slice.residuals},
                     {"coarse_eigenvalues", s.coarse},
                     {"cutoff_fd", s.cutoff_fd},
                     {"cutoff_fd_coarse", s.cutoff_fd_coarse},
                     {"count_below_cutoff", s.slice.converged_count_below_cutoff},
                     {"decay_rates", s.decay_rates}});
  return nlohmann::json{
      {"H", profile.H},
      {"kind", profile.kind == ProfileKind::Rhombus
                   ? "rhombus"
                   : (profile.kind == ProfileKind::Ellipse ? "ellipse" : "custom")},
      {"L", L},
      {"spacing_xy", spacing_xy},
      {"spacing_z", spacing_z},
      {"cutoff_continuum", cutoff_continuum},
      {"sectors", sects},
      {"eigenvalues", eigenvalues},
      {"parity_labels", parity_labels},
      {"ambiguous", ambiguous},
      {"total_count", total_count},
      {"na480_flag", na480_flag}};
}

HalfguideResult halfguide_lambda_plus(const CruciformDomain &domain,
                                      double spacing,
                                      const Solve3DOptions &opts) {
  CruciformDomain dom = domain;
  dom.sector = SymmetrySector{AxisParity::Even, AxisParity::Even, AxisParity::Odd};
  const int az = z_aniso_for(dom.profile, opts);
  auto sg = sector_grid(dom, spacing, az * spacing, opts.node_budget);
  const auto op = assemble_laplacian(sg.grid);
  LanczosOptions lopts;
  lopts.keep_vectors = true;
  lopts.shift = kShift3D;
  const auto slice = lanczos_smallest(*op, 1, opts.tol, opts.seed, lopts);

  HalfguideResult res;
  res.lambda_plus_raw = slice.eigenvalues[0];
  res.lambda_plus = slice.eigenvalues[0] +
                    boundary_correction(sg.grid, sg.inside, slice.vectors[0]);
  res.residual = slice.residuals[0];
  const double hs = std::min(spacing, 1.0 / 64.0);
  res.lambda_dagger_q = solve_cross_section(dom.profile, hs, false).lambda_dagger;
  res.lambda_dagger_qplus =
      solve_cross_section(dom.profile, hs, true).lambda_dagger;
  return res;
}

} // namespace crucispec
