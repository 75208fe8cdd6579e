// crucispec CLI: planar / section / sweep / modes / trials / certify /
// solve3d / report / plot subcommands over the core library, with manifest
// emission, planar-result caching and deterministic artifacts.
#include "crucispec/geometry.hpp"
#include "crucispec/grid.hpp"
#include "crucispec/io.hpp"
#include "crucispec/modes1d.hpp"
#include "crucispec/planar.hpp"
#include "crucispec/trial.hpp"
#include "crucispec/waveguide3d.hpp"

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace crucispec;
using io::json;

namespace {

constexpr const char *kVersion = "crucispec 0.1.0";

// exit codes: 0 ok, 2 config, 3 resource, 4 convergence/accuracy,
// 5 consistency (includes an empty 3D count)
enum ExitCode { kOk = 0, kConfig = 2, kResource = 3, kConvergence = 4, kConsistency = 5 };

struct Ctx {
  fs::path out = ".";
  fs::path cache;      // empty -> no cache
  bool dry = false;
  int threads = 0;
  json config;         // resolved per-command config, hashed into the manifest
  io::RunManifest man;
  std::chrono::steady_clock::time_point t0;
};

double stage_ms(Ctx &ctx) {
  const auto now = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(now - ctx.t0).count();
  ctx.t0 = now;
  return ms;
}

void write_json(Ctx &ctx, const std::string &name, const json &j) {
  const fs::path p = ctx.out / name;
  std::ofstream f(p);
  f << j.dump(2) << "\n";
  ctx.man.outputs.push_back(p.string());
}

void finish(Ctx &ctx, const std::string &command) {
  ctx.man.tool_version = kVersion;
  ctx.man.config = ctx.config;
  ctx.man.config_hash = io::config_hash(ctx.config);
  ctx.man.write(ctx.out / (command + ".manifest.json"));
}

CrossSectionProfile profile_of(const std::string &kind, double H) {
  return profile_from_kind(kind, H); // throws DomainError on bad kind
}

json planar_to_json(const PlanarCrossSolution &s) {
  return json{{"lambda", s.lambda},
              {"lambda_error", s.lambda_error},
              {"second_eigenvalue", s.second_eigenvalue},
              {"L", s.L},
              {"spacing", s.spacing},
              {"decay_rate_observed", s.decay_rate_observed},
              {"sym_deviation", s.sym_deviation},
              {"tail_coeff", s.tail_coeff},
              {"moment_g", s.moment_g},
              {"moment_g_error", s.moment_g_error},
              {"n", s.n},
              {"u", s.u}};
}

PlanarCrossSolution planar_from_json(const json &j) {
  PlanarCrossSolution s;
  s.lambda = j.at("lambda");
  s.lambda_error = j.at("lambda_error");
  s.second_eigenvalue = j.at("second_eigenvalue");
  s.L = j.at("L");
  s.spacing = j.at("spacing");
  s.decay_rate_observed = j.at("decay_rate_observed");
  s.sym_deviation = j.at("sym_deviation");
  s.tail_coeff = j.at("tail_coeff");
  s.moment_g = j.at("moment_g");
  s.moment_g_error = j.at("moment_g_error");
  s.n = j.at("n");
  s.u = j.at("u").get<std::vector<double>>();
  return s;
}

// Planar solve with cache lookup keyed by the (L, spacing) config hash.
PlanarCrossSolution get_planar(Ctx &ctx, double L, double spacing) {
  const json key{{"stage", "planar"}, {"L", L}, {"spacing", spacing}};
  const std::uint64_t h = io::config_hash(key);
  char name[64];
  std::snprintf(name, sizeof(name), "planar_%016llx.json",
                static_cast<unsigned long long>(h));
  const fs::path cached = ctx.cache.empty() ? fs::path{} : ctx.cache / name;
  if (!cached.empty() && fs::exists(cached)) {
    std::ifstream f(cached);
    json j;
    f >> j;
    ctx.man.inputs.push_back(cached.string());
    ctx.man.timings_ms["planar_cache_load"] = stage_ms(ctx);
    return planar_from_json(j);
  }
  auto sol = solve_planar_cross(L, spacing);
  ctx.man.timings_ms["planar_solve"] = stage_ms(ctx);
  if (!cached.empty()) {
    fs::create_directories(ctx.cache);
    std::ofstream f(cached);
    f << planar_to_json(sol).dump() << "\n";
    ctx.man.inputs.push_back(cached.string());
  }
  return sol;
}

// --dry-run plan line for a grid: nodes and rough matvec memory.
void plan_grid(const char *label, int dims, const std::array<AxisSpec, 3> &axes,
               const InsidePredicate &inside) {
  const Grid g = build_grid(dims, axes, inside);
  const double mem_mb =
      static_cast<double>(g.size) * (2.0 * dims * 16.0 + 8.0 * 6.0) / 1.0e6;
  std::printf("  %-24s %10lld nodes  ~%.0f MB operator+workspace\n", label,
              static_cast<long long>(g.size), mem_mb);
}

void plan_section(const CrossSectionProfile &profile, double spacing, bool half_z) {
  for (int r = 0; r < 3; ++r) {
    const double hy = spacing * (4 >> r);
    const int az = std::max(1, static_cast<int>(std::floor(profile.H / 20.0)));
    std::array<AxisSpec, 3> axes{};
    axes[0] = AxisSpec::symmetric(hy, 0.5, Fold::Even);
    axes[1] = AxisSpec::symmetric(az * hy, 0.5 * profile.H,
                                  half_z ? Fold::Odd : Fold::Even);
    auto inside = [&profile](const std::array<double, 3> &x) {
      return profile.section_contains(x[0], x[1]);
    };
    char label[64];
    std::snprintf(label, sizeof(label), "section hy=%g", hy);
    plan_grid(label, 2, axes, inside);
  }
}

int cmd_planar(Ctx &ctx, double L, double spacing) {
  if (ctx.dry) {
    std::printf("plan: planar cross, L=%g, grids {%g, %g, %g}\n", L, 4 * spacing,
                2 * spacing, spacing);
    for (int r = 0; r < 3; ++r) {
      const double h = spacing * (4 >> r);
      std::array<AxisSpec, 3> axes{};
      axes[0] = AxisSpec::symmetric(h, L, Fold::Even);
      axes[1] = AxisSpec::symmetric(h, L, Fold::Even);
      auto inside = [L](const std::array<double, 3> &x) {
        return (std::abs(x[0]) < 0.5 || std::abs(x[1]) < 0.5) &&
               std::abs(x[0]) < L && std::abs(x[1]) < L;
      };
      char label[64];
      std::snprintf(label, sizeof(label), "planar h=%g", h);
      plan_grid(label, 2, axes, inside);
    }
    return kOk;
  }
  auto sol = get_planar(ctx, L, spacing);
  write_json(ctx, "planar.json", planar_to_json(sol));
  {
    io::CsvWriter csv(ctx.out / "u_pi.csv", {"x1", "x2", "value"});
    for (int j = -sol.n; j <= sol.n; ++j)
      for (int i = -sol.n; i <= sol.n; ++i)
        csv.row_numeric({i * sol.spacing, j * sol.spacing,
                         sol.u[static_cast<size_t>(j + sol.n) * (2 * sol.n + 1) +
                               (i + sol.n)]});
    ctx.man.outputs.push_back((ctx.out / "u_pi.csv").string());
  }
  ctx.man.timings_ms["emit"] = stage_ms(ctx);
  std::printf("Lambda_Pi = %.7f +- %.2g  (second: %.5f, decay %.4f, G = %.6f)\n",
              sol.lambda, sol.lambda_error, sol.second_eigenvalue,
              sol.decay_rate_observed, sol.moment_g);
  finish(ctx, "planar");
  return kOk;
}

int cmd_section(Ctx &ctx, const std::string &kind, double H, double spacing,
                bool half_z) {
  auto profile = profile_of(kind, H);
  if (ctx.dry) {
    std::printf("plan: section %s H=%g spacing=%g half_z=%d\n", kind.c_str(), H,
                spacing, half_z ? 1 : 0);
    plan_section(profile, spacing, half_z);
    return kOk;
  }
  auto res = solve_cross_section(profile, spacing, half_z);
  ctx.man.timings_ms["section"] = stage_ms(ctx);
  write_json(ctx, "section.json",
             json{{"kind", kind},
                  {"H", H},
                  {"half_z", half_z},
                  {"lambda_dagger", res.lambda_dagger},
                  {"error", res.error},
                  {"mu_dagger", res.mu_dagger},
                  {"asymptotic_prediction", res.asymptotic_prediction},
                  {"alpha", res.alpha}});
  std::printf("lambda_dagger^H = %.7f +- %.2g  (asymptote %.7f)\n",
              res.lambda_dagger, res.error, res.asymptotic_prediction);
  finish(ctx, "section");
  return kOk;
}

int cmd_sweep(Ctx &ctx, const std::string &kind, const std::vector<double> &Hs,
              double spacing) {
  auto check = profile_of(kind, Hs.empty() ? 1.0 : Hs.front());
  if (ctx.dry) {
    std::printf("plan: threshold sweep %s over %zu H values, spacing=%g\n",
                kind.c_str(), Hs.size(), spacing);
    for (double H : Hs)
      plan_section(profile_of(kind, H), spacing, false);
    return kOk;
  }
  (void)check;
  io::CsvWriter csv(ctx.out / "threshold_sweep.csv",
                    {"kind", "H", "lambda_dagger", "prediction", "residual_scaled"});
  for (double H : Hs) {
    auto res = solve_cross_section(profile_of(kind, H), spacing);
    // asymptote residual in prefactor units: (gap - mu H^-a) H^a
    const double scaled =
        (res.lambda_dagger - res.asymptotic_prediction) * std::pow(H, res.alpha);
    csv.row({kind, io::format_double(H), io::format_double(res.lambda_dagger),
             io::format_double(res.asymptotic_prediction),
             io::format_double(scaled)});
    std::printf("%s H=%g lambda_dagger=%.7f prediction=%.7f scaled_resid=%.4f\n",
                kind.c_str(), H, res.lambda_dagger, res.asymptotic_prediction,
                scaled);
  }
  ctx.man.outputs.push_back((ctx.out / "threshold_sweep.csv").string());
  ctx.man.timings_ms["sweep"] = stage_ms(ctx);
  finish(ctx, "sweep");
  return kOk;
}

int cmd_modes(Ctx &ctx, const std::string &kind, const std::string &lambda_arg,
              int n, double L, double spacing) {
  const Potential1D pot =
      kind == "rhombus" ? Potential1D::AbsLinear : Potential1D::Quadratic;
  double lambda;
  if (lambda_arg == "from-planar")
    lambda = get_planar(ctx, L, spacing).lambda;
  else
    lambda = io::parse_rational(lambda_arg);
  if (ctx.dry) {
    std::printf("plan: %d modes of the %s model at Lambda=%.6f (1D, h=1/256)\n", n,
                pot == Potential1D::AbsLinear ? "abs-linear" : "quadratic", lambda);
    return kOk;
  }
  auto fam = pot == Potential1D::AbsLinear ? solve_abs_linear(lambda, n)
                                           : solve_quadratic(lambda, n);
  ctx.man.timings_ms["modes"] = stage_ms(ctx);
  {
    io::CsvWriter csv(ctx.out / "mode_eigenvalues.csv",
                      {"kind", "Lambda", "n", "parity", "mu_n"});
    for (const auto &m : fam.modes)
      csv.row({kind, io::format_double(lambda), std::to_string(m.index),
               m.parity == Parity::Even ? "even" : "odd",
               io::format_double(m.mu)});
    ctx.man.outputs.push_back((ctx.out / "mode_eigenvalues.csv").string());
  }
  for (size_t i = 0; i < fam.modes.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "mode_%zu.csv", i);
    io::CsvWriter csv(ctx.out / name, {"zeta", "w"});
    const auto &m = fam.modes[i];
    for (std::int64_t s = -(static_cast<std::int64_t>(m.samples.size()) - 1);
         s < static_cast<std::int64_t>(m.samples.size()); ++s)
      csv.row_numeric({s * fam.h, fam.value(static_cast<int>(i), s * fam.h)});
    ctx.man.outputs.push_back((ctx.out / name).string());
  }
  for (const auto &m : fam.modes)
    std::printf("mu_%d = %.8f (%s)\n", m.index, m.mu,
                m.parity == Parity::Even ? "even" : "odd");
  finish(ctx, "modes");
  return kOk;
}

int cmd_trials(Ctx &ctx, const std::string &kind, const std::vector<double> &Hs,
               int N, double L, double spacing) {
  if (ctx.dry) {
    std::printf("plan: Gram pairs for %s, N=%d, %zu H values (1D quadratures "
                "after one planar solve)\n",
                kind.c_str(), N, Hs.size());
    return kOk;
  }
  auto planar = get_planar(ctx, L, spacing);
  io::CsvWriter csv(ctx.out / "gram_deviations.csv",
                    {"kind", "H", "N", "dev_m", "dev_k", "J2_max"});
  for (double H : Hs) {
    auto fam = make_trial_family(profile_of(kind, H), planar, N);
    auto g = assemble_gram(fam);
    csv.row({kind, io::format_double(H), std::to_string(N),
             io::format_double(g.dev_m), io::format_double(g.dev_k),
             io::format_double(g.J2.cwiseAbs().maxCoeff())});
    std::printf("%s H=%g dev_m=%.4e dev_k=%.4e\n", kind.c_str(), H, g.dev_m,
                g.dev_k);
  }
  ctx.man.outputs.push_back((ctx.out / "gram_deviations.csv").string());
  ctx.man.timings_ms["trials"] = stage_ms(ctx);
  finish(ctx, "trials");
  return kOk;
}

int cmd_certify(Ctx &ctx, const std::string &kind, const std::vector<double> &Hs,
                int N, double L, double spacing, double section_spacing) {
  if (ctx.dry) {
    std::printf("plan: theorem-1 sweep %s N=%d over %zu H values "
                "(planar solve + per-H section thresholds)\n",
                kind.c_str(), N, Hs.size());
    for (double H : Hs)
      plan_section(profile_of(kind, H), section_spacing, false);
    return kOk;
  }
  auto planar = get_planar(ctx, L, spacing);
  const ProfileKind pk = profile_of(kind, Hs.empty() ? 1.0 : Hs.front()).kind;
  auto sweep = theorem1_sweep(pk, planar, N, Hs, section_spacing);
  ctx.man.timings_ms["certify"] = stage_ms(ctx);
  io::CsvWriter csv(ctx.out / "theorem1_sweep.csv",
                    {"profile", "H", "n", "theta_n", "predicted_LamH",
                     "lambda_dagger_numeric", "lambda_dagger_asymptotic",
                     "certified"});
  for (const auto &row : sweep.rows)
    for (size_t n = 0; n < row.theta.size(); ++n)
      csv.row({kind, io::format_double(row.H), std::to_string(n + 1),
               io::format_double(row.theta[n]),
               io::format_double(row.predicted[n]),
               io::format_double(row.lambda_dagger_numeric),
               io::format_double(row.lambda_dagger_asymptotic),
               std::to_string(row.certified)});
  ctx.man.outputs.push_back((ctx.out / "theorem1_sweep.csv").string());
  write_json(ctx, "certify.json",
             json{{"kind", kind},
                  {"N", N},
                  {"empirical_H_N", sweep.empirical_H_N},
                  {"empirical_C_N", sweep.empirical_C_N}});
  for (const auto &row : sweep.rows)
    std::printf("H=%g certified=%d lambda_dagger=%.6f theta_1=%.6f\n", row.H,
                row.certified, row.lambda_dagger_numeric,
                row.theta.empty() ? 0.0 : row.theta.front());
  std::printf("empirical H_N = %g, C_N = %.4f\n", sweep.empirical_H_N,
              sweep.empirical_C_N);
  finish(ctx, "certify");
  return kOk;
}

void print_report(const DiscreteSpectrumReport &rep) {
  std::printf("H=%g  cutoff lambda_dagger^H = %.6f  (FD-matched per sector)\n",
              rep.profile.H, rep.cutoff_continuum);
  std::printf("%-28s %-10s %-44s\n", "sector", "cutoff_fd", "eigenvalues");
  for (const auto &s : rep.sectors) {
    std::printf("%-28s %-10.5f", s.name.c_str(), s.cutoff_fd);
    for (double ev : s.slice.eigenvalues)
      std::printf(" %.5f", ev);
    std::printf("  [%d below]\n", s.slice.converged_count_below_cutoff);
  }
  std::printf("discrete spectrum (%d certified):", rep.total_count);
  for (size_t i = 0; i < rep.eigenvalues.size(); ++i)
    std::printf(" %.5f", rep.eigenvalues[i]);
  std::printf("\nambiguous band:");
  for (double a : rep.ambiguous)
    std::printf(" %.5f", a);
  std::printf("\n");
}

int cmd_solve3d(Ctx &ctx, const std::string &kind, double H, double L,
                double spacing, int k) {
  auto profile = profile_of(kind, H);
  Solve3DOptions opts;
  opts.k = k;
  if (ctx.dry) {
    std::printf("plan: 3D report %s H=%g L=%g spacing=%g, 6 parity sectors x "
                "{fine, coarse}\n",
                kind.c_str(), H, L, spacing);
    const AxisParity par[2] = {AxisParity::Even, AxisParity::Odd};
    for (int pz = 0; pz < 2; ++pz) {
      CruciformDomain dom{profile, L,
                          SymmetrySector{AxisParity::Even, AxisParity::Even,
                                         par[pz]}};
      const int az = std::max(1, static_cast<int>(std::floor(H / 10.0)));
      std::array<AxisSpec, 3> axes{};
      axes[0] = AxisSpec::symmetric(spacing, L, Fold::Even);
      axes[1] = AxisSpec::symmetric(spacing, L, Fold::Even);
      axes[2] = AxisSpec::symmetric(az * spacing, 0.5 * H,
                                    pz == 0 ? Fold::Even : Fold::Odd);
      auto inside = [dom](const std::array<double, 3> &x) {
        return dom.contains(x);
      };
      plan_grid(pz == 0 ? "sector (E,E,E) fine" : "sector (E,E,O) fine", 3, axes,
                inside);
    }
    return kOk;
  }
  auto rep = solve_3d_report(profile, L, spacing, opts);
  ctx.man.timings_ms["solve3d"] = stage_ms(ctx);
  write_json(ctx, "solve3d.json", rep.to_json());
  print_report(rep);
  finish(ctx, "solve3d");
  if (rep.na480_flag) {
    std::fprintf(stderr,
                 "solve3d: consistency flag, no certified eigenvalue below the "
                 "cutoff (kind=%s, H=%g)\n",
                 kind.c_str(), H);
    return kConsistency;
  }
  return kOk;
}

int cmd_report(Ctx &ctx, const std::string &artifact) {
  std::ifstream f(artifact);
  if (!f)
    throw DomainError("report: missing artifact " + artifact);
  json j;
  f >> j;
  ctx.man.inputs.push_back(artifact);
  std::printf("H=%g kind=%s  cutoff=%.6f  count=%d\n", j.at("H").get<double>(),
              j.at("kind").get<std::string>().c_str(),
              j.at("cutoff_continuum").get<double>(),
              j.at("total_count").get<int>());
  std::printf("%-28s %-10s %s\n", "sector", "cutoff_fd", "eigenvalues");
  for (const auto &s : j.at("sectors")) {
    std::printf("%-28s %-10.5f", s.at("sector").get<std::string>().c_str(),
                s.at("cutoff_fd").get<double>());
    for (const auto &ev : s.at("eigenvalues"))
      std::printf(" %.5f", ev.get<double>());
    std::printf("  [%d below]\n", s.at("count_below_cutoff").get<int>());
  }
  std::printf("discrete:");
  for (const auto &ev : j.at("eigenvalues"))
    std::printf(" %.5f", ev.get<double>());
  std::printf("\n");
  finish(ctx, "report");
  return kOk;
}

// Whitespace-separated plot files with fitted-slope header comments.
int cmd_plot(Ctx &ctx, const std::string &artifact, const std::string &style) {
  if (!fs::exists(artifact))
    throw DomainError("plot: missing artifact " + artifact);
  if (style == "gram") {
    // gram_deviations.csv -> log-log columns with fitted slopes in the header
    std::ifstream f(artifact);
    std::string line;
    std::getline(f, line); // header
    std::vector<double> H, dm, dk;
    while (std::getline(f, line)) {
      double h, a, b, j2;
      int n;
      char kind[32];
      if (std::sscanf(line.c_str(), "%31[^,],%lf,%d,%lf,%lf,%lf", kind, &h, &n,
                      &a, &b, &j2) == 6) {
        H.push_back(h);
        dm.push_back(a);
        dk.push_back(b);
      }
    }
    const auto slope = [](const std::vector<double> &x,
                          const std::vector<double> &y) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      const int n = static_cast<int>(x.size());
      for (int i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
      }
      return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    const fs::path p = ctx.out / "gram_deviations.dat";
    std::ofstream o(p);
    o << "# H dev_m dev_k (log-log; fitted slopes " << io::format_double(slope(H, dm))
      << " " << io::format_double(slope(H, dk)) << ")\n";
    for (size_t i = 0; i < H.size(); ++i)
      o << io::format_double(H[i]) << " " << io::format_double(dm[i]) << " "
        << io::format_double(dk[i]) << "\n";
    ctx.man.outputs.push_back(p.string());
  } else if (style == "heatmap") {
    // planar.json -> (x1, x2, value) triples
    std::ifstream f(artifact);
    json j;
    f >> j;
    auto sol = planar_from_json(j);
    const fs::path p = ctx.out / "u_pi_heatmap.dat";
    std::ofstream o(p);
    o << "# x1 x2 U_Pi\n";
    for (int jj = -sol.n; jj <= sol.n; ++jj)
      for (int i = -sol.n; i <= sol.n; ++i)
        o << io::format_double(i * sol.spacing) << " "
          << io::format_double(jj * sol.spacing) << " "
          << io::format_double(
                 sol.u[static_cast<size_t>(jj + sol.n) * (2 * sol.n + 1) +
                       (i + sol.n)])
          << "\n";
    ctx.man.outputs.push_back(p.string());
  } else if (style == "ladder") {
    // solve3d.json -> (H, n, lambda_n, cutoff) ladder
    std::ifstream f(artifact);
    json j;
    f >> j;
    const fs::path p = ctx.out / "spectrum_ladder.dat";
    std::ofstream o(p);
    o << "# H n lambda_n cutoff\n";
    int n = 1;
    for (const auto &ev : j.at("eigenvalues"))
      o << io::format_double(j.at("H").get<double>()) << " " << n++ << " "
        << io::format_double(ev.get<double>()) << " "
        << io::format_double(j.at("cutoff_continuum").get<double>()) << "\n";
    ctx.man.outputs.push_back(p.string());
  } else {
    throw DomainError("plot: unknown style " + style);
  }
  ctx.man.inputs.push_back(artifact);
  finish(ctx, "plot");
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Spectral toolkit for cruciform quantum waveguides"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "TOML config file merged under CLI overrides");
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::string cache_dir;
  if (const char *env = std::getenv("CRUCISPEC_CACHE_DIR"))
    cache_dir = env;
  bool dry = false;
  int threads = 0;
  std::uint64_t seed = 0; // reserved; solvers carry their own fixed seeds
  app.add_option("--out", out_dir, "Output directory for artifacts");
  app.add_option("--cache-dir", cache_dir,
                 "Planar-result cache directory (default $CRUCISPEC_CACHE_DIR)");
  app.add_flag("--dry-run", dry, "Print the resolved plan without computing");
  app.add_option("--threads", threads, "OpenMP worker threads (0 = runtime default)");
  app.add_option("--seed", seed, "Reserved; seeds are pinned for determinism");

  std::string kind = "rhombus", lambda_arg = "from-planar", artifact, style = "gram";
  std::string spacing_s = "1/64", section_spacing_s = "1/64";
  std::vector<std::string> H_s;
  double L = 6.0, H = 50.0;
  int N = 3, n_modes = 5, k3d = 4;
  bool half_z = false;

  auto *planar_cmd = app.add_subcommand("planar", "Planar cross bound state");
  planar_cmd->add_option("--L", L, "Arm half-length");
  planar_cmd->add_option("--spacing", spacing_s, "Finest grid spacing (rational ok)");

  auto *section_cmd = app.add_subcommand("section", "Cross-section threshold");
  section_cmd->add_option("--kind", kind, "rhombus | ellipse");
  section_cmd->add_option("--H", H, "Elongation");
  section_cmd->add_option("--spacing", spacing_s, "Base y-spacing");
  section_cmd->add_flag("--half-z", half_z, "Dirichlet plane at z=0 (Q^+)");

  auto *sweep_cmd = app.add_subcommand("sweep", "Threshold sweep over H");
  sweep_cmd->add_option("--kind", kind, "rhombus | ellipse");
  sweep_cmd->add_option("--H", H_s, "H list")->required();
  sweep_cmd->add_option("--spacing", spacing_s, "Base y-spacing");

  auto *modes_cmd = app.add_subcommand("modes", "1D model eigenpairs");
  modes_cmd->add_option("--kind", kind, "rhombus (abs-linear) | ellipse (quadratic)");
  modes_cmd->add_option("--lambda", lambda_arg, "Coupling, or 'from-planar'");
  modes_cmd->add_option("--n", n_modes, "Number of modes");
  modes_cmd->add_option("--L", L, "Planar arm half-length (from-planar)");
  modes_cmd->add_option("--spacing", spacing_s, "Planar spacing (from-planar)");

  auto *trials_cmd = app.add_subcommand("trials", "Trial-family Gram deviations");
  trials_cmd->add_option("--kind", kind, "rhombus | ellipse");
  trials_cmd->add_option("--H", H_s, "H list")->required();
  trials_cmd->add_option("--n", N, "Family size N");
  trials_cmd->add_option("--L", L, "Planar arm half-length");
  trials_cmd->add_option("--spacing", spacing_s, "Planar spacing");

  auto *certify_cmd = app.add_subcommand("certify", "Theorem-1 max-min sweep");
  certify_cmd->add_option("--kind", kind, "rhombus | ellipse");
  certify_cmd->add_option("--H", H_s, "H list")->required();
  certify_cmd->add_option("--n", N, "Family size N");
  certify_cmd->add_option("--L", L, "Planar arm half-length");
  certify_cmd->add_option("--spacing", spacing_s, "Planar spacing");
  certify_cmd->add_option("--section-spacing", section_spacing_s,
                          "Threshold solve spacing");

  auto *solve3d_cmd = app.add_subcommand("solve3d", "3D sector spectra + counting");
  solve3d_cmd->add_option("--kind", kind, "rhombus | ellipse");
  solve3d_cmd->add_option("--H", H, "Elongation");
  solve3d_cmd->add_option("--L", L, "Arm half-length");
  solve3d_cmd->add_option("--spacing", spacing_s, "Transverse spacing");
  solve3d_cmd->add_option("--k", k3d, "Eigenpairs per sector");

  auto *report_cmd = app.add_subcommand("report", "Human-readable 3D report table");
  report_cmd->add_option("--artifact", artifact, "solve3d.json path")->required();

  auto *plot_cmd = app.add_subcommand("plot", "Plot-ready whitespace columns");
  plot_cmd->add_option("--artifact", artifact, "Input artifact")->required();
  plot_cmd->add_option("--style", style, "gram | heatmap | ladder");

  // let global options (--out, --dry-run, ...) appear after the subcommand
  for (auto *sub : app.get_subcommands(nullptr))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

#ifdef _OPENMP
  if (threads > 0)
    omp_set_num_threads(threads);
#endif

  Ctx ctx;
  ctx.out = out_dir;
  ctx.cache = cache_dir;
  ctx.dry = dry;
  ctx.threads = threads;
  ctx.t0 = std::chrono::steady_clock::now();

  const auto resolve = [](const std::string &s) { return io::parse_rational(s); };

  try {
    fs::create_directories(ctx.out);
    const double spacing = resolve(spacing_s);
    std::vector<double> Hs;
    for (const auto &s : H_s)
      Hs.push_back(resolve(s));
    if (spacing <= 0)
      throw DomainError("config: spacing must be positive");

    if (planar_cmd->parsed()) {
      ctx.config = json{{"command", "planar"}, {"L", L}, {"spacing", spacing}};
      return cmd_planar(ctx, L, spacing);
    }
    if (section_cmd->parsed()) {
      ctx.config = json{{"command", "section"}, {"kind", kind}, {"H", H},
                        {"spacing", spacing}, {"half_z", half_z}};
      return cmd_section(ctx, kind, H, spacing, half_z);
    }
    if (sweep_cmd->parsed()) {
      ctx.config = json{{"command", "sweep"}, {"kind", kind}, {"H", Hs},
                        {"spacing", spacing}};
      return cmd_sweep(ctx, kind, Hs, spacing);
    }
    if (modes_cmd->parsed()) {
      ctx.config = json{{"command", "modes"}, {"kind", kind},
                        {"lambda", lambda_arg}, {"n", n_modes}};
      return cmd_modes(ctx, kind, lambda_arg, n_modes, L, spacing);
    }
    if (trials_cmd->parsed()) {
      ctx.config = json{{"command", "trials"}, {"kind", kind}, {"H", Hs},
                        {"N", N}, {"L", L}, {"spacing", spacing}};
      return cmd_trials(ctx, kind, Hs, N, L, spacing);
    }
    if (certify_cmd->parsed()) {
      const double ss = resolve(section_spacing_s);
      ctx.config = json{{"command", "certify"}, {"kind", kind}, {"H", Hs},
                        {"N", N}, {"L", L}, {"spacing", spacing},
                        {"section_spacing", ss}};
      return cmd_certify(ctx, kind, Hs, N, L, spacing, ss);
    }
    if (solve3d_cmd->parsed()) {
      ctx.config = json{{"command", "solve3d"}, {"kind", kind}, {"H", H},
                        {"L", L}, {"spacing", spacing}, {"k", k3d}};
      return cmd_solve3d(ctx, kind, H, L, spacing, k3d);
    }
    if (report_cmd->parsed()) {
      ctx.config = json{{"command", "report"}, {"artifact", artifact}};
      return cmd_report(ctx, artifact);
    }
    if (plot_cmd->parsed()) {
      ctx.config = json{{"command", "plot"}, {"artifact", artifact},
                        {"style", style}};
      return cmd_plot(ctx, artifact, style);
    }
  } catch (const ResourceError &e) {
    std::fprintf(stderr, "resource error: %s\n", e.what());
    return kResource;
  } catch (const ConvergenceError &e) {
    std::fprintf(stderr, "convergence error: %s\n", e.what());
    return kConvergence;
  } catch (const AccuracyError &e) {
    std::fprintf(stderr, "accuracy error: %s\n", e.what());
    return kConvergence;
  } catch (const ConsistencyError &e) {
    std::fprintf(stderr, "consistency error: %s\n", e.what());
    return kConsistency;
  } catch (const DomainError &e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const std::invalid_argument &e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const nlohmann::json::exception &e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  }
  return kConfig;
}
