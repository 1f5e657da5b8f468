#pragma once
// Command implementations behind the `disclination` executable. Each command
// returns a JSON report, a human summary and an exit code; the executable
// only parses flags and routes output.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "disclination/ansatz.hpp"
#include "disclination/expression.hpp"
#include "disclination/nfield.hpp"
#include "disclination/profile.hpp"
#include "disclination/sampling.hpp"
#include "disclination/so3.hpp"
#include "disclination/transport.hpp"

namespace disclination::cli {

using nlohmann::json;

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kCheckFailed = 2;
inline constexpr int kIo = 3;
}  // namespace exit_code

enum class ProfileKind { Zero, ExpDecay, Gauss, Rational, Custom };

/// Command-line description of a profile. `rate` is the decay rate for the
/// exponential and Gaussian presets and 1/scale for the rational preset
/// amplitude / (1 + rate r).
struct ProfileSpec {
  ProfileKind kind = ProfileKind::ExpDecay;
  double amplitude = std::numbers::pi / 2.0;
  double rate = 1.0;
  std::string expression;
  double f_at_infinity = 0.0;
  std::optional<double> f_at_zero;

  ProfileFunction build() const {
    switch (kind) {
      case ProfileKind::Zero: return ProfileFunction::zero();
      case ProfileKind::ExpDecay: return ProfileFunction::exp_decay(amplitude, rate);
      case ProfileKind::Gauss: return ProfileFunction::gaussian(amplitude, rate);
      case ProfileKind::Rational:
        if (!(rate > 0.0)) throw PreconditionError("rational profile needs rate > 0");
        return ProfileFunction::rational(amplitude, 1.0 / rate);
      case ProfileKind::Custom:
        if (expression.empty()) throw expr::ParseError("custom profile needs --expr");
        return expr::make_profile(expression, f_at_infinity, f_at_zero);
    }
    throw PreconditionError("unknown profile kind");
  }

  json to_json() const {
    static constexpr const char* names[] = {"zero", "exp", "gauss", "rational", "custom"};
    json j{{"kind", names[static_cast<int>(kind)]}};
    if (kind == ProfileKind::Custom) {
      j["expr"] = expression;
      j["f_inf"] = f_at_infinity;
    } else if (kind != ProfileKind::Zero) {
      j["amplitude"] = amplitude;
      j["rate"] = rate;
    }
    return j;
  }
};

struct CommandResult {
  int exit_code = exit_code::kOk;
  json report;
  std::string summary;
};

inline json to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

inline json to_json(const Mat3& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < 3; ++i) rows.push_back(to_json(m.row(i)));
  return rows;
}

namespace detail {

inline Vec3 random_point(std::mt19937_64& rng, double r_lo, double r_hi) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(r_lo, r_hi);
  Vec3 d{g(rng), g(rng), g(rng)};
  while (norm(d) < 1e-3) d = {g(rng), g(rng), g(rng)};
  return d / norm(d) * u(rng);
}

struct Check {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;

  bool pass() const { return std::isfinite(max_residual) && max_residual <= tolerance; }
};

// Residuals with K' and V' taken by central differences of K and V values,
// so a profile whose declared derivative is wrong shows up here.
inline double fd_ode_residual(const FlatProfiles& p, double r) {
  const double h = 1e-5 * std::max(1.0, r);
  const double kp = (p.K(r + h) - p.K(r - h)) / (2.0 * h);
  const double vp = (p.V(r + h) - p.V(r - h)) / (2.0 * h);
  const double k = p.K(r), v = p.V(r), u = p.U(r);
  const double rho1 = kp + r * v * (v + u);
  const double rho2 = -kp + (k * k - 1.0) / r - r * v * u;
  const double rho3 = r * vp - u - (k - 1.0) * (v + u);
  return std::max({std::fabs(rho1), std::fabs(rho2), std::fabs(rho3)});
}

}  // namespace detail

/// Runs the flatness, ODE, unit-norm, covariant-derivative and transport
/// checks on `npoints` seeded random points. `profile_json` only labels the
/// report.
inline CommandResult cmd_verify(const ProfileFunction& f, const json& profile_json, unsigned seed,
                                int npoints) {
  npoints = std::max(1, npoints);
  std::mt19937_64 rng(seed);
  std::vector<detail::Check> checks;

  const ProfileCheck pc = check_profile(f);
  checks.push_back({"profile_derivative", pc.derivative_mismatch, kDerivativeTol});
  checks.push_back({"profile_tail", pc.tail_residual, kTailTol});

  const FlatProfiles upper = theorem_solution(f, SignBranch::Upper);
  const FlatProfiles lower = theorem_solution(f, SignBranch::Lower);

  detail::Check flat{"flatness_analytic", 0.0, 1e-10};
  detail::Check ode{"ode_residuals_analytic", 0.0, 1e-12};
  detail::Check ode_fd{"ode_residuals", 0.0, 1e-7};
  for (int k = 0; k < npoints; ++k) {
    const Vec3 x = detail::random_point(rng, 0.1, 50.0);
    const double r = norm(x);
    for (const FlatProfiles* p : {&upper, &lower}) {
      flat.max_residual = std::max(flat.max_residual,
                                   eval_curvature_K_form(p->K, p->V, p->U, x).max_abs());
      ode.max_residual = std::max(ode.max_residual, ode_residuals(p->K, p->V, p->U, r).max_abs());
      ode_fd.max_residual = std::max(ode_fd.max_residual, detail::fd_ode_residual(*p, r));
    }
  }
  checks.push_back(flat);

  detail::Check flat_fd{"flatness_fd", 0.0, 1e-6};
  const ConnectionField conn = flat_connection_field(f);
  for (int k = 0; k < std::min(npoints, 50); ++k) {
    const Vec3 x = detail::random_point(rng, 0.1, 50.0);
    flat_fd.max_residual =
        std::max(flat_fd.max_residual, finite_difference_curvature(conn, x, 1e-5).max_abs());
  }
  checks.push_back(flat_fd);
  checks.push_back(ode);
  checks.push_back(ode_fd);

  detail::Check unit{"unit_norm", 0.0, 1e-12};
  detail::Check nabla{"covariant_derivative", 0.0, 1e-6};
  for (int k = 0; k < std::min(npoints, 50); ++k) {
    const Vec3 x = detail::random_point(rng, 0.5, 5.0);
    unit.max_residual =
        std::max(unit.max_residual, std::fabs(norm(transported_director(f, kNorthPole, x)) - 1.0));
    nabla.max_residual =
        std::max(nabla.max_residual, max_abs(covariant_derivative_n(f, kNorthPole, x, 1e-5)));
  }
  checks.push_back(unit);
  checks.push_back(nabla);

  detail::Check transport{"transport_oracle", 0.0, 1e-8};
  try {
    for (int k = 0; k < std::min(npoints, 3); ++k) {
      const Vec3 x = detail::random_point(rng, 0.5, 5.0);
      const TransportResult tr = transport_from_infinity(f, x);
      const Mat3 closed = radial_transport_closed_form(f, x).inverse().matrix();
      transport.max_residual =
          std::max(transport.max_residual, frobenius(tr.S_inv.matrix() - closed));
    }
  } catch (const IntegrationError&) {
    transport.max_residual = std::numeric_limits<double>::infinity();
  }
  checks.push_back(transport);

  CommandResult out;
  json arr = json::array();
  std::ostringstream summary;
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass();
    arr.push_back({{"check_name", c.name},
                   {"max_residual", c.max_residual},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass()}});
    summary << (c.pass() ? "PASS " : "FAIL ") << c.name << "  max=" << c.max_residual
            << "  tol=" << c.tolerance << '\n';
  }
  out.report = {{"command", "verify"},
                {"profile", profile_json},
                {"seed", seed},
                {"npoints", npoints},
                {"checks", std::move(arr)},
                {"pass", all}};
  out.summary = summary.str();
  out.exit_code = all ? exit_code::kOk : exit_code::kCheckFailed;
  return out;
}

inline CommandResult cmd_verify(const ProfileSpec& spec, unsigned seed, int npoints) {
  return cmd_verify(spec.build(), spec.to_json(), seed, npoints);
}

enum class OutputFormat { Csv, Json };

inline CommandResult cmd_sample(const ProfileSpec& spec, const SampleGridSpec& grid,
                                DirectorField::Construction construction,
                                const std::filesystem::path& path, OutputFormat format) {
  CommandResult out;
  const DirectorField field(spec.build(), construction);
  FieldSampleSet set;
  try {
    set = sample_field(field, grid);
  } catch (const std::runtime_error& e) {
    out.exit_code = exit_code::kCheckFailed;
    out.report = {{"command", "sample"}, {"error", e.what()}};
    out.summary = std::string("sampling refused: ") + e.what() + '\n';
    return out;
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    out.exit_code = exit_code::kIo;
    out.report = {{"command", "sample"}, {"error", "cannot open " + path.string()}};
    out.summary = "cannot open output file " + path.string() + '\n';
    return out;
  }
  if (format == OutputFormat::Csv) {
    write_csv(os, set);
  } else {
    json meta{{"profile", spec.to_json()},
              {"grid", grid_to_json(grid)},
              {"construction", to_string(construction)},
              {"version", kFormatVersion}};
    os << samples_to_json(set, std::move(meta)).dump(1) << '\n';
  }
  os.close();
  if (!os) {
    out.exit_code = exit_code::kIo;
    out.report = {{"command", "sample"}, {"error", "write failed for " + path.string()}};
    out.summary = "write failed for " + path.string() + '\n';
    return out;
  }

  double max_curv = 0.0;
  for (const auto& r : set.records) max_curv = std::max(max_curv, r.curv_residual);
  out.report = {{"command", "sample"},
                {"profile", spec.to_json()},
                {"grid", grid_to_json(grid)},
                {"construction", to_string(construction)},
                {"records", set.records.size()},
                {"max_curv_residual", max_curv},
                {"out", path.string()}};
  out.summary = "wrote " + std::to_string(set.records.size()) + " records to " + path.string() + '\n';
  return out;
}

struct PathSpec {
  enum class Kind { Ray, Polyline };
  Kind kind = Kind::Ray;
  /// Polyline vertices after the start point; the last one is the end.
  std::vector<Vec3> vertices;
};

/// Ray: transport from infinity to `from`, compared with the closed form.
/// Polyline: transport from `from` (initialized with the closed form there)
/// through the vertices; the end value is compared with the closed form at
/// the last vertex, which it must match when the connection is flat.
inline CommandResult cmd_transport(const ProfileSpec& spec, const Vec3& from,
                                   const PathSpec& path) {
  const ProfileFunction f = spec.build();
  CommandResult out;
  json report{{"command", "transport"}, {"profile", spec.to_json()}, {"from", to_json(from)}};
  try {
    TransportResult tr;
    Vec3 end = from;
    if (path.kind == PathSpec::Kind::Ray) {
      report["path"] = "ray";
      report["r_far"] = norm(from) < kFarRadius ? kFarRadius : 2.0 * norm(from);
      tr = transport_from_infinity(f, from);
    } else {
      if (path.vertices.empty()) throw PreconditionError("polyline path needs --via vertices");
      std::vector<Vec3> verts{from};
      verts.insert(verts.end(), path.vertices.begin(), path.vertices.end());
      json vj = json::array();
      for (const auto& v : verts) vj.push_back(to_json(v));
      report["path"] = "polyline";
      report["vertices"] = std::move(vj);
      end = verts.back();
      tr = integrate_transport(flat_connection_field(f), Curve::polyline(verts),
                               radial_transport_closed_form(f, from).inverse());
    }
    const Mat3 closed = radial_transport_closed_form(f, end).inverse().matrix();
    const double diff = frobenius(tr.S_inv.matrix() - closed);
    report["to"] = to_json(end);
    report["integrated_S_inv"] = to_json(tr.S_inv.matrix());
    report["closed_form_S_inv"] = to_json(closed);
    report["frobenius_diff"] = diff;
    report["error_estimate"] = tr.error_estimate;
    report["steps"] = tr.steps;
    report["max_projection_correction"] = tr.max_projection_correction;
    out.summary = "transport: steps=" + std::to_string(tr.steps) +
                  " diff_vs_closed_form=" + format_double(diff) + '\n';
  } catch (const IntegrationError& e) {
    report["error"] = e.what();
    report["best_estimate"] = e.best_estimate();
    report["steps"] = e.steps();
    out.exit_code = exit_code::kCheckFailed;
    out.summary = std::string("integration failed: ") + e.what() + '\n';
  }
  out.report = std::move(report);
  return out;
}

inline CommandResult cmd_classify(const ProfileSpec& spec) {
  const ProfileFunction f = spec.build();
  const OriginClassification c = classify_origin(f);
  const double spread = directional_spread(f);
  CommandResult out;
  json report{{"command", "classify"},
              {"profile", spec.to_json()},
              {"f_at_zero", f.f_at_zero()},
              {"directional_spread", spread}};
  if (c.kind == OriginClassification::Kind::Continuous) {
    report["classification"] = "Continuous";
    report["k"] = c.k;
    out.summary = "Continuous(k=" + std::to_string(c.k) + ")";
    if (spread > kClassifyTol)
      out.summary += "  note: directional limits still differ by up to " +
                     format_double(spread) + " rad";
  } else {
    report["classification"] = "EssentialSingularity";
    json w = json::array();
    for (const auto& wit : *c.witnesses)
      w.push_back({{"direction", to_json(wit.direction)}, {"limit", to_json(wit.limit)}});
    report["witnesses"] = std::move(w);
    out.summary = "EssentialSingularity";
  }
  out.summary += '\n';
  out.report = std::move(report);
  return out;
}

}  // namespace disclination::cli
