#pragma once
// Parallel transport of the SO(3) frame.
//
// Along a curve y(t) the inverse frame obeys the linear matrix ODE
//   d/dt S^{-1} = (ydot^mu A_mu) S^{-1},
// with (A_mu)_i^j = A_mu^k eps_{ki}^j. Transport always runs from the start
// of a curve to its end. A "ray from infinity" therefore starts at R_far x/r
// and ends at x; the part beyond R_far is supplied in closed form from the
// profile's declared f(infinity).

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "disclination/ansatz.hpp"
#include "disclination/errors.hpp"
#include "disclination/linalg.hpp"
#include "disclination/profile.hpp"
#include "disclination/so3.hpp"

namespace disclination {

inline constexpr double kIntegratorTol = 1e-9;
inline constexpr long kMaxSteps = 1L << 20;

/// One smooth piece of a curve, parameterized over [0, 1].
struct CurvePiece {
  std::function<Vec3(double)> point;
  std::function<Vec3(double)> velocity;
};

class Curve {
 public:
  enum class Kind { Ray, Polyline, Parametric };

  /// Inbound ray from R_far * x/|x| to x.
  static Curve ray_from_infinity(const Vec3& x, double r_far = kFarRadius,
                                 double r_min = kDefaultRMin) {
    const double r = norm(x);
    if (!(r >= r_min)) throw OriginExclusionError(r, r_min);
    if (!(r_far > r)) throw PreconditionError("ray truncation radius must exceed |x|");
    const Vec3 dir = x / r;
    CurvePiece p{[=](double t) { return dir * (r_far + t * (r - r_far)); },
                 [=](double) { return dir * (r - r_far); }};
    Curve c(Kind::Ray, {std::move(p)});
    c.validate(r_min);
    return c;
  }

  static Curve polyline(std::vector<Vec3> vertices, double r_min = kDefaultRMin) {
    if (vertices.size() < 2) throw PreconditionError("polyline needs at least two vertices");
    std::vector<CurvePiece> pieces;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
      const Vec3 a = vertices[i], b = vertices[i + 1];
      const double dist = segment_distance_to_origin(a, b);
      if (dist < r_min) throw OriginExclusionError(dist, r_min);
      pieces.push_back({[=](double t) { return a + (b - a) * t; },
                        [=](double) { return b - a; }});
    }
    Curve c(Kind::Polyline, std::move(pieces));
    c.validate(r_min);
    return c;
  }

  /// A smooth curve y(t), t in [0, 1], with its analytic velocity.
  static Curve parametric(std::function<Vec3(double)> point,
                          std::function<Vec3(double)> velocity, double r_min = kDefaultRMin) {
    Curve c(Kind::Parametric, {CurvePiece{std::move(point), std::move(velocity)}});
    c.validate(r_min);
    return c;
  }

  Kind kind() const { return kind_; }
  const std::vector<CurvePiece>& pieces() const { return pieces_; }
  Vec3 start() const { return pieces_.front().point(0.0); }
  Vec3 end() const { return pieces_.back().point(1.0); }

  /// Same trace traversed backwards.
  Curve reversed() const {
    std::vector<CurvePiece> rev;
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
      rev.push_back({[p = it->point](double t) { return p(1.0 - t); },
                     [v = it->velocity](double t) { return -v(1.0 - t); }});
    }
    return Curve(kind_, std::move(rev));
  }

  static double segment_distance_to_origin(const Vec3& a, const Vec3& b) {
    const Vec3 d = b - a;
    const double dd = dot(d, d);
    const double t = dd > 0.0 ? std::clamp(-dot(a, d) / dd, 0.0, 1.0) : 0.0;
    return norm(a + d * t);
  }

 private:
  Curve(Kind kind, std::vector<CurvePiece> pieces) : kind_(kind), pieces_(std::move(pieces)) {}

  // Origin avoidance on a dense sample and velocity/point consistency at five
  // parameters.
  void validate(double r_min) const {
    for (const auto& p : pieces_) {
      for (int s = 0; s <= 512; ++s) {
        const double r = norm(p.point(s / 512.0));
        if (!(r >= r_min)) throw OriginExclusionError(r, r_min);
      }
      for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double h = 1e-6;
        const Vec3 fd = (p.point(t + h) - p.point(t - h)) / (2.0 * h);
        const Vec3 v = p.velocity(t);
        if (max_abs(fd - v) > 1e-6 * std::max(1.0, max_abs(v)))
          throw PreconditionError("curve velocity is inconsistent with its points");
      }
    }
  }

  Kind kind_;
  std::vector<CurvePiece> pieces_;
};

struct TransportResult {
  RotationMatrix S_inv;
  long steps = 0;
  /// Step-doubling estimate: Frobenius difference of the N- and 2N-step
  /// solutions, summed over curve pieces.
  double error_estimate = 0.0;
  /// Largest per-step correction applied by the projection back to SO(3).
  double max_projection_correction = 0.0;
};

struct IntegratorOptions {
  double tolerance = kIntegratorTol;
  long initial_steps = 16;
  long max_steps = kMaxSteps;
};

/// S = exp(f^k eps_k) with f^k = (x^k/r) [f(inf) - f(r)].
inline RotationMatrix radial_transport_closed_form(const ProfileFunction& f, const Vec3& x,
                                                   double r_min = kDefaultRMin) {
  const double r = detail::checked_radius(x, r_min);
  return exp_so3_signed(x / r, f.f_at_infinity() - f(r));
}

/// S^{-1} at R_far x/r, i.e. the transport from infinity down to R_far.
inline RotationMatrix ray_tail_inverse(const ProfileFunction& f, const Vec3& x,
                                       double r_far = kFarRadius) {
  const Vec3 dir = x / norm(x);
  return exp_so3_signed(dir, f(r_far) - f.f_at_infinity());
}

namespace detail {

inline Mat3 generator(const ConnectionField& conn, const CurvePiece& p, double t) {
  return vector_to_bivector(conn(p.point(t)).contract(p.velocity(t))).a;
}

inline Mat3 rk4_piece(const ConnectionField& conn, const CurvePiece& p, Mat3 s, long n,
                      double& max_correction) {
  const double h = 1.0 / static_cast<double>(n);
  Mat3 g0 = generator(conn, p, 0.0);
  for (long k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * h;
    const Mat3 gm = generator(conn, p, t + 0.5 * h);
    const Mat3 g1 = generator(conn, p, t + h);
    const Mat3 k1 = g0 * s;
    const Mat3 k2 = gm * (s + k1 * (0.5 * h));
    const Mat3 k3 = gm * (s + k2 * (0.5 * h));
    const Mat3 k4 = g1 * (s + k3 * h);
    s += (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (h / 6.0);
    double corr = 0.0;
    s = project_to_so3(s, &corr).matrix();
    max_correction = std::max(max_correction, corr);
    g0 = g1;
  }
  return s;
}

}  // namespace detail

/// Solves the transport ODE along `curve` from `s0_inv` at its start.
/// Each smooth piece is integrated by classical RK4 with per-step projection
/// to SO(3); the step count doubles until two successive solutions differ by
/// less than the tolerance, and the finer one is kept.
inline TransportResult integrate_transport(const ConnectionField& conn, const Curve& curve,
                                           const RotationMatrix& s0_inv,
                                           const IntegratorOptions& opt = {}) {
  TransportResult out;
  Mat3 s = s0_inv.matrix();
  for (const auto& piece : curve.pieces()) {
    long n = std::max<long>(1, opt.initial_steps);
    double corr = 0.0;
    Mat3 coarse = detail::rk4_piece(conn, piece, s, n, corr);
    double err = 0.0;
    while (true) {
      if (2 * n > opt.max_steps)
        throw IntegrationError("transport did not converge within " +
                                   std::to_string(opt.max_steps) + " steps",
                               err, n);
      double fine_corr = 0.0;
      const Mat3 fine = detail::rk4_piece(conn, piece, s, 2 * n, fine_corr);
      err = frobenius(fine - coarse);
      n *= 2;
      coarse = fine;
      corr = fine_corr;
      if (err < opt.tolerance) break;
    }
    s = coarse;
    out.steps += n;
    out.error_estimate += err;
    out.max_projection_correction = std::max(out.max_projection_correction, corr);
  }
  out.S_inv = project_to_so3(s);
  return out;
}

/// Transport of S^{-1} = 1 from infinity to x along the inbound ray, using
/// the flat connection of `f`. The segment beyond R_far is closed form.
inline TransportResult transport_from_infinity(const ProfileFunction& f, const Vec3& x,
                                               double r_far = kFarRadius,
                                               const IntegratorOptions& opt = {}) {
  const double r = norm(x);
  if (r_far <= r) r_far = 2.0 * r;
  const Curve ray = Curve::ray_from_infinity(x, r_far);
  return integrate_transport(flat_connection_field(f), ray, ray_tail_inverse(f, x, r_far), opt);
}

/// Largest Frobenius norm of [M(s), M(t)], M = ydot^mu A_mu in matrix form,
/// over random parameter pairs on one curve.
inline double max_commutator_along(const ConnectionField& conn, const Curve& curve, int samples,
                                   unsigned seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> piece(0, curve.pieces().size() - 1);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const auto& p1 = curve.pieces()[piece(rng)];
    const auto& p2 = curve.pieces()[piece(rng)];
    const Mat3 a = detail::generator(conn, p1, u(rng));
    const Mat3 b = detail::generator(conn, p2, u(rng));
    worst = std::max(worst, frobenius(commutator(a, b)));
  }
  return worst;
}

/// Commutator check on the outbound ray y(t) = x t, ydot = x, with s and t
/// drawn from [1, R_far/|x|], for the flat connection of `f`.
inline double verify_ray_commutativity(const ProfileFunction& f, const Vec3& x, int samples,
                                       unsigned seed = 1, double r_min = kDefaultRMin) {
  const double r = detail::checked_radius(x, r_min);
  const double t_max = std::max(2.0, kFarRadius / r);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(1.0, t_max);
  auto gen = [&](double t) {
    return vector_to_bivector(eval_flat_connection(f, x * t).contract(x)).a;
  };
  double worst = 0.0;
  for (int k = 0; k < samples; ++k)
    worst = std::max(worst, frobenius(commutator(gen(u(rng)), gen(u(rng)))));
  return worst;
}

}  // namespace disclination
