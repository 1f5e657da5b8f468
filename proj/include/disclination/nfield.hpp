#pragma once
// Unit director field reconstructed from the flat connection.
//
// With n0 fixed at infinity, n^i(x) = n0^j S_j^i(x), where S is the
// transported frame. For a profile with f(inf) = 0 the frame is the rotation
// by angle -f(r) about x/r; this sign reproduces the explicit component
// formulas below and agrees with the closed-form radial transport.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <utility>

#include "disclination/ansatz.hpp"
#include "disclination/errors.hpp"
#include "disclination/linalg.hpp"
#include "disclination/profile.hpp"
#include "disclination/so3.hpp"

namespace disclination {

inline constexpr double kClassifyTol = 1e-9;
inline constexpr double kAxisExclusion = 1e-8;
inline constexpr Vec3 kNorthPole{0.0, 0.0, 1.0};

/// Spherically symmetric frame S(x) for a profile normalized to f(inf) = 0.
inline RotationMatrix spherical_matrix(const ProfileFunction& f, const Vec3& x,
                                       double r_min = kDefaultRMin) {
  const double r = detail::checked_radius(x, r_min);
  return exp_so3_signed(x / r, -f(r));
}

/// Explicit components for n0 = (0, 0, 1):
///   n1 = -(x2/r) sin f + (x1 x3/r^2)(1 - cos f)
///   n2 =  (x1/r) sin f + (x2 x3/r^2)(1 - cos f)
///   n3 =  cos f + (x3^2/r^2)(1 - cos f)
inline Vec3 nfield_cartesian(const ProfileFunction& f, const Vec3& x,
                             double r_min = kDefaultRMin) {
  const double r = detail::checked_radius(x, r_min);
  const double v = f(r);
  const double s = std::sin(v), c = 1.0 - std::cos(v);
  const double r2 = r * r;
  return {-x[1] / r * s + x[0] * x[2] / r2 * c, x[0] / r * s + x[1] * x[2] / r2 * c,
          std::cos(v) + x[2] * x[2] / r2 * c};
}

/// n = n0 S(x) for an arbitrary unit boundary vector.
inline Vec3 transported_director(const ProfileFunction& f, const Vec3& n0, const Vec3& x,
                                 double r_min = kDefaultRMin) {
  return apply_rotation(n0, spherical_matrix(f, x, r_min));
}

/// Same components in spherical coordinates (n0 = (0, 0, 1)).
inline Vec3 nfield_spherical(const ProfileFunction& f, double r, double theta, double phi,
                             double r_min = kDefaultRMin) {
  if (!(r >= r_min)) throw OriginExclusionError(r, r_min);
  const double v = f(r);
  const double s = std::sin(v), c = 1.0 - std::cos(v);
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  return {-st * sp * s + st * ct * cp * c, st * cp * s + st * ct * sp * c,
          std::cos(v) + ct * ct * c};
}

/// n on the plane x2 = 0.
inline Vec3 plane_section_x2(const ProfileFunction& f, double x1, double x3,
                             double r_min = kDefaultRMin) {
  const double r = std::hypot(x1, x3);
  if (!(r >= r_min)) throw OriginExclusionError(r, r_min);
  const double v = f(r);
  const double c = 1.0 - std::cos(v);
  return {x1 * x3 / (r * r) * c, x1 / r * std::sin(v), std::cos(v) + x3 * x3 / (r * r) * c};
}

/// Rows e_r, e_theta, e_phi in Cartesian components.
inline Mat3 spherical_basis(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  Mat3 b;
  b[0] = {st * cp, st * sp, ct};
  b[1] = {ct * cp, ct * sp, -st};
  b[2] = {-sp, cp, 0.0};
  return b;
}

/// Rotation in the (e_r, e_theta, e_phi) frame taking n0 = e_3 to e_r.
/// Not spherically symmetric.
inline RotationMatrix hedgehog_P(double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  Mat3 p;
  p[0] = {c, s, 0.0};
  p[1] = {-s, c, 0.0};
  p[2] = {0.0, 0.0, 1.0};
  return RotationMatrix(p);
}

inline bool on_nonpositive_axis(const Vec3& x, double radius = kAxisExclusion) {
  return std::hypot(x[0], x[1]) < radius && x[2] <= 0.0;
}

/// Hedgehog construction: n0 = e_3 is rotated by P in the spherical frame
/// and then by the spherically symmetric S, n^i = n0^k P_k^j S_j^i. The
/// result equals x/r for any admissible profile.
inline Vec3 hedgehog_field(const ProfileFunction& f, const Vec3& x, double r_min = kDefaultRMin) {
  detail::checked_radius(x, r_min);
  if (on_nonpositive_axis(x))
    throw AxisExclusionError("hedgehog frame is undefined on the nonpositive 3-axis");
  const double theta = std::atan2(std::hypot(x[0], x[1]), x[2]);
  const double phi = std::atan2(x[1], x[0]);
  const Mat3 basis = spherical_basis(theta, phi);
  const Vec3 n0_sph = basis * kNorthPole;               // (cos t, -sin t, 0)
  const Vec3 rotated_sph = apply_rotation(n0_sph, hedgehog_P(theta));
  const Vec3 rotated = rotated_sph * basis;             // back to Cartesian
  return apply_rotation(rotated, spherical_matrix(f, x, r_min));
}

class DirectorField {
 public:
  enum class Construction { SpherSym, Hedgehog };

  DirectorField(ProfileFunction profile, Construction construction, Vec3 n0 = kNorthPole)
      : profile_(std::move(profile)), construction_(construction), n0_(n0) {
    if (std::fabs(norm(n0_) - 1.0) > 1e-12)
      throw PreconditionError("boundary vector must be a unit vector");
    if (construction_ == Construction::Hedgehog && n0_ != kNorthPole)
      throw PreconditionError("hedgehog construction is defined for n0 = (0, 0, 1)");
  }

  Vec3 operator()(const Vec3& x) const {
    return construction_ == Construction::Hedgehog ? hedgehog_field(profile_, x)
                                                   : transported_director(profile_, n0_, x);
  }

  bool defined_at(const Vec3& x, double r_min = kDefaultRMin) const {
    if (norm(x) < r_min) return false;
    return construction_ != Construction::Hedgehog || !on_nonpositive_axis(x);
  }

  const ProfileFunction& profile() const { return profile_; }
  Construction construction() const { return construction_; }
  const Vec3& boundary_vector() const { return n0_; }

 private:
  ProfileFunction profile_;
  Construction construction_;
  Vec3 n0_;
};

/// lim_{r->0+} n(r d): the component formulas depend on r only through f(r)
/// and degree-zero ratios, so the limit is the formula at x = d with f(0).
inline Vec3 directional_limit(const ProfileFunction& f, const Vec3& direction) {
  if (std::fabs(norm(direction) - 1.0) > 1e-9)
    throw PreconditionError("directional_limit needs a unit direction");
  const double v = f.f_at_zero();
  const double s = std::sin(v), c = 1.0 - std::cos(v);
  const Vec3& d = direction;
  return {-d[1] * s + d[0] * d[2] * c, d[0] * s + d[1] * d[2] * c, std::cos(v) + d[2] * d[2] * c};
}

struct DirectionalWitness {
  Vec3 direction;
  Vec3 limit;
};

struct OriginClassification {
  enum class Kind { Continuous, EssentialSingularity };

  Kind kind = Kind::Continuous;
  long k = 0;  // f(0) = k pi when continuous
  std::optional<std::array<DirectionalWitness, 2>> witnesses;
};

inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

/// Classification by the declared f(0): continuous exactly when f(0) is an
/// integer multiple of pi (within kClassifyTol).
///
/// Note: for odd multiples the directional limits are 2 (d . n0) d - n0 and
/// still depend on d; directional_spread() measures this.
inline OriginClassification classify_origin(const ProfileFunction& f) {
  const double f0 = f.f_at_zero();
  const double k = std::round(f0 / std::numbers::pi);
  OriginClassification out;
  if (std::fabs(f0 - k * std::numbers::pi) < kClassifyTol) {
    out.kind = OriginClassification::Kind::Continuous;
    out.k = static_cast<long>(k);
    return out;
  }
  out.kind = OriginClassification::Kind::EssentialSingularity;
  const Vec3 d1 = kNorthPole, d2{1.0, 0.0, 0.0};
  out.witnesses = std::array<DirectionalWitness, 2>{
      DirectionalWitness{d1, directional_limit(f, d1)},
      DirectionalWitness{d2, directional_limit(f, d2)}};
  return out;
}

/// Directions used to probe the origin: the six axis directions and the
/// eight cube diagonals.
inline std::array<Vec3, 14> probe_directions() {
  std::array<Vec3, 14> out{};
  std::size_t n = 0;
  for (std::size_t a = 0; a < 3; ++a)
    for (double s : {1.0, -1.0}) {
      Vec3 d;
      d[a] = s;
      out[n++] = d;
    }
  const double q = 1.0 / std::sqrt(3.0);
  for (double sx : {1.0, -1.0})
    for (double sy : {1.0, -1.0})
      for (double sz : {1.0, -1.0}) out[n++] = Vec3{sx * q, sy * q, sz * q};
  return out;
}

/// Largest angle between directional limits over probe_directions().
inline double directional_spread(const ProfileFunction& f) {
  const auto dirs = probe_directions();
  double worst = 0.0;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j)
      worst = std::max(worst, angle_between(directional_limit(f, dirs[i]),
                                            directional_limit(f, dirs[j])));
  return worst;
}

/// nabla_mu n^i = d_mu n^i + n^j A_{mu j}^i with A_{mu j}^i = A_mu^k eps_{kji};
/// the derivative is a central difference of step h. Returned as [mu][i].
inline Mat3 covariant_derivative(const std::function<Vec3(const Vec3&)>& director,
                                 const ConnectionField& conn, const Vec3& x, double h,
                                 double r_min = kDefaultRMin) {
  if (!(h > 0.0)) throw PreconditionError("finite-difference step must be positive");
  const Vec3 n = director(x);
  const Mat3 a = conn(x).a;
  Mat3 out;
  for (std::size_t mu = 0; mu < 3; ++mu) {
    Vec3 e;
    e[mu] = h;
    const Vec3 xp = x + e, xm = x - e;
    if (norm(xp) < r_min) throw OriginExclusionError(norm(xp), r_min);
    if (norm(xm) < r_min) throw OriginExclusionError(norm(xm), r_min);
    const Vec3 dn = (director(xp) - director(xm)) / (2.0 * h);
    for (std::size_t i = 0; i < 3; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) s += n[j] * a[mu][k] * levi_civita(k, j, i);
      out[mu][i] = dn[i] + s;
    }
  }
  return out;
}

/// Covariant derivative of n = n0 S against the flat connection of `f`.
inline Mat3 covariant_derivative_n(const ProfileFunction& f, const Vec3& n0, const Vec3& x,
                                   double h, double r_min = kDefaultRMin) {
  return covariant_derivative(
      [&](const Vec3& y) { return transported_director(f, n0, y, r_min); },
      flat_connection_field(f, SignBranch::Upper, r_min), x, h, r_min);
}

}  // namespace disclination
