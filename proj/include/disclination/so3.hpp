#pragma once
// SO(3) group and so(3) algebra: vector/bivector duality, exponential map,
// principal logarithm, and the action of a rotation on a vector.
//
// Conventions:
//   bivector  B^{ij} = v_k eps^k_{ij}            (eps_123 = +1)
//   vector    v_k    = 1/2 B^{ij} eps_{kij}
//   exp       S_i^j  = exp(f^k eps_{ki}^j)
//   action    n^i    = n0^j S_j^i                 (row vector times matrix)
// Under the row-vector action exp_so3(f) is a right-handed rotation by |f|
// about f/|f|.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "disclination/errors.hpp"
#include "disclination/linalg.hpp"

namespace disclination {

inline constexpr double kSmallAngle = 1e-4;
inline constexpr double kOrthTol = 1e-9;
inline constexpr double kAntisymTol = 1e-9;

/// Axis times angle (radians), an element of the Lie algebra so(3).
struct So3Vector {
  Vec3 f;

  double angle() const { return norm(f); }
};

/// Antisymmetric 3x3 matrix, the matrix form of an so(3) element.
struct Bivector3 {
  Mat3 a;

  double operator()(std::size_t i, std::size_t j) const { return a[i][j]; }
};

/// Element of SO(3). Construction from a raw matrix checks orthogonality and
/// orientation against a tolerance.
class RotationMatrix {
 public:
  RotationMatrix() : m_(Mat3::identity()) {}

  explicit RotationMatrix(const Mat3& m, double tol = kOrthTol) : m_(m) {
    if (!is_finite(m))
      throw PreconditionError("rotation matrix has non-finite entries");
    if (orthogonality_defect(m) > tol || std::fabs(det(m) - 1.0) > tol)
      throw PreconditionError("matrix is not in SO(3) within tolerance " +
                              std::to_string(tol));
  }

  static RotationMatrix identity() { return {}; }

  const Mat3& matrix() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }

  RotationMatrix inverse() const { return RotationMatrix(transpose(m_), Unchecked{}); }

  friend RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b) {
    return RotationMatrix(a.m_ * b.m_, Unchecked{});
  }

  /// max |S^T S - 1| entrywise.
  static double orthogonality_defect(const Mat3& m) {
    return max_abs(transpose(m) * m - Mat3::identity());
  }

 private:
  struct Unchecked {};
  RotationMatrix(const Mat3& m, Unchecked) : m_(m) {}

  friend RotationMatrix exp_so3_signed(const Vec3&, double);
  friend RotationMatrix project_to_so3(const Mat3&, double*);

  Mat3 m_;
};

inline Bivector3 vector_to_bivector(const Vec3& v) {
  Bivector3 b;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += v[k] * levi_civita(k, i, j);
      b.a[i][j] = s;
    }
  return b;
}

/// Inverse of vector_to_bivector. Rejects input whose symmetric part exceeds
/// `tol` (Frobenius norm).
inline Vec3 bivector_to_vector(const Mat3& b, double tol = kAntisymTol) {
  if (frobenius(0.5 * (b + transpose(b))) > tol)
    throw PreconditionError("bivector_to_vector: input is not antisymmetric");
  Vec3 v;
  for (std::size_t k = 0; k < 3; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) s += b[i][j] * levi_civita(k, i, j);
    v[k] = 0.5 * s;
  }
  return v;
}

inline Vec3 bivector_to_vector(const Bivector3& b, double tol = kAntisymTol) {
  return bivector_to_vector(b.a, tol);
}

/// Rotation by a signed angle about a unit axis. The formula is invariant
/// under (axis, angle) -> (-axis, -angle).
inline RotationMatrix exp_so3_signed(const Vec3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double h = std::sin(0.5 * angle);
  const double one_minus_cos = 2.0 * h * h;
  Mat3 m = Mat3::identity() * c;
  m += vector_to_bivector(axis).a * s;
  m += outer(axis, axis) * one_minus_cos;
  return RotationMatrix(m, RotationMatrix::Unchecked{});
}

inline RotationMatrix exp_so3(const So3Vector& v) {
  const Vec3& f = v.f;
  const double angle = norm(f);
  const double a2 = angle * angle;
  double sinc;       // sin F / F
  double cosc;       // (1 - cos F) / F^2
  if (angle < kSmallAngle) {
    sinc = 1.0 - a2 / 6.0;
    cosc = 0.5 - a2 / 24.0;
  } else {
    const double h = std::sin(0.5 * angle);
    sinc = std::sin(angle) / angle;
    cosc = 2.0 * h * h / a2;
  }
  Mat3 m = Mat3::identity() * std::cos(angle);
  m += vector_to_bivector(f).a * sinc;
  m += outer(f, f) * cosc;
  return RotationMatrix(m);
}

/// Principal logarithm, angle in [0, pi].
inline So3Vector log_so3(const RotationMatrix& rot) {
  const Mat3& s = rot.matrix();
  if (RotationMatrix::orthogonality_defect(s) > kOrthTol ||
      std::fabs(det(s) - 1.0) > kOrthTol)
    throw PreconditionError("log_so3: matrix is not in SO(3)");

  const Mat3 anti = 0.5 * (s - transpose(s));
  // anti = sin F * bivector(axis)
  const Vec3 v = bivector_to_vector(anti, 1e-6);
  const double sin_angle = norm(v);
  const double cos_angle = std::clamp(0.5 * (trace(s) - 1.0), -1.0, 1.0);
  const double angle = std::atan2(sin_angle, cos_angle);

  if (angle < kSmallAngle) {
    // v = f (1 - F^2/6 + ...)
    return {v * (1.0 + angle * angle / 6.0)};
  }
  if (sin_angle > kSmallAngle) {
    return {v * (angle / sin_angle)};
  }

  // Near F = pi the antisymmetric part vanishes; the symmetric part is
  // cos F * 1 + (1 - cos F) axis axis^T.
  const Mat3 sym = 0.5 * (s + transpose(s));
  const double denom = 1.0 - cos_angle;
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (sym[i][i] > sym[best][best]) best = i;
  Vec3 axis;
  for (std::size_t j = 0; j < 3; ++j)
    axis[j] = (sym[best][j] - (best == j ? cos_angle : 0.0)) / denom;
  axis = axis / norm(axis);
  if (dot(axis, v) < 0.0) axis = -axis;
  return {axis * angle};
}

/// n^i = n0^j S_j^i.
inline Vec3 apply_rotation(const Vec3& n0, const RotationMatrix& s) {
  return n0 * s.matrix();
}

/// Nearest rotation to `m` (symmetric orthogonalization m (m^T m)^{-1/2}),
/// computed by Newton-Schulz iteration. Valid for near-orthogonal input.
/// Writes the Frobenius size of the correction to `correction` if given.
inline RotationMatrix project_to_so3(const Mat3& m, double* correction = nullptr) {
  Mat3 x = m;
  for (int it = 0; it < 12; ++it) {
    const Mat3 gram = transpose(x) * x;
    const Mat3 defect = gram - Mat3::identity();
    if (max_abs(defect) < 1e-15) break;
    x = x * (Mat3::identity() * 1.5 - 0.5 * gram);
  }
  if (correction) *correction = frobenius(x - m);
  return RotationMatrix(x, RotationMatrix::Unchecked{});
}

}  // namespace disclination
