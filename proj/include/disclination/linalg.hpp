#pragma once
// Fixed-size 3-vector and 3x3 matrix arithmetic plus the Levi-Civita symbol.
//
// Matrices are stored row-major with the row as the first (lower) index and
// the column as the second (upper) index, so m[i][j] holds S_i^j or A_mu^i
// literally. Every contraction in the library is written against this layout.

#include <array>
#include <cmath>
#include <cstddef>

namespace disclination {

struct Vec3 {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x1, double x2, double x3) : c{x1, x2, x3} {}

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr Vec3& operator+=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(Vec3 a) { return a *= -1.0; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) { return a *= 1.0 / s; }

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double max_abs(const Vec3& a) {
  return std::fmax(std::fabs(a[0]), std::fmax(std::fabs(a[1]), std::fabs(a[2])));
}

inline bool is_finite(const Vec3& a) {
  return std::isfinite(a[0]) && std::isfinite(a[1]) && std::isfinite(a[2]);
}

struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  static constexpr Mat3 zero() { return {}; }
  static constexpr Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }

  constexpr std::array<double, 3>& operator[](std::size_t i) { return m[i]; }
  constexpr const std::array<double, 3>& operator[](std::size_t i) const {
    return m[i];
  }

  constexpr Vec3 row(std::size_t i) const { return {m[i][0], m[i][1], m[i][2]}; }

  constexpr Mat3& operator+=(const Mat3& o) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m[i][j] += o.m[i][j];
    return *this;
  }
  constexpr Mat3& operator-=(const Mat3& o) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m[i][j] -= o.m[i][j];
    return *this;
  }
  constexpr Mat3& operator*=(double s) {
    for (auto& r : m)
      for (auto& v : r) v *= s;
    return *this;
  }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

constexpr Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
constexpr Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
constexpr Mat3 operator*(Mat3 a, double s) { return a *= s; }
constexpr Mat3 operator*(double s, Mat3 a) { return a *= s; }

constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += a.m[i][k] * b.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

/// Matrix acting on a column vector: (a v)_i = a_ij v_j.
constexpr Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {dot(a.row(0), v), dot(a.row(1), v), dot(a.row(2), v)};
}

/// Row vector times matrix: (v a)_j = v_i a_ij.
constexpr Vec3 operator*(const Vec3& v, const Mat3& a) {
  Vec3 r;
  for (std::size_t j = 0; j < 3; ++j)
    r[j] = v[0] * a.m[0][j] + v[1] * a.m[1][j] + v[2] * a.m[2][j];
  return r;
}

constexpr Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r.m[i][j] = a.m[j][i];
  return r;
}

constexpr Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r.m[i][j] = a[i] * b[j];
  return r;
}

constexpr double trace(const Mat3& a) { return a.m[0][0] + a.m[1][1] + a.m[2][2]; }

constexpr double det(const Mat3& a) {
  return a.m[0][0] * (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1]) -
         a.m[0][1] * (a.m[1][0] * a.m[2][2] - a.m[1][2] * a.m[2][0]) +
         a.m[0][2] * (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]);
}

constexpr Mat3 commutator(const Mat3& a, const Mat3& b) { return a * b - b * a; }

inline double frobenius(const Mat3& a) {
  double s = 0.0;
  for (const auto& r : a.m)
    for (double v : r) s += v * v;
  return std::sqrt(s);
}

inline double max_abs(const Mat3& a) {
  double s = 0.0;
  for (const auto& r : a.m)
    for (double v : r) s = std::fmax(s, std::fabs(v));
  return s;
}

inline bool is_finite(const Mat3& a) {
  for (const auto& r : a.m)
    for (double v : r)
      if (!std::isfinite(v)) return false;
  return true;
}

/// Totally antisymmetric symbol on 0-based indices, eps(0,1,2) = +1.
constexpr double levi_civita(std::size_t i, std::size_t j, std::size_t k) {
  const auto a = static_cast<long>(i), b = static_cast<long>(j),
             c = static_cast<long>(k);
  return static_cast<double>((a - b) * (b - c) * (c - a) / 2);
}

constexpr double kronecker(std::size_t i, std::size_t j) { return i == j ? 1.0 : 0.0; }

}  // namespace disclination
