#pragma once
// Spherically symmetric SO(3) connections, their curvature, the reduced
// equilibrium ODEs and the one-function family of flat solutions.
//
// A connection is handled in vector form A_mu^i (3x3, row mu, column i). Its
// bivector form is A_mu^{ij} = A_mu^k eps_k^{ij}. Curvature in vector form is
//   F_{mu nu k} = d_mu A_{nu k} - d_nu A_{mu k} + A_mu^i A_nu^j eps_{ijk}.
// Latin and Greek indices are raised and lowered with the Euclidean metric and
// are not distinguished numerically.

#include <array>
#include <cmath>
#include <functional>
#include <utility>

#include "disclination/errors.hpp"
#include "disclination/linalg.hpp"
#include "disclination/profile.hpp"
#include "disclination/so3.hpp"

namespace disclination {

inline constexpr double kDefaultRMin = 1e-8;

struct ConnectionCoefficients {
  Mat3 a;  // a[mu][i] = A_mu^i

  double operator()(std::size_t mu, std::size_t i) const { return a[mu][i]; }
  /// A_mu as a matrix acting on internal indices, (A_mu)_i^j.
  Bivector3 bivector(std::size_t mu) const { return vector_to_bivector(a.row(mu)); }
  /// Contraction v^mu A_mu^i.
  Vec3 contract(const Vec3& v) const { return v * a; }
};

using ConnectionField = std::function<ConnectionCoefficients(const Vec3&)>;

/// Field antisymmetric in a pair of space indices (mu, nu) carrying one
/// internal index. Only the ordered pairs (1,2), (1,3), (2,3) are stored.
template <class Tag>
class PairField {
 public:
  /// Value for mu < nu; 0-based indices.
  void set(std::size_t mu, std::size_t nu, const Vec3& v) { pairs_[pair_index(mu, nu)] = v; }

  Vec3 pair(std::size_t mu, std::size_t nu) const {
    if (mu == nu) return {};
    return mu < nu ? pairs_[pair_index(mu, nu)] : -pairs_[pair_index(nu, mu)];
  }

  double operator()(std::size_t mu, std::size_t nu, std::size_t i) const {
    return pair(mu, nu)[i];
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& p : pairs_) m = std::fmax(m, disclination::max_abs(p));
    return m;
  }

  friend PairField operator-(const PairField& a, const PairField& b) {
    PairField r;
    for (std::size_t k = 0; k < 3; ++k) r.pairs_[k] = a.pairs_[k] - b.pairs_[k];
    return r;
  }

 private:
  static std::size_t pair_index(std::size_t mu, std::size_t nu) {
    if (mu >= nu || nu > 2) throw PreconditionError("pair index requires mu < nu <= 2");
    return mu + nu - 1;  // (0,1)->0, (0,2)->1, (1,2)->2
  }

  std::array<Vec3, 3> pairs_{};
};

struct CurvatureTag {};
struct TorsionTag {};
using CurvatureAtPoint = PairField<CurvatureTag>;
using TorsionAtPoint = PairField<TorsionTag>;

/// A_mu^i = eps_mu^{ij} (x_j/r) W + delta_mu^i V + (x_mu x^i / r^2) U.
struct GeneralAnsatz {
  RadialFunction W;
  RadialFunction V;
  RadialFunction U;

  /// W = (K - 1)/r.
  static GeneralAnsatz from_k_form(const RadialFunction& K, RadialFunction V, RadialFunction U) {
    RadialFunction w{[K](double r) { return (K(r) - 1.0) / r; },
                     [K](double r) { return K.deriv(r) / r - (K(r) - 1.0) / (r * r); }};
    return {std::move(w), std::move(V), std::move(U)};
  }
};

enum class SignBranch { Upper, Lower };

/// K, V, U of a flat solution.
struct FlatProfiles {
  RadialFunction K;
  RadialFunction V;
  RadialFunction U;

  GeneralAnsatz as_general() const { return GeneralAnsatz::from_k_form(K, V, U); }
};

struct OdeResiduals {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double rho3 = 0.0;

  double max_abs() const {
    return std::fmax(std::fabs(rho1), std::fmax(std::fabs(rho2), std::fabs(rho3)));
  }
};

namespace detail {

inline double checked_radius(const Vec3& x, double r_min) {
  const double r = norm(x);
  if (!(r >= r_min)) throw OriginExclusionError(r, r_min);
  return r;
}

// F_{mu nu}^i = eps_{mu nu i} c1 + eps_{mu nu j} x_j x_i c2
//             + (x_mu delta_{nu i} - x_nu delta_{mu i}) c3
inline CurvatureAtPoint assemble_curvature(const Vec3& x, double c1, double c2, double c3) {
  CurvatureAtPoint out;
  for (std::size_t mu = 0; mu < 3; ++mu)
    for (std::size_t nu = mu + 1; nu < 3; ++nu) {
      double ex = 0.0;
      for (std::size_t j = 0; j < 3; ++j) ex += levi_civita(mu, nu, j) * x[j];
      Vec3 v;
      for (std::size_t i = 0; i < 3; ++i)
        v[i] = levi_civita(mu, nu, i) * c1 + ex * x[i] * c2 +
               (x[mu] * kronecker(nu, i) - x[nu] * kronecker(mu, i)) * c3;
      out.set(mu, nu, v);
    }
  return out;
}

}  // namespace detail

inline ConnectionCoefficients eval_general_connection(const GeneralAnsatz& an, const Vec3& x,
                                                      double r_min = kDefaultRMin) {
  const double r = detail::checked_radius(x, r_min);
  const double w = an.W(r), v = an.V(r), u = an.U(r);
  ConnectionCoefficients c;
  for (std::size_t mu = 0; mu < 3; ++mu)
    for (std::size_t i = 0; i < 3; ++i) {
      double e = 0.0;
      for (std::size_t j = 0; j < 3; ++j) e += levi_civita(mu, i, j) * x[j];
      c.a[mu][i] = e / r * w + kronecker(mu, i) * v + x[mu] * x[i] / (r * r) * u;
    }
  return c;
}

/// Curvature of the general ansatz in terms of W, V, U.
inline CurvatureAtPoint eval_general_curvature(const GeneralAnsatz& an, const Vec3& x,
                                               double r_min = kDefaultRMin) {
  const double r = detail::checked_radius(x, r_min);
  const double w = an.W(r), wp = an.W.deriv(r);
  const double v = an.V(r), vp = an.V.deriv(r);
  const double u = an.U(r);
  const double c1 = wp + w / r + v * (v + u);
  const double c2 = (w - r * wp + r * w * w - r * v * u) / (r * r * r);
  const double c3 = (r * vp - u - r * w * (v + u)) / (r * r);
  return detail::assemble_curvature(x, c1, c2, c3);
}

/// Same curvature with W = (K - 1)/r substituted.
inline CurvatureAtPoint eval_curvature_K_form(const RadialFunction& K, const RadialFunction& V,
                                              const RadialFunction& U, const Vec3& x,
                                              double r_min = kDefaultRMin) {
  const double r = detail::checked_radius(x, r_min);
  const double k = K(r), kp = K.deriv(r);
  const double v = V(r), vp = V.deriv(r);
  const double u = U(r);
  const double c1 = (kp + r * v * (v + u)) / r;
  const double c2 = (-kp + (k * k - 1.0) / r - r * v * u) / (r * r * r);
  const double c3 = (r * vp - u - (k - 1.0) * (v + u)) / (r * r);
  return detail::assemble_curvature(x, c1, c2, c3);
}

/// Left-hand sides of the three reduced equilibrium equations.
inline OdeResiduals ode_residuals(const RadialFunction& K, const RadialFunction& V,
                                  const RadialFunction& U, double r) {
  if (!(r > 0.0)) throw PreconditionError("ode_residuals requires r > 0");
  const double k = K(r), kp = K.deriv(r);
  const double v = V(r), vp = V.deriv(r);
  const double u = U(r);
  return {kp + r * v * (v + u), -kp + (k * k - 1.0) / r - r * v * u,
          r * vp - u - (k - 1.0) * (v + u)};
}

/// General solution of the reduced equations:
///   K = cos f,  V = +-sin f / r,  U = +-(r f' - sin f)/r.
/// U carries no analytic derivative (it would need f''); none of the
/// curvature or residual expressions use U'.
inline FlatProfiles theorem_solution(const ProfileFunction& f,
                                     SignBranch branch = SignBranch::Upper) {
  const double s = branch == SignBranch::Upper ? 1.0 : -1.0;
  RadialFunction K{[f](double r) { return std::cos(f(r)); },
                   [f](double r) { return -std::sin(f(r)) * f.deriv(r); }};
  RadialFunction V{[f, s](double r) { return s * std::sin(f(r)) / r; },
                   [f, s](double r) {
                     const double v = f(r);
                     return s * (std::cos(v) * f.deriv(r) / r - std::sin(v) / (r * r));
                   }};
  RadialFunction U{[f, s](double r) { return s * (r * f.deriv(r) - std::sin(f(r))) / r; }, {}};
  return {std::move(K), std::move(V), std::move(U)};
}

/// Closed-form flat connection
///   A_mu^i = eps_mu^{ij} x_j (cos f - 1)/r^2 + delta_mu^i sin f / r
///          + x_mu x^i (r f' - sin f)/r^3,
/// with V and U negated on the lower branch.
inline ConnectionCoefficients eval_flat_connection(const ProfileFunction& f, const Vec3& x,
                                                   SignBranch branch = SignBranch::Upper,
                                                   double r_min = kDefaultRMin) {
  const double r = detail::checked_radius(x, r_min);
  const double s = branch == SignBranch::Upper ? 1.0 : -1.0;
  const double fv = f(r), fp = f.deriv(r);
  const double cw = (std::cos(fv) - 1.0) / (r * r);
  const double cv = s * std::sin(fv) / r;
  const double cu = s * (r * fp - std::sin(fv)) / (r * r * r);
  ConnectionCoefficients c;
  for (std::size_t mu = 0; mu < 3; ++mu)
    for (std::size_t i = 0; i < 3; ++i) {
      double e = 0.0;
      for (std::size_t j = 0; j < 3; ++j) e += levi_civita(mu, i, j) * x[j];
      c.a[mu][i] = e * cw + kronecker(mu, i) * cv + x[mu] * x[i] * cu;
    }
  return c;
}

inline ConnectionField flat_connection_field(const ProfileFunction& f,
                                             SignBranch branch = SignBranch::Upper,
                                             double r_min = kDefaultRMin) {
  return [f, branch, r_min](const Vec3& x) { return eval_flat_connection(f, x, branch, r_min); };
}

inline ConnectionField general_connection_field(const GeneralAnsatz& an,
                                                double r_min = kDefaultRMin) {
  return [an, r_min](const Vec3& x) { return eval_general_connection(an, x, r_min); };
}

namespace detail {

// d_mu A_nu^k by central differences: out[mu] is a matrix over (nu, k).
inline std::array<Mat3, 3> fd_connection_gradient(const ConnectionField& conn, const Vec3& x,
                                                  double h, double r_min) {
  if (!(h > 0.0)) throw PreconditionError("finite-difference step must be positive");
  std::array<Mat3, 3> d;
  for (std::size_t mu = 0; mu < 3; ++mu) {
    Vec3 e;
    e[mu] = h;
    const Vec3 xp = x + e, xm = x - e;
    // closest approach of the stencil segment to the origin
    const double reach = std::fabs(x[mu]) <= h ? norm(x - e * (x[mu] / h))
                                               : std::fmin(norm(xp), norm(xm));
    if (reach < r_min) throw OriginExclusionError(reach, r_min);
    d[mu] = (conn(xp).a - conn(xm).a) * (0.5 / h);
  }
  return d;
}

}  // namespace detail

/// Numerical curvature from the definition, with derivatives replaced by
/// central differences of step h. Independent of the closed-form curvature
/// expressions.
inline CurvatureAtPoint finite_difference_curvature(const ConnectionField& conn, const Vec3& x,
                                                    double h, double r_min = kDefaultRMin) {
  const auto d = detail::fd_connection_gradient(conn, x, h, r_min);
  const Mat3 a = conn(x).a;
  CurvatureAtPoint out;
  for (std::size_t mu = 0; mu < 3; ++mu)
    for (std::size_t nu = mu + 1; nu < 3; ++nu) {
      Vec3 v;
      for (std::size_t k = 0; k < 3; ++k) {
        double quad = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) quad += a[mu][i] * a[nu][j] * levi_civita(i, j, k);
        v[k] = d[mu][nu][k] - d[nu][mu][k] + quad;
      }
      out.set(mu, nu, v);
    }
  return out;
}

/// Same numerical curvature computed in matrix form,
///   F_mu nu = d_mu A_nu - d_nu A_mu - [A_mu, A_nu],
/// and mapped back to vector form.
inline CurvatureAtPoint finite_difference_curvature_bivector(const ConnectionField& conn,
                                                             const Vec3& x, double h,
                                                             double r_min = kDefaultRMin) {
  const auto d = detail::fd_connection_gradient(conn, x, h, r_min);
  const ConnectionCoefficients a = conn(x);
  CurvatureAtPoint out;
  for (std::size_t mu = 0; mu < 3; ++mu)
    for (std::size_t nu = mu + 1; nu < 3; ++nu) {
      const Mat3 f = vector_to_bivector(d[mu].row(nu)).a - vector_to_bivector(d[nu].row(mu)).a -
                     commutator(a.bivector(mu).a, a.bivector(nu).a);
      out.set(mu, nu, bivector_to_vector(f, 1e-9 * std::max(1.0, max_abs(f))));
    }
  return out;
}

/// Torsion for the Euclidean vielbein e_mu^i = delta_mu^i:
///   T_{mu nu}^i = -omega_{nu mu}^i + omega_{mu nu}^i,
/// omega_{mu j}^i = A_mu^k eps_{kji}.
inline TorsionAtPoint torsion_flat_vielbein(const ConnectionField& conn, const Vec3& x,
                                            double r_min = kDefaultRMin) {
  detail::checked_radius(x, r_min);
  const Mat3 a = conn(x).a;
  TorsionAtPoint out;
  for (std::size_t mu = 0; mu < 3; ++mu)
    for (std::size_t nu = mu + 1; nu < 3; ++nu) {
      Vec3 v;
      for (std::size_t i = 0; i < 3; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < 3; ++k)
          s += a[mu][k] * levi_civita(k, nu, i) - a[nu][k] * levi_civita(k, mu, i);
        v[i] = s;
      }
      out.set(mu, nu, v);
    }
  return out;
}

}  // namespace disclination
