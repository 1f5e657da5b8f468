#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "disclination/nfield.hpp"
#include "oracles.hpp"

using namespace disclination;
using std::numbers::pi;

namespace {

const ProfileFunction kDecay = ProfileFunction::exp_decay(pi / 2.0, 1.0);

// Rodrigues rotation of v about unit axis u by angle a, written out directly.
Vec3 rodrigues(const Vec3& v, const Vec3& u, double a) {
  return v * std::cos(a) + cross(u, v) * std::sin(a) + u * (dot(u, v) * (1.0 - std::cos(a)));
}

}  // namespace

TEST(SphericalFrame, MatchesSeriesExponential) {
  std::mt19937_64 rng(81);
  for (int k = 0; k < 20; ++k) {
    const Vec3 x = oracle::random_point(rng, 0.1, 5.0);
    const double r = norm(x);
    EXPECT_LT(oracle::max_abs_diff(spherical_matrix(kDecay, x).matrix(),
                                   oracle::series_exp_so3(x / r * -kDecay(r))),
              1e-12);
  }
}

TEST(Director, ZeroProfileIsUniform) {
  std::mt19937_64 rng(83);
  for (int k = 0; k < 10; ++k)
    EXPECT_EQ(nfield_cartesian(ProfileFunction::zero(), oracle::random_point(rng, 0.1, 5.0)),
              kNorthPole);
}

TEST(Director, CartesianFormulaEqualsRotatedBoundaryVector) {
  std::mt19937_64 rng(89);
  for (const auto& f : oracle::test_profiles())
    for (int k = 0; k < 50; ++k) {
      const Vec3 x = oracle::random_point(rng, 0.05, 20.0);
      const Vec3 n = nfield_cartesian(f, x);
      EXPECT_LT(oracle::max_abs_diff(n, transported_director(f, kNorthPole, x)), 1e-14);
      // n0 turned right-handedly by -f(r) about x/r
      EXPECT_LT(oracle::max_abs_diff(n, rodrigues(kNorthPole, x / norm(x), -f(norm(x)))), 1e-14);
      EXPECT_NEAR(norm(n), 1.0, 1e-14);
    }
}

TEST(Director, SphericalAndPlaneFormsAgreeWithCartesian) {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> th(0.0, pi), ph(-pi, pi), rr(0.1, 5.0);
  for (int k = 0; k < 50; ++k) {
    const double r = rr(rng), t = th(rng), p = ph(rng);
    const Vec3 x = Vec3{std::cos(p) * std::sin(t), std::sin(p) * std::sin(t), std::cos(t)} * r;
    EXPECT_LT(oracle::max_abs_diff(nfield_spherical(kDecay, r, t, p),
                                   nfield_cartesian(kDecay, x)),
              1e-14);
    const Vec3 xp{x[0], 0.0, x[2]};
    EXPECT_LT(oracle::max_abs_diff(plane_section_x2(kDecay, x[0], x[2]),
                                   nfield_cartesian(kDecay, xp)),
              1e-14);
  }
}

TEST(Director, ExcludesOrigin) {
  EXPECT_THROW(nfield_cartesian(kDecay, {0, 0, 0}), OriginExclusionError);
  EXPECT_THROW(plane_section_x2(kDecay, 0, 0), OriginExclusionError);
  EXPECT_THROW(nfield_spherical(kDecay, 0, 0, 0), OriginExclusionError);
}

TEST(Director, ArbitraryBoundaryVectorStaysUnit) {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 50; ++k) {
    const Vec3 n0 = oracle::random_unit(rng);
    EXPECT_NEAR(norm(transported_director(kDecay, n0, oracle::random_point(rng, 0.1, 5))),
                1.0, 1e-14);
  }
}

TEST(Hedgehog, EqualsRadialUnitVector) {
  const int n = 20;
  for (const auto& f : oracle::test_profiles()) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const Vec3 x{-2.0 + 4.0 * i / (n - 1), -2.0 + 4.0 * j / (n - 1),
                       -2.0 + 4.0 * k / (n - 1)};
          if (norm(x) < 0.05 || on_nonpositive_axis(x, 1e-8)) continue;
          worst = std::max(worst, max_abs(hedgehog_field(f, x) - x / norm(x)));
        }
    EXPECT_LT(worst, 1e-10) << f.label();
  }
}

TEST(Hedgehog, UndefinedOnNonpositiveAxis) {
  EXPECT_THROW(hedgehog_field(kDecay, {0, 0, -1}), AxisExclusionError);
  EXPECT_NO_THROW(hedgehog_field(kDecay, {0, 0, 1}));
  const DirectorField hh(kDecay, DirectorField::Construction::Hedgehog);
  EXPECT_FALSE(hh.defined_at({0, 0, -2}));
  EXPECT_TRUE(hh.defined_at({0.1, 0, -2}));
}

TEST(Hedgehog, PIsNotSphericallySymmetric) {
  // P depends on theta alone, so rotating x about the 1-axis changes P.
  EXPECT_GT(oracle::max_abs_diff(hedgehog_P(0.3).matrix(), hedgehog_P(1.1).matrix()), 0.1);
}

TEST(DirectorFieldClass, RejectsBadBoundaryVectors) {
  EXPECT_THROW(DirectorField(kDecay, DirectorField::Construction::SpherSym, {1, 1, 0}),
               PreconditionError);
  EXPECT_THROW(DirectorField(kDecay, DirectorField::Construction::Hedgehog, {1, 0, 0}),
               PreconditionError);
}

TEST(Classification, QuarterTurnIsEssential) {
  const OriginClassification c = classify_origin(kDecay);
  ASSERT_EQ(c.kind, OriginClassification::Kind::EssentialSingularity);
  ASSERT_TRUE(c.witnesses.has_value());
  const auto& w = *c.witnesses;
  EXPECT_LT(oracle::max_abs_diff(w[0].limit, Vec3(0, 0, 1)), 1e-15);
  EXPECT_LT(oracle::max_abs_diff(w[1].limit, Vec3(0, 1, 0)), 1e-15);
  EXPECT_NEAR(angle_between(w[0].limit, w[1].limit), pi / 2, 1e-15);
}

TEST(Classification, MultiplesOfPiAreContinuous) {
  for (long k : {0L, 1L, 2L, -1L}) {
    const ProfileFunction f = ProfileFunction::gaussian(k * pi, 1.0);
    const OriginClassification c = classify_origin(f);
    EXPECT_EQ(c.kind, OriginClassification::Kind::Continuous);
    EXPECT_EQ(c.k, k);
    EXPECT_FALSE(c.witnesses.has_value());
  }
}

TEST(Classification, EvenMultiplesHaveDirectionIndependentLimits) {
  for (double f0 : {0.0, 2 * pi, -4 * pi})
    EXPECT_LT(directional_spread(ProfileFunction::gaussian(f0, 1.0)), 1e-7);
}

TEST(Classification, OddMultiplesStillDependOnDirection) {
  // f(0) = pi: the limit along d is 2 (d . n0) d - n0.
  const ProfileFunction f = ProfileFunction::gaussian(pi, 1.0);
  for (const Vec3& d : probe_directions())
    EXPECT_LT(oracle::max_abs_diff(directional_limit(f, d), d * (2.0 * d[2]) - kNorthPole), 1e-15);
  EXPECT_NEAR(directional_spread(f), pi, 1e-12);
}

TEST(Classification, NumericalSamplingApproachesLimits) {
  for (double f0 : {pi / 2, 0.0, pi, 2 * pi, 1.0}) {
    const ProfileFunction f = ProfileFunction::gaussian(f0, 1.0);
    for (const Vec3& d : probe_directions())
      EXPECT_LT(max_abs(nfield_cartesian(f, d * 1e-6) - directional_limit(f, d)), 1e-6);
  }
}

TEST(Classification, RequiresUnitDirection) {
  EXPECT_THROW(directional_limit(kDecay, {1, 1, 0}), PreconditionError);
}

TEST(CovariantDerivative, VanishesForTransportedDirector) {
  std::mt19937_64 rng(103);
  for (int k = 0; k < 50; ++k) {
    const Vec3 x = oracle::random_point(rng, 0.5, 5.0);
    EXPECT_LT(max_abs(covariant_derivative_n(kDecay, kNorthPole, x, 1e-5)), 1e-6);
  }
}

TEST(CovariantDerivative, VanishesForAnyBoundaryVectorAndProfile) {
  std::mt19937_64 rng(107);
  for (const auto& f : oracle::test_profiles())
    for (int k = 0; k < 10; ++k) {
      const Vec3 n0 = oracle::random_unit(rng);
      const Vec3 x = oracle::random_point(rng, 0.5, 5.0);
      EXPECT_LT(max_abs(covariant_derivative_n(f, n0, x, 1e-5)), 1e-6) << f.label();
    }
}

TEST(CovariantDerivative, UniformFieldIsNotParallel) {
  // The connection is nonzero, so a constant field fails to be parallel.
  const auto uniform = [](const Vec3&) { return kNorthPole; };
  EXPECT_GT(max_abs(covariant_derivative(uniform, flat_connection_field(kDecay), {1, 0.5, 0},
                                         1e-5)),
            0.1);
}

TEST(CovariantDerivative, HedgehogIsNotParallel) {
  const auto hh = [](const Vec3& x) { return hedgehog_field(kDecay, x); };
  EXPECT_GT(max_abs(covariant_derivative(hh, flat_connection_field(kDecay), {1, 0.5, 0.3},
                                         1e-5)),
            0.01);
}

TEST(SphericalFrame, AxisIsRadialAndAngleIsProfileValue) {
  const double r0 = 0.8;
  const So3Vector v = log_so3(spherical_matrix(kDecay, {0, 0, r0}));
  EXPECT_LT(std::hypot(v.f[0], v.f[1]), 1e-15);
  EXPECT_NEAR(std::fabs(v.f[2]), kDecay(r0), 1e-12);
}

TEST(SphericalFrame, ApproachesIdentityFarOut) {
  std::mt19937_64 rng(109);
  for (int k = 0; k < 10; ++k)
    EXPECT_LT(oracle::max_abs_diff(spherical_matrix(kDecay, oracle::random_unit(rng) * 50.0).matrix(),
                                   Mat3::identity()),
              1e-6);
  EXPECT_EQ(spherical_matrix(ProfileFunction::zero(), {1, 2, 3}).matrix(), Mat3::identity());
}

TEST(SphericalFrame, HalfTurnWhereProfileEqualsPi) {
  const ProfileFunction f = ProfileFunction::gaussian(pi, 1.0);
  const Mat3 s = spherical_matrix(f, Vec3{0.6, 0.0, 0.8} * 1e-5, 1e-12).matrix();
  // f(1e-5) = pi to 1e-10: rotation by pi about (0.6, 0, 0.8), i.e. 2 u u^T - 1
  const Vec3 u{0.6, 0.0, 0.8};
  EXPECT_LT(oracle::max_abs_diff(s, outer(u, u) * 2.0 - Mat3::identity()), 1e-9);
}

TEST(SphericalFrame, RotationCovariance) {
  std::mt19937_64 rng(113);
  for (int k = 0; k < 50; ++k) {
    const Mat3 rot = oracle::random_rotation(rng);
    const Vec3 x = oracle::random_point(rng, 0.1, 5.0);
    EXPECT_LT(oracle::max_abs_diff(spherical_matrix(kDecay, rot * x).matrix(),
                                   rot * spherical_matrix(kDecay, x).matrix() * transpose(rot)),
              1e-12);
  }
}

TEST(Director, AxisValues) {
  for (double r : {0.2, 1.0, 3.0}) {
    EXPECT_LT(oracle::max_abs_diff(nfield_cartesian(kDecay, {0, 0, r}), kNorthPole), 1e-15);
    const double f = kDecay(r);
    EXPECT_LT(oracle::max_abs_diff(nfield_cartesian(kDecay, {r, 0, 0}),
                                   Vec3(0, std::sin(f), std::cos(f))),
              1e-15);
  }
  const double f1 = pi * std::exp(-1.0) / 2;
  EXPECT_LT(oracle::max_abs_diff(nfield_cartesian(kDecay, {1, 0, 0}),
                                 Vec3(0, std::sin(f1), std::cos(f1))),
            1e-15);
  EXPECT_LT(oracle::max_abs_diff(nfield_spherical(kDecay, 1.0, 0.0, 0.7), kNorthPole), 1e-15);
  EXPECT_LT(oracle::max_abs_diff(nfield_spherical(kDecay, 1.0, pi / 2, 0.0),
                                 Vec3(0, std::sin(f1), std::cos(f1))),
            1e-15);
}

TEST(Director, PlaneSectionFarFieldAndAxisLine) {
  EXPECT_LT(max_abs(plane_section_x2(kDecay, 30.0, 40.0) - kNorthPole), 1e-6);
  for (double x1 : {0.3, 1.0, 2.5}) {
    const double f = kDecay(x1);
    const Vec3 n = plane_section_x2(kDecay, x1, 0.0);
    EXPECT_EQ(n[0], 0.0);
    EXPECT_NEAR(n[1], std::sin(f), 1e-15);
    EXPECT_NEAR(n[2], std::cos(f), 1e-15);
    EXPECT_LT(std::hypot(n[0], n[2]), 1.0);
  }
}

TEST(Hedgehog, PBasics) {
  EXPECT_EQ(hedgehog_P(0.0).matrix(), Mat3::identity());
  for (double t = 0.0; t <= pi; t += pi / 16) {
    const Mat3 p = hedgehog_P(t).matrix();
    EXPECT_LT(RotationMatrix::orthogonality_defect(p), 1e-15);
    EXPECT_NEAR(det(p), 1.0, 1e-15);
    EXPECT_LT(oracle::max_abs_diff(Vec3{std::cos(t), -std::sin(t), 0.0} * p, Vec3(1, 0, 0)), 1e-15);
  }
}

TEST(Hedgehog, SpecificPointsAndUnitNorm) {
  EXPECT_LT(max_abs(hedgehog_field(ProfileFunction::zero(), {0.01, 0.02, 1.0}) -
                    Vec3{0.01, 0.02, 1.0} / norm(Vec3{0.01, 0.02, 1.0})),
            1e-15);
  const Vec3 x{1, -2, 0.5};
  EXPECT_LT(max_abs(hedgehog_field(kDecay, x) - x / norm(x)), 1e-10);
}

TEST(Classification, DirectionalLimitValues) {
  for (double f0 : {0.0, 1.0, pi / 2})
    EXPECT_LT(oracle::max_abs_diff(directional_limit(ProfileFunction::gaussian(f0, 1), kNorthPole),
                                   kNorthPole),
              1e-15);
  EXPECT_LT(oracle::max_abs_diff(directional_limit(kDecay, {1, 0, 0}), Vec3(0, 1, 0)), 1e-15);
  EXPECT_LT(oracle::max_abs_diff(directional_limit(kDecay, {0, 1, 0}), Vec3(-1, 0, 0)), 1e-15);
}

TEST(Classification, HalfTurnLimitsDifferBetweenAxes) {
  // Along +-3 the limit is n0, along +-1 it is -n0.
  const ProfileFunction f = ProfileFunction::exp_decay(pi, 1.0);
  for (double s : {1.0, -1.0}) {
    EXPECT_LT(oracle::max_abs_diff(directional_limit(f, {0, 0, s}), kNorthPole), 1e-15);
    EXPECT_LT(oracle::max_abs_diff(directional_limit(f, {s, 0, 0}), -kNorthPole), 1e-15);
  }
}

TEST(CovariantDerivative, ZeroProfileIsExactlyZero) {
  EXPECT_EQ(max_abs(covariant_derivative_n(ProfileFunction::zero(), kNorthPole, {0.9, 0.4, -1.2}, 1e-5)),
            0.0);
  EXPECT_LT(max_abs(covariant_derivative_n(kDecay, kNorthPole, {0.9, 0.4, -1.2}, 1e-5)), 1e-6);
}

TEST(CovariantDerivative, SpuriousConnectionTermIsDetected) {
  const ConnectionField flat = flat_connection_field(kDecay);
  const ConnectionField perturbed = [flat](const Vec3& x) {
    ConnectionCoefficients a = flat(x);
    a.a += Mat3::identity() * (0.1 / norm(x));
    return a;
  };
  const auto n = [](const Vec3& x) { return transported_director(kDecay, kNorthPole, x); };
  EXPECT_GT(max_abs(covariant_derivative(n, perturbed, {0.9, 0.4, -1.2}, 1e-5)), 1e-3);
}
