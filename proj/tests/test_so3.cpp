#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "disclination/so3.hpp"
#include "oracles.hpp"

using namespace disclination;
using std::numbers::pi;

TEST(LeviCivita, MatchesPermutationSign) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        EXPECT_EQ(levi_civita(i, j, k), oracle::permutation_sign(i, j, k));
}

TEST(VectorToBivector, ZeroVectorGivesZeroMatrix) {
  EXPECT_EQ(vector_to_bivector({0, 0, 0}).a, Mat3::zero());
}

TEST(VectorToBivector, ThirdAxisMatchesEpsilonEnumeration) {
  const Bivector3 b = vector_to_bivector({0, 0, 1});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(b(i, j), oracle::permutation_sign(2, i, j));
  EXPECT_EQ(b(0, 1), 1.0);
  EXPECT_EQ(b(1, 0), -1.0);
}

TEST(VectorToBivector, IsAntisymmetric) {
  const Bivector3 b = vector_to_bivector({0.3, -1.2, 2.0});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(b(i, j), -b(j, i));
}

TEST(BivectorToVector, RoundTrips) {
  EXPECT_EQ(bivector_to_vector(Mat3::zero()), Vec3(0, 0, 0));
  const Vec3 v{0.3, -1.2, 2.0};
  EXPECT_LT(oracle::max_abs_diff(bivector_to_vector(vector_to_bivector(v)), v), 1e-15);
  EXPECT_EQ(bivector_to_vector(vector_to_bivector({1, 2, 3})), Vec3(1, 2, 3));
}

TEST(BivectorToVector, RejectsSymmetricPart) {
  Mat3 m = vector_to_bivector({1, 2, 3}).a;
  m[0][1] += 1e-3;
  m[1][0] += 1e-3;
  EXPECT_THROW(bivector_to_vector(m, 1e-9), PreconditionError);
}

TEST(ExpSo3, ZeroIsIdentity) { EXPECT_EQ(exp_so3({{0, 0, 0}}).matrix(), Mat3::identity()); }

TEST(ExpSo3, QuarterTurnMatchesSeries) {
  const Vec3 f{0, 0, pi / 2};
  const Mat3 s = exp_so3({f}).matrix();
  EXPECT_LT(oracle::max_abs_diff(s, oracle::series_exp_so3(f)), 1e-12);
  // row-vector action: e1 -> e2
  EXPECT_LT(oracle::max_abs_diff(apply_rotation({1, 0, 0}, exp_so3({f})), Vec3(0, 1, 0)), 1e-15);
}

TEST(ExpSo3, FullTurnIsIdentity) {
  EXPECT_LT(oracle::max_abs_diff(exp_so3({{0, 0, 2 * pi}}).matrix(), Mat3::identity()), 1e-12);
}

TEST(ExpSo3, RandomVectorsAreRotationsAndMatchSeries) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, 4 * pi);
  for (int k = 0; k < 1000; ++k) {
    const Vec3 f = oracle::random_unit(rng) * angle(rng);
    const Mat3 s = exp_so3({f}).matrix();
    EXPECT_LT(RotationMatrix::orthogonality_defect(s), 1e-12);
    EXPECT_LT(std::fabs(det(s) - 1.0), 1e-12);
    EXPECT_LT(oracle::max_abs_diff(s, oracle::series_exp_so3(f)), 1e-12);
    EXPECT_LT(oracle::max_abs_diff(exp_so3({-f}).matrix(), transpose(s)), 1e-12);
  }
}

TEST(ExpSo3, SmallAngleSeamIsContinuous) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const Vec3 u = oracle::random_unit(rng);
    const Mat3 below = exp_so3({u * (kSmallAngle * (1.0 - 1e-12))}).matrix();
    const Mat3 at = exp_so3({u * kSmallAngle}).matrix();
    const Mat3 generic = exp_so3_signed(u, kSmallAngle * (1.0 - 1e-12)).matrix();
    EXPECT_LT(oracle::max_abs_diff(below, at), 1e-13);
    EXPECT_LT(oracle::max_abs_diff(below, generic), 1e-13);
  }
}

TEST(ExpSo3, SignedAngleFormulaIsInvariantUnderJointSignFlip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-3 * pi, 3 * pi);
  for (int k = 0; k < 100; ++k) {
    const Vec3 u = oracle::random_unit(rng);
    const double a = angle(rng);
    const Mat3 s = exp_so3_signed(u, a).matrix();
    EXPECT_LT(oracle::max_abs_diff(s, exp_so3_signed(-u, -a).matrix()), 1e-14);
    EXPECT_LT(oracle::max_abs_diff(s, exp_so3({u * a}).matrix()), 1e-12);
  }
}

TEST(LogSo3, IdentityGivesZero) {
  EXPECT_EQ(log_so3(RotationMatrix::identity()).f, Vec3(0, 0, 0));
}

TEST(LogSo3, RoundTripsGenericRotation) {
  const Vec3 f{0.1, -0.2, 0.3};
  EXPECT_LT(oracle::max_abs_diff(log_so3(exp_so3({f})).f, f), 1e-10);
}

TEST(LogSo3, HalfTurnUsesSymmetricPart) {
  Mat3 m = Mat3::identity();
  m[1][1] = m[2][2] = -1.0;
  const RotationMatrix s(m);
  const So3Vector v = log_so3(s);
  EXPECT_NEAR(v.angle(), pi, 1e-12);
  EXPECT_NEAR(std::fabs(v.f[0]), pi, 1e-12);
  EXPECT_LT(oracle::max_abs_diff(exp_so3(v).matrix(), m), kOrthTol);
}

TEST(LogSo3, RandomRoundTripsStayOnPrincipalBranch) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.0, 3 * pi);
  for (int k = 0; k < 500; ++k) {
    const RotationMatrix s = exp_so3({oracle::random_unit(rng) * angle(rng)});
    const So3Vector v = log_so3(s);
    EXPECT_LE(v.angle(), pi + 1e-12);
    EXPECT_LT(oracle::max_abs_diff(exp_so3(v).matrix(), s.matrix()), kOrthTol);
  }
  // near the half-turn from both sides
  for (double a : {pi - 1e-7, pi - 1e-5, pi}) {
    const Vec3 u = oracle::random_unit(rng);
    const RotationMatrix s = exp_so3({u * a});
    EXPECT_LT(oracle::max_abs_diff(exp_so3(log_so3(s)).matrix(), s.matrix()), kOrthTol);
  }
}

TEST(LogSo3, RejectsNonOrthogonalInput) {
  Mat3 m = Mat3::identity();
  m[0][1] = 0.1;
  EXPECT_THROW(RotationMatrix{m}, PreconditionError);
}

TEST(ApplyRotation, IdentityLeavesVectorUnchanged) {
  const Vec3 n0{0.2, -0.5, 0.8};
  EXPECT_EQ(apply_rotation(n0, RotationMatrix::identity()), n0);
}

TEST(ApplyRotation, QuarterTurnAboutFirstAxisMatchesSeries) {
  const Vec3 f{pi / 2, 0, 0};
  const Vec3 n = apply_rotation({0, 0, 1}, exp_so3({f}));
  const Vec3 expected = Vec3{0, 0, 1} * oracle::series_exp_so3(f);
  EXPECT_LT(oracle::max_abs_diff(n, expected), 1e-12);
  EXPECT_LT(oracle::max_abs_diff(n, Vec3(0, -1, 0)), 1e-12);
}

TEST(ApplyRotation, PreservesNorm) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0.0, 4 * pi), len(0.1, 10.0);
  for (int k = 0; k < 100; ++k) {
    const Vec3 n0 = oracle::random_unit(rng) * len(rng);
    const RotationMatrix s = exp_so3({oracle::random_unit(rng) * angle(rng)});
    EXPECT_NEAR(norm(apply_rotation(n0, s)), norm(n0), kOrthTol);
  }
}

TEST(ProjectToSo3, RestoresOrthogonality) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> noise(-1e-6, 1e-6);
  for (int k = 0; k < 50; ++k) {
    Mat3 m = exp_so3({oracle::random_unit(rng) * 1.3}).matrix();
    for (auto& row : m.m)
      for (auto& v : row) v += noise(rng);
    double corr = 0.0;
    const RotationMatrix s = project_to_so3(m, &corr);
    EXPECT_LT(RotationMatrix::orthogonality_defect(s.matrix()), 1e-14);
    EXPECT_LT(corr, 1e-5);
  }
}
