#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "shg2d/errors.hpp"
#include "shg2d/geometry.hpp"

namespace {

using namespace shg2d::geometry;
constexpr double kPi = std::numbers::pi;

Eigen::Matrix2d rotation(double a) {
  Eigen::Matrix2d R;
  R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return R;
}

TEST(StarBoundary, ValidatesInputs) {
  EXPECT_THROW(build_boundary(0.0, 0.1, {{3, 1.0}}), shg2d::NonpositiveRadius);
  EXPECT_THROW(build_boundary(-1.0, 0.1, {{3, 1.0}}), shg2d::NonpositiveRadius);
  EXPECT_THROW(build_boundary(1.0, 0.1, {{0, 1.0}}), shg2d::InvalidMode);
  EXPECT_THROW(build_boundary(1.0, -0.1, {{3, 1.0}}), shg2d::InvalidArgument);
  EXPECT_THROW(build_boundary(1.0, 1.2, {{3, 1.0}}), shg2d::NonpositiveRadius);
  EXPECT_NO_THROW(build_boundary(1.0, 0.9, {{3, 1.0}}));
}

TEST(StarBoundary, RadiusAndDerivatives) {
  const auto b = build_boundary(1.5, 0.2, {{3, 1.0}, {5, -0.5}});
  const double h = 1e-5;
  for (double t : {0.0, 0.4, 2.1, 5.9}) {
    EXPECT_NEAR(b.radius(t), 1.5 * (1.0 + 0.2 * (std::cos(3 * t) - 0.5 * std::cos(5 * t))), 1e-14);
    EXPECT_NEAR(b.radius_d1(t), (b.radius(t + h) - b.radius(t - h)) / (2 * h), 1e-8);
    EXPECT_NEAR(b.radius_d2(t), (b.radius_d1(t + h) - b.radius_d1(t - h)) / (2 * h), 1e-7);
    EXPECT_LT((b.d1(t) - (b.point(t + h) - b.point(t - h)) / (2 * h)).norm(), 1e-8);
    EXPECT_LT((b.d2(t) - (b.d1(t + h) - b.d1(t - h)) / (2 * h)).norm(), 1e-7);
  }
  EXPECT_EQ(b.max_mode(), 5);
  EXPECT_FALSE(b.is_circle());
  EXPECT_TRUE(build_boundary(1.0, 0.0, {{3, 1.0}}).is_circle());
  EXPECT_TRUE(build_boundary(1.0, 1e-16, {{3, 1.0}}).is_circle());
}

TEST(StarBoundary, MirroredNegatesAmplitudes) {
  const auto b = build_boundary(1.0, 0.1, {{4, 1.0}});
  const auto m = b.mirrored();
  for (double t : {0.0, 0.3, 1.7}) EXPECT_NEAR(m.radius(t) - 1.0, -(b.radius(t) - 1.0), 1e-15);
  EXPECT_DOUBLE_EQ(b.with_epsilon(0.05).epsilon(), 0.05);
}

TEST(QuadratureGrid, CircleGeometryIsExact) {
  const auto g = sample_grid(build_boundary(2.0, 0.0, {}), 64);
  for (int j = 0; j < g.n; ++j) {
    EXPECT_NEAR(g.curvature(j), 0.5, 1e-14);
    EXPECT_NEAR(g.jacobian(j), 2.0, 1e-14);
    EXPECT_LT((g.normal.col(j) - g.point.col(j) / 2.0).norm(), 1e-14);
    EXPECT_NEAR(g.tangent.col(j).dot(g.normal.col(j)), 0.0, 1e-15);
  }
  EXPECT_NEAR(g.arc_weights().sum(), 4.0 * kPi, 1e-12);
  EXPECT_LT(g.centroid.norm(), 1e-14);
}

TEST(QuadratureGrid, PerimeterAndAreaMatchAdaptiveQuadrature) {
  const auto b = build_boundary(1.0, 0.25, {{3, 1.0}, {2, 0.4}});
  const auto g = sample_grid(b, 256);
  boost::math::quadrature::tanh_sinh<double> ts;
  const double perimeter = ts.integrate([&](double t) { return b.d1(t).norm(); }, 0.0, 2 * kPi);
  const double area = ts.integrate([&](double t) { return 0.5 * b.radius(t) * b.radius(t); }, 0.0, 2 * kPi);
  EXPECT_NEAR(g.arc_weights().sum(), perimeter, 1e-12);
  Eigen::VectorXd x_dot_nu(g.n);
  for (int j = 0; j < g.n; ++j) x_dot_nu(j) = 0.5 * g.point.col(j).dot(g.normal.col(j));
  EXPECT_NEAR(g.integrate(x_dot_nu), area, 1e-12);
  // Total curvature of a simple closed curve is 2 pi.
  EXPECT_NEAR(g.integrate(g.curvature), 2 * kPi, 1e-11);
}

TEST(QuadratureGrid, ArcDerivativeOfCoordinateIsTangent) {
  const auto g = sample_grid(build_boundary(1.0, 0.2, {{5, 1.0}}), 128);
  const Eigen::VectorXd x = g.point.row(0).transpose();
  const auto dx = g.arc_derivative(x);
  for (int j = 0; j < g.n; ++j) EXPECT_NEAR(dx(j), g.tangent(0, j), 1e-10);
}

TEST(QuadratureGrid, RejectsBadSizes) {
  const auto b = build_boundary(1.0, 0.1, {{3, 1.0}});
  EXPECT_THROW(sample_grid(b, 15), shg2d::InvalidArgument);
  EXPECT_THROW(sample_grid(b, 8), shg2d::InvalidArgument);
  EXPECT_THROW(sample_grid(b, 65), shg2d::InvalidArgument);
}

TEST(Symmetry, DegreeIsTwiceTheModeIndex) {
  int failures = 0;
  for (int n = 1; n <= 12; ++n) {
    const auto rep = symmetry_degree(build_boundary(1.0, 0.2, {{n, 1.0}}));
    if (!rep.degree || *rep.degree != 2 * n) ++failures;
    if (rep.inversion_symmetric != (n % 2 == 0)) ++failures;
    if (rep.abelian_largest_group != (n <= 2)) ++failures;
  }
  EXPECT_EQ(failures, 0);
}

TEST(Symmetry, DihedralInvarianceIffQDividesN) {
  int failures = 0;
  for (int n = 1; n <= 12; ++n) {
    const auto b = build_boundary(1.0, 0.2, {{n, 1.0}});
    for (int q = 1; q <= 12; ++q)
      if (dihedral_invariance(b, q) != (n % q == 0)) ++failures;
  }
  EXPECT_EQ(failures, 0);
}

TEST(Symmetry, MixedModesGiveTwiceTheGcd) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> idx(1, 12);
  for (int trial = 0; trial < 30; ++trial) {
    const int a = idx(rng), c = idx(rng);
    if (a == c) continue;
    const auto rep = symmetry_degree(build_boundary(1.0, 0.1, {{a, 1.0}, {c, 0.5}}));
    ASSERT_TRUE(rep.degree.has_value());
    EXPECT_EQ(*rep.degree, 2 * std::gcd(a, c)) << a << "," << c;
  }
}

TEST(Symmetry, CircleHasInfiniteDegree) {
  const auto rep = symmetry_degree(build_boundary(1.0, 0.0, {}));
  EXPECT_FALSE(rep.degree.has_value());
  EXPECT_TRUE(rep.inversion_symmetric);
}

TEST(Symmetry, HausdorffDistanceSeesRotations) {
  const auto b = build_boundary(1.0, 0.2, {{4, 1.0}});
  EXPECT_LT(hausdorff_under(b, rotation(kPi / 2), 512), 1e-10);
  EXPECT_GT(hausdorff_under(b, rotation(kPi / 4), 512), 0.1);
  Eigen::Matrix2d reflect;
  reflect << 1, 0, 0, -1;
  EXPECT_LT(hausdorff_under(b, reflect, 512), 1e-10);
}

TEST(Symmetry, RejectsBadArguments) {
  const auto b = build_boundary(1.0, 0.2, {{4, 1.0}});
  EXPECT_THROW(dihedral_invariance(b, 0), shg2d::InvalidArgument);
  EXPECT_THROW(symmetry_degree(b, 0), shg2d::InvalidArgument);
}

}  // namespace
