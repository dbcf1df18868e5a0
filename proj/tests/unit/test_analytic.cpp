#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shg2d/analytic.hpp"
#include "shg2d/errors.hpp"

namespace {

using namespace shg2d::analytic;
constexpr double kPi = std::numbers::pi;

DiskParams to_params(const shg2d::oracle::DiskParams& o) {
  return {o.E, o.r0, o.eps_omega, o.eps_2omega, o.chi_perp, o.chi_par};
}

std::vector<shg2d::oracle::DiskParams> parameter_grid() {
  std::vector<shg2d::oracle::DiskParams> out;
  for (double E : {1.0, 0.7})
    for (double r0 : {1.0, 1.6})
      for (double e1 : {2.0, -3.5, 0.4})
        for (double e2 : {3.0, -2.2})
          for (double cp : {1.0, 0.0, -0.6})
            for (double cq : {0.0, 0.8}) out.push_back({E, r0, e1, e2, cp, cq});
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

TEST(DiskLeading, LinearFieldMatchesModeByModeSolution) {
  for (const auto& o : parameter_grid())
    for (int l = 1; l <= 4; ++l) {
      const auto ref = shg2d::oracle::disk_solution(o, l);
      const auto f = linear_leading(to_params(o), l);
      EXPECT_LT(rel(f.interior_coeff(l, l), ref.interior_linear), 1e-13);
      EXPECT_LT(rel(f.exterior_coeff(l, -l), ref.exterior_linear), 1e-13);
      EXPECT_DOUBLE_EQ(f.exterior_coeff(l, l), -o.E);
    }
}

TEST(DiskLeading, SecondHarmonicMatchesModeByModeSolution) {
  for (const auto& o : parameter_grid())
    for (int l = 1; l <= 4; ++l) {
      const auto ref = shg2d::oracle::disk_solution(o, l);
      const auto f = sh_leading(to_params(o), l);
      const double scale = std::abs(ref.exterior_top) + std::abs(ref.interior_constant) + 1e-300;
      EXPECT_LT(std::abs(f.exterior_coeff(2 * l, -2 * l) - ref.exterior_top) / scale, 1e-13);
      EXPECT_LT(std::abs(f.interior_coeff(2 * l, 2 * l) - ref.interior_top) / scale, 1e-13);
      EXPECT_LT(std::abs(f.interior_coeff(0, 0) - ref.interior_constant) / scale, 1e-13);
      for (const auto& t : f.exterior()) EXPECT_EQ(t.mode, 2 * l);
    }
}

TEST(DiskLeading, UniformFieldQuadrupoleIsEightPiOverThree) {
  const auto f = sh_leading({1, 1, 2, 3, 1, 0}, 1);
  EXPECT_NEAR(f.exterior_coeff(2, -2), 8 * kPi / 3, 1e-13);
  EXPECT_DOUBLE_EQ(f.exterior_coeff(1, -1), 0.0);
}

TEST(DiskLeading, SurfaceSourcesMatchOracle) {
  for (const auto& o : parameter_grid()) {
    const int l = 2;
    const auto src = surface_sources_leading(to_params(o), l);
    const double g = l * shg2d::oracle::disk_solution(o, l).interior_linear * std::pow(o.r0, l - 1);
    const double K = o.chi_perp * std::pow(o.eps_omega * g, 2);
    EXPECT_NEAR(src.p_perp.coefficient(0), K / 2, 1e-12 * (1 + std::abs(K)));
    EXPECT_NEAR(src.p_perp.coefficient(2 * l), K / 2, 1e-12 * (1 + std::abs(K)));
    const double sigma = 2.0 * l / o.r0 * o.chi_par * o.eps_omega * g * g;
    EXPECT_NEAR(src.sigma.coefficient(2 * l), sigma, 1e-12 * (1 + std::abs(sigma)));
  }
}

TEST(DiskLeading, FieldIsContinuousAcrossBoundaryUpToSurfaceJump) {
  // u+ - u- = 4 pi P_perp and d_r u+ - eps2 d_r u- = -4 pi sigma at r0.
  const shg2d::oracle::DiskParams o{1.0, 1.3, 2.0, 3.0, 0.7, 0.4};
  const int l = 2;
  const auto f = sh_leading(to_params(o), l);
  const auto src = surface_sources_leading(to_params(o), l);
  for (double t : {0.0, 0.5, 1.9, 4.0}) {
    EXPECT_NEAR(f.exterior_value(o.r0, t) - f.interior_value(o.r0, t), 4 * kPi * src.p_perp(t), 1e-11);
    EXPECT_NEAR(f.exterior_radial_derivative(o.r0, t) - o.eps_2omega * f.interior_radial_derivative(o.r0, t),
                -4 * kPi * src.sigma(t), 1e-11);
  }
}

TEST(ShapeFirstOrder, TrefoilDipoleIsMinusFortyPiOverNine) {
  const auto c = sh_first_order({1, 1, 2, 3, 1, 0}, 3, 1);
  EXPECT_EQ(c.lowest_mode(), 1);
  EXPECT_NEAR(c.amplitude(1), -40 * kPi / 9, 1e-12);
}

TEST(ShapeFirstOrder, UniformAndGeneralDegreeFormsAgree) {
  for (const auto& o : parameter_grid())
    for (int n = 3; n <= 9; ++n) {
      const auto a = sh_first_order(to_params(o), n, 1);
      const auto b = sh_first_order_general(to_params(o), n, 1);
      ASSERT_EQ(a.entries.size(), b.entries.size());
      for (std::size_t i = 0; i < a.entries.size(); ++i) {
        EXPECT_EQ(a.entries[i].mode, b.entries[i].mode);
        EXPECT_NEAR(a.entries[i].amplitude, b.entries[i].amplitude,
                    1e-11 * (1.0 + std::abs(b.entries[i].amplitude)))
            << "n=" << n << " mode " << a.entries[i].mode;
      }
    }
}

TEST(ShapeFirstOrder, ModesAreShiftedByTwiceTheDegree) {
  const auto c = sh_first_order({1, 1, 2, 3, 1, 0.5}, 7, 2);
  ASSERT_EQ(c.entries.size(), 3u);
  EXPECT_EQ(c.entries[0].mode, 3);
  EXPECT_EQ(c.entries[1].mode, 7);
  EXPECT_EQ(c.entries[2].mode, 11);
  EXPECT_EQ(c.lowest_mode(), 3);
}

TEST(ShapeFirstOrder, RegimeChecks) {
  const DiskParams p{1, 1, 2, 3, 1, 0};
  EXPECT_THROW(sh_first_order(p, 2, 1), shg2d::InvalidArgument);
  EXPECT_THROW(sh_first_order(p, 3, 3), shg2d::UnsupportedRegime);
  EXPECT_THROW(sh_first_order(p, 4, 2), shg2d::UnsupportedRegime);
  EXPECT_THROW(boundary_data_first_order(p, 4, 2), shg2d::UnsupportedRegime);
  EXPECT_NO_THROW(linear_first_order(p, 4, 2));
  EXPECT_THROW(sh_first_order({1, 1, -1, 3, 1, 0}, 3, 1), shg2d::ResonantPermittivity);
  EXPECT_THROW(sh_leading({1, 1, 2, -1, 1, 0}, 1), shg2d::ResonantPermittivity);
}

TEST(TwoTerm, DipoleForDegreesOneAndTwo) {
  const auto f = sh_two_term({1, 1, 2, 3, 1, 0}, 1, 2);
  EXPECT_NEAR(f.exterior_coeff(1, -1), 32 * kPi / 3, 1e-12);
  EXPECT_THROW(sh_two_term({1, 1, 2, 3, 1, 0}, 2, 2), shg2d::InvalidArgument);
}

TEST(TwoTerm, ReducesToSingleTermPartsPlusCrossTerms) {
  // The self terms of each degree are the single-term leading fields.
  const DiskParams p{0.8, 1.2, 2.5, -4.0, 0.9, 0.3};
  const auto two = sh_two_term(p, 1, 4);
  const auto one = sh_leading(p, 1);
  const auto four = sh_leading(p, 4);
  EXPECT_NEAR(two.exterior_coeff(2, -2), one.exterior_coeff(2, -2), 1e-12);
  EXPECT_NEAR(two.exterior_coeff(8, -8), four.exterior_coeff(8, -8), 1e-10 * std::abs(four.exterior_coeff(8, -8)));
  EXPECT_NE(two.exterior_coeff(3, -3), 0.0);
  EXPECT_NE(two.exterior_coeff(5, -5), 0.0);
}

TEST(Prediction, LowestModesAndExponents) {
  auto p = predict_radiation(DiskCase{1});
  EXPECT_EQ(p.lowest_mode, 2);
  EXPECT_EQ(p.exponents.omega, 2);
  EXPECT_EQ(p.exponents.two_omega, 1);
  EXPECT_EQ(p.exponents.both, 3);
  p = predict_radiation(ShapeCase{3, 1});
  EXPECT_EQ(p.lowest_mode, 1);
  EXPECT_EQ(p.exponents.omega, 3);
  EXPECT_EQ(p.exponents.two_omega, 2);
  EXPECT_EQ(p.exponents.both, 4);
  p = predict_radiation(ShapeCase{5, 2});
  EXPECT_EQ(p.lowest_mode, 1);
  for (int n = 4; n <= 6; ++n) EXPECT_EQ(predict_radiation(ShapeCase{n, 1}).lowest_mode, n - 2);
  p = predict_radiation(TwoTermCase{1, 2});
  EXPECT_EQ(p.lowest_mode, 1);
}

TEST(AnalyticField, EnforcesHarmonicTermsAndMerges) {
  AnalyticField f(1.0);
  EXPECT_THROW(f.add_exterior(2, 3, 1.0), shg2d::InvalidArgument);
  f.add_exterior(2, -2, 1.0);
  f.add_exterior(2, -2, 0.5);
  EXPECT_DOUBLE_EQ(f.exterior_coeff(2, -2), 1.5);
  EXPECT_EQ(f.exterior().size(), 1u);
  EXPECT_DOUBLE_EQ(f.scaled(2.0).exterior_coeff(2, -2), 3.0);
  EXPECT_NEAR(f.value({2.0, 0.0}), 1.5 / 4.0, 1e-15);
}

TEST(MatchProblem, RecognizesTheClosedFormCases) {
  using shg2d::background::HarmonicBackground;
  using shg2d::geometry::build_boundary;
  auto prob = match_problem(build_boundary(1, 0, {}), HarmonicBackground::uniform(1.0), 2, 3, 1, 0);
  EXPECT_TRUE(std::holds_alternative<DiskCase>(prob.rcase));
  EXPECT_DOUBLE_EQ(prob.params.E, 1.0);
  prob = match_problem(build_boundary(1, 1e-3, {{3, 2.0}}), HarmonicBackground::uniform(1.0), 2, 3, 1, 0);
  ASSERT_TRUE(std::holds_alternative<ShapeCase>(prob.rcase));
  EXPECT_DOUBLE_EQ(prob.shape_scale, 2e-3);
  EXPECT_NEAR(tracked_amplitude(prob).amplitude, -40 * kPi / 9, 1e-12);
  prob = match_problem(build_boundary(1, 0, {}), HarmonicBackground({{1, -1}, {2, -1}}), 2, 3, 1, 0);
  EXPECT_TRUE(std::holds_alternative<TwoTermCase>(prob.rcase));
  EXPECT_NEAR(exterior_spectrum(prob).at(1), 32 * kPi / 3, 1e-12);
  EXPECT_THROW(match_problem(build_boundary(1, 0, {}), HarmonicBackground({{1, -1}, {2, -2}}), 2, 3, 1, 0),
               shg2d::UnsupportedRegime);
  EXPECT_THROW(match_problem(build_boundary(1, 0.01, {{3, 1}, {4, 1}}), HarmonicBackground::uniform(1), 2, 3, 1, 0),
               shg2d::UnsupportedRegime);
}

}  // namespace
