#include <cmath>
#include <functional>
#include <sstream>

#include <gtest/gtest.h>

#include "regen/oracle.hpp"

namespace {

using regen::LevyModel;
using regen::VLaw;

const LevyModel& atom() {
  static const LevyModel m = LevyModel::finite_atomic({{std::log(2.0), 1.0}});
  return m;
}

// Single atom log 2: gap k is [k log 2, (k+1) log 2) and holds each point with
// probability 2^{-k-1}, so E K_n = sum_k 1 - (1 - 2^{-k-1})^n.
double mean_k_by_gaps(int n) {
  double s = 0;
  for (int k = 0; k < 200; ++k) s += 1 - std::pow(1 - std::ldexp(1.0, -k - 1), n);
  return s;
}

TEST(ExactLaw, SmallValues) {
  regen::DecrementMatrix q(atom());
  const auto laws = regen::exact_joint_laws(q, 3);
  EXPECT_NEAR(laws[2].k_marginal()[2], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(laws[3].mean_K(), 15.0 / 7.0, 1e-12);
}

TEST(ExactLaw, MeanAgreesWithGapOccupancy) {
  regen::DecrementMatrix q(atom());
  const auto laws = regen::exact_joint_laws(q, 14);
  for (int n = 1; n <= 14; ++n) {
    EXPECT_NEAR(laws[static_cast<std::size_t>(n)].total(), 1.0, 1e-12);
    EXPECT_NEAR(laws[static_cast<std::size_t>(n)].mean_K(), mean_k_by_gaps(n), 1e-10) << n;
  }
}

TEST(ExactLaw, SupportAndBounds) {
  const auto law = regen::exact_joint_law(LevyModel::gamma(1.0), 9);
  for (const auto& [k, p] : law.joint_pmf) {
    EXPECT_GE(k.first, 1);
    EXPECT_LE(k.first, 9);
    EXPECT_LE(k.second, k.first);
    EXPECT_GE(p, 0.0);
  }
  EXPECT_NEAR(law.total(), 1.0, 1e-8);
  EXPECT_THROW(regen::exact_joint_law(atom(), 15), std::invalid_argument);
}

TEST(ExactLaw, CsvRows) {
  const auto law = regen::exact_joint_law(atom(), 2);
  std::ostringstream os;
  law.write_csv(os);
  EXPECT_EQ(os.str().substr(0, 13), "n,K,K1,prob\n2");
}

TEST(Distances, TotalVariation) {
  std::map<int, double> a{{1, 0.5}, {2, 0.5}}, b{{2, 0.25}, {3, 0.75}};
  EXPECT_DOUBLE_EQ(regen::tv_distance(a, b), 0.75);
  EXPECT_DOUBLE_EQ(regen::tv_distance(a, a), 0.0);
  const auto e = regen::empirical_pmf(std::vector<int>{1, 1, 2, 4});
  EXPECT_DOUBLE_EQ(e.at(1), 0.5);
}

TEST(CenteringBounds, Constants) {
  const auto b = regen::centering_bound_constants();
  EXPECT_NEAR(b.upper, 0.21938393439552, 1e-12);
  EXPECT_NEAR(b.lower, -0.79659959929705, 1e-12);
}

TEST(CenteringBounds, HoldForSeveralLaws) {
  const auto expo = LevyModel::exponential(1.0);
  const std::vector<double> xs{0.0, 0.01, 0.3, 1.0, 3.0, 10.0, 50.0};
  for (const auto& v : {VLaw::point(1e-3), VLaw::point(0.3), VLaw::point(0.999), VLaw::uniform(),
                        VLaw::from_model(atom()), VLaw::from_model(expo)}) {
    const auto rep = regen::check_centering_bounds(v, xs);
    EXPECT_TRUE(rep.holds());
    EXPECT_DOUBLE_EQ(rep.points[0].diff, 0.0);
  }
}

TEST(CenteringBounds, PointMassDifferenceByHand) {
  // V = v: f1 - f2 = E1(v) - E1(v e^x) - min(x, -log v) for the point mass.
  const double v = 0.2, x = 4.0;
  const auto rep = regen::check_centering_bounds(VLaw::point(v), {x});
  const double expect = boost::math::expint(1, v) - boost::math::expint(1, v * std::exp(x)) - std::min(x, -std::log(v));
  EXPECT_NEAR(rep.points[0].diff, expect, 1e-8);
}

TEST(VLaw, LaplaceOfUniformAndModel) {
  EXPECT_NEAR(VLaw::uniform().laplace(2.0), (1 - std::exp(-2.0)) / 2.0, 1e-14);
  // Exponential(1): V = 1 - e^{-xi} is uniform.
  const auto expo = LevyModel::exponential(1.0);
  EXPECT_NEAR(VLaw::from_model(expo).laplace(2.0), (1 - std::exp(-2.0)) / 2.0, 1e-9);
  EXPECT_NEAR(VLaw::from_model(expo).below(1.0), std::exp(-1.0), 1e-9);
}

TEST(Renewal, FunctionalByHand) {
  regen::SubordinatorPath p;
  p.push(1.0, 2.0);
  p.push(1.5, 3.0);
  p.push(4.0, 1.0);
  const std::function<double(double)> v = [](double z) { return z; };
  // Levels 0 on [0,1), 2 on [1,1.5), 5 beyond t=4.
  EXPECT_DOUBLE_EQ(regen::renewal_functional(p, v, 4.0), 4.0 * 1.0 + 2.0 * 0.5);
}

TEST(Renewal, RatioNearOneForGamma) {
  const auto rep = regen::check_renewal_ratio(LevyModel::gamma(1.0), regen::RenewalTest::Phi, {50.0, 200.0}, 1000, 3);
  EXPECT_FALSE(rep.arithmetic);
  for (const auto& p : rep.points) EXPECT_NEAR(p.ratio, 1.0, 0.07) << p.t;
}

TEST(Renewal, LatticeVariant) {
  const auto rep = regen::check_renewal_ratio(atom(), regen::RenewalTest::Phi, {100 * std::log(2.0)}, 1000, 4);
  EXPECT_TRUE(rep.arithmetic);
  EXPECT_DOUBLE_EQ(rep.span, std::log(2.0));
  EXPECT_NEAR(rep.points[0].ratio, 1.0, 0.05);
}

}  // namespace
