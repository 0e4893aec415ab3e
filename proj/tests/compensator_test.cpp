#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "regen/compensator.hpp"
#include "regen/experiment.hpp"

namespace {

using regen::LevyModel;

const LevyModel& expo() {
  static const LevyModel m = LevyModel::exponential(1.0);
  return m;
}

// Exponential(1): Phi(t) = 1 - (1 - e^{-t}) / t.
double phi_exp(double t) { return 1.0 - (-std::expm1(-t)) / t; }

TEST(Compensator, PartialSumByHand) {
  const regen::PhiTable tab(expo());
  regen::SubordinatorPath p;
  p.push(1.0, 0.5);
  p.push(3.0, 1.5);
  p.horizon = 3.0;
  const double t = 10.0;
  // Phi(t) on [0,1), Phi(t e^{-0.5}) on [1,2.5).
  const double expect = phi_exp(t) * 1.0 + phi_exp(t * std::exp(-0.5)) * 1.5;
  EXPECT_NEAR(regen::compensator_A(p, tab, t, 2.5), expect, 1e-8);
  EXPECT_THROW(regen::compensator_A(p, tab, t, 4.0), regen::HorizonError);
  EXPECT_THROW(regen::compensator_A(p, tab, t), regen::HorizonError);
}

TEST(Compensator, TerminalValueIsLimitOfPartial) {
  const regen::PhiTable tab(expo());
  regen::Rng rng(4);
  const double t = 100.0;
  auto p = regen::simulate_path(expo(), regen::HorizonRule::until_level(regen::compensator_level(tab, t) + 5), 0.0,
                                rng);
  const double full = regen::compensator_A(p, tab, t);
  const double partial = regen::compensator_A(p, tab, t, p.horizon);
  EXPECT_GE(full, partial);
  EXPECT_NEAR(full, partial, 1e-9 * full);
  EXPECT_GT(regen::compensator_A(p, tab, t, p.horizon / 2), 0.0);
}

TEST(Compensator, WalkSumByHand) {
  const regen::PhiTable tab(expo());
  regen::RenewalWalk w;
  const double t = 5.0;
  for (int k = 0; k < 60; ++k) w.push(1.0);
  double expect = 0;
  for (int k = 0; k <= 60; ++k) expect += phi_exp(t * std::exp(-k));
  // Table interpolation error is about 1e-8 relative per term.
  EXPECT_NEAR(regen::compensator_B(w, tab, t), expect, 1e-7);
}

TEST(Compensator, BRejectsInfiniteMeasure) {
  const auto g = LevyModel::gamma(1.0);
  const regen::PhiTable tab(g);
  regen::RenewalWalk w;
  w.push(100.0);
  EXPECT_THROW(regen::compensator_B(w, tab, 10.0), std::invalid_argument);
}

// E K(t) = E A(t) and E K(t,1) = E A1(t): the differences are martingale limits.
TEST(Compensator, CountsMinusCompensatorsHaveMeanZero) {
  for (const auto& m : {LevyModel::exponential(1.0), LevyModel::gamma(1.0)}) {
    const regen::PhiTable tab(m);
    const double t = 500.0;
    const double eps = regen::compensator_eps(m, tab, t);
    const int reps = 4000;
    double d = 0, d2 = 0, e = 0, e2 = 0;
    for (int r = 0; r < reps; ++r) {
      regen::Rng rng = regen::make_rng(31, r);
      const auto row = regen::sample_compensators(m, tab, t, eps, rng);
      const double x = row.K - row.A, y = row.K1 - row.A1;
      d += x, d2 += x * x, e += y, e2 += y * y;
    }
    d /= reps, e /= reps;
    EXPECT_NEAR(d, 0.0, 4 * std::sqrt((d2 / reps - d * d) / reps)) << m.describe();
    EXPECT_NEAR(e, 0.0, 4 * std::sqrt((e2 / reps - e * e) / reps)) << m.describe();
  }
}

}  // namespace
