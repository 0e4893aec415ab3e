#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "regen/limit_laws.hpp"
#include "regen/pathsim.hpp"

namespace {

using regen::HorizonRule;
using regen::LevyModel;

TEST(Path, MonotoneAndConsistent) {
  const auto m = LevyModel::gamma(1.0);
  regen::Rng rng(5);
  const auto p = regen::simulate_path(m, HorizonRule::until_level(30.0), 1e-6, rng);
  ASSERT_GT(p.size(), 0u);
  EXPECT_GT(p.final_level(), 30.0);
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k > 0) EXPECT_GT(p.jump_times[k], p.jump_times[k - 1]);
    EXPECT_GE(p.jump_sizes[k], 1e-6);
    s += p.jump_sizes[k];
    EXPECT_NEAR(p.cum_sums[k], s, 1e-9 * s);
  }
  // S is right-continuous at jump times.
  EXPECT_DOUBLE_EQ(p.S(p.jump_times[3]), p.cum_sums[3]);
  EXPECT_DOUBLE_EQ(p.S(p.jump_times[3] - 1e-12), p.cum_sums[2]);
}

TEST(Path, FixedHorizonStopsAtTime) {
  const auto m = LevyModel::exponential(1.0);
  regen::Rng rng(9);
  const auto p = regen::simulate_path(m, HorizonRule::fixed(50.0), 0.0, rng);
  EXPECT_DOUBLE_EQ(p.horizon, 50.0);
  EXPECT_LE(p.jump_times.back(), 50.0);
}

TEST(Path, TruncatedMeanMatchesDriftLoss) {
  // E S(v) = v (m - int_0^eps x nu(dx)).
  const auto m = LevyModel::gamma(1.0);
  const double eps = 0.05, v = 5.0;
  const int reps = 20000;
  double sum = 0.0, sq = 0.0;
  for (int r = 0; r < reps; ++r) {
    regen::Rng rng = regen::make_rng(17, r);
    const auto p = regen::simulate_path(m, HorizonRule::fixed(v), eps, rng);
    const double s = p.final_level();
    sum += s;
    sq += s * s;
  }
  const double mean = sum / reps, var = sq / reps - mean * mean;
  EXPECT_NEAR(mean, v * (m.mean() - m.drift_loss(eps)), 4 * std::sqrt(var / reps));
}

TEST(Path, FirstPassageReadsPath) {
  regen::SubordinatorPath p;
  p.push(1.0, 0.5);
  p.push(2.5, 1.0);
  p.push(3.0, 2.0);
  EXPECT_DOUBLE_EQ(regen::first_passage(p, 0.2), 1.0);
  EXPECT_DOUBLE_EQ(regen::first_passage(p, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(regen::first_passage(p, 2.0), 3.0);
  EXPECT_THROW(regen::first_passage(p, 3.5), regen::HorizonError);
}

TEST(Path, HorizonErrorCarriesPartialPath) {
  const auto m = LevyModel::exponential(1.0);
  regen::Rng rng(1);
  try {
    regen::simulate_path(m, HorizonRule::until_level(1e6), 0.0, rng, 100);
    FAIL() << "expected PathHorizonError";
  } catch (const regen::PathHorizonError& e) {
    EXPECT_EQ(e.partial_path().size(), 100u);
  }
}

TEST(Walk, RenewalCount) {
  regen::RenewalWalk w;
  for (double x : {1.0, 1.0, 0.5}) w.push(x);
  EXPECT_EQ(regen::renewal_count(w, 0.0), 1u);
  EXPECT_EQ(regen::renewal_count(w, 1.0), 2u);
  EXPECT_EQ(regen::renewal_count(w, 2.4), 3u);
  EXPECT_THROW(regen::renewal_count(w, 2.5), regen::HorizonError);
}

TEST(Truncation, ChooseEpsMeetsBudget) {
  for (const auto& m : {LevyModel::gamma(1.0), LevyModel::log_power(2.0), LevyModel::dehaan_exp(1.0, 0.8)}) {
    const double n = 1e4, tau = regen::expected_horizon(m, n);
    const double eps = regen::choose_eps(m, n, tau);
    EXPECT_LE(n * tau * m.drift_loss(eps), 1e-3 * (1 + 1e-9)) << m.describe();
    EXPECT_GT(n * tau * m.drift_loss(eps * 1.5), 1e-3) << m.describe();
  }
  EXPECT_EQ(regen::choose_eps(LevyModel::exponential(1.0), 1e4, 10.0), 0.0);
}

// P{T(s) <= v} = P{S(v) > s} = Q(v, s) for the Gamma(1) process.
TEST(FirstPassage, GammaBridgeMatchesExactLaw) {
  const auto m = LevyModel::gamma(1.0);
  const double s = 5.0;
  std::vector<double> xs(20000);
  for (std::size_t r = 0; r < xs.size(); ++r) {
    regen::Rng rng = regen::make_rng(23, r);
    xs[r] = regen::sample_first_passage(m, s, rng);
  }
  const auto ks = regen::ks_test(xs, [s](double v) { return v <= 0 ? 0.0 : boost::math::gamma_q(v, s); });
  EXPECT_GT(ks.p_value, 1e-3) << "KS " << ks.statistic;
}

TEST(FirstPassage, TruncatedPathAgreesWithBridgeInMean) {
  // Path-based first passage for Gamma(1) through the generic route.
  const auto m = LevyModel::gamma(1.0);
  const double s = 20.0;
  const int reps = 4000;
  double a = 0, b = 0;
  for (int r = 0; r < reps; ++r) {
    regen::Rng r1 = regen::make_rng(1, r), r2 = regen::make_rng(2, r);
    a += regen::sample_first_passage(m, s, r1);
    const auto p = regen::simulate_path(m, HorizonRule::until_level(s), regen::fpt_eps(m, s), r2);
    b += regen::first_passage(p, s);
  }
  // Var T(s) ~ s for Gamma(1).
  EXPECT_NEAR(a / reps, b / reps, 4 * std::sqrt(2 * s / reps));
}

TEST(Path, CsvHasHeaderAndRows) {
  regen::SubordinatorPath p;
  p.push(0.5, 0.25);
  p.push(1.5, 0.5);
  std::ostringstream os;
  p.write_csv(os);
  const std::string s = os.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 3);
}

}  // namespace
