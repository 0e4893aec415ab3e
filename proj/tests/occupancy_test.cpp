#include <cmath>
#include <map>
#include <vector>

#include <boost/math/distributions/poisson.hpp>
#include <gtest/gtest.h>

#include "regen/occupancy.hpp"
#include "regen/oracle.hpp"
#include "regen/suite.hpp"

namespace {

using regen::Composition;
using regen::DecrementMatrix;
using regen::LevyModel;

const LevyModel& atom() {
  static const LevyModel m = LevyModel::finite_atomic({{std::log(2.0), 1.0}});
  return m;
}

TEST(Composition, CountsBySize) {
  const Composition c{{3, 1, 1, 2, 1}};
  EXPECT_EQ(c.n(), 8);
  EXPECT_EQ(c.K(), 5);
  EXPECT_EQ(c.K_r(1), 3);
  EXPECT_EQ(c.counts_by_size().at(2), 1);
  EXPECT_EQ(regen::block_counts(c), (regen::BlockCounts{5, 3}));
}

TEST(Samplers, CompositionsSumToN) {
  const auto g = LevyModel::gamma(1.0);
  const regen::TruncationSchedule sched(g, 500);
  DecrementMatrix q(g);
  for (int r = 0; r < 50; ++r) {
    regen::Rng rng = regen::make_rng(3, r);
    EXPECT_EQ(regen::sample_composition_sweep(g, 500, sched, rng).n(), 500);
    EXPECT_EQ(regen::sample_composition_path(g, 37, 1e-8, rng).n(), 37);
    EXPECT_EQ(regen::sample_composition_decrement(q, 120, rng).n(), 120);
    EXPECT_EQ(regen::sample_composition_sweep(atom(), 1000, regen::TruncationSchedule(atom(), 1000), rng).n(), 1000);
  }
}

TEST(Decrement, SingleAtomRowsByHand) {
  // 1 - e^{-x} = 1/2: q(n,m) = C(n,m) 2^{-n} / (1 - 2^{-n}).
  DecrementMatrix q(atom());
  EXPECT_NEAR(q.q(2, 1), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(q.q(2, 2), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(q.q(5, 2), 10.0 / 32.0 / (31.0 / 32.0), 1e-12);
}

TEST(Decrement, RowsSumToOne) {
  for (const auto& m : {LevyModel::gamma(1.0), LevyModel::log_power(2.0), LevyModel::exponential(1.0)}) {
    DecrementMatrix q(m);
    for (long long n : {1LL, 3LL, 40LL, 500LL}) {
      double s = 0;
      for (double p : q.row(n)) {
        EXPECT_GE(p, 0.0);
        s += p;
      }
      EXPECT_NEAR(s, 1.0, 1e-8) << m.describe() << " n=" << n;
    }
  }
}

TEST(Decrement, RangeChecks) {
  DecrementMatrix q(atom());
  EXPECT_THROW(q.q(0, 1), std::invalid_argument);
  EXPECT_THROW(q.q(3, 4), std::invalid_argument);
  EXPECT_THROW(q.q(DecrementMatrix::kMaxN + 1, 1), std::invalid_argument);
}

TEST(Binomial, PositiveBinomialMatchesConditionedLaw) {
  const long long n = 6;
  const double x = 0.2, p = -std::expm1(-x);
  std::map<long long, double> exact;
  const double norm = 1 - std::pow(1 - p, n);
  for (long long k = 1; k <= n; ++k)
    exact[k] = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) * std::pow(p, k) *
               std::pow(1 - p, n - k) / norm;
  std::vector<long long> xs(200000);
  regen::Rng rng(8);
  for (auto& v : xs) v = regen::draw_positive_binomial(n, x, rng);
  EXPECT_LT(regen::tv_distance(exact, regen::empirical_pmf(xs)), 0.01);
}

// The sweep never reads q; agreement with the recursion built from q checks both.
TEST(Samplers, SweepMatchesRecursion) {
  EXPECT_LT(regen::sweep_vs_recursion_tv(LevyModel::gamma(1.0), DecrementMatrix::Formula::Standard, 8, 20000, 41, 1),
            0.02);
  EXPECT_LT(regen::sweep_vs_recursion_tv(LevyModel::dehaan_exp(1.0, 0.8), DecrementMatrix::Formula::Standard, 6,
                                         20000, 42, 1),
            0.02);
}

// Deliberate fault: dropping C(n,m) from q must be caught.
TEST(Samplers, DroppedBinomialIsDetected) {
  const double tv =
      regen::sweep_vs_recursion_tv(LevyModel::gamma(1.0), DecrementMatrix::Formula::DropBinomial, 8, 20000, 41, 1);
  EXPECT_GT(tv, 0.1);
  EXPECT_FALSE(
      regen::check_sampler_equivalence(LevyModel::gamma(1.0), DecrementMatrix::Formula::DropBinomial, 41, 1).passed);
}

TEST(Samplers, LiteralAndSweepAgreeAtModerateN) {
  const auto g = LevyModel::gamma(1.0);
  const long long n = 300;
  const regen::TruncationSchedule sched(g, n);
  const double eps = regen::choose_eps(g, n, regen::expected_horizon(g, n));
  const int reps = 3000;
  double a = 0, b = 0, sa = 0, sb = 0;
  for (int r = 0; r < reps; ++r) {
    regen::Rng r1 = regen::make_rng(5, r), r2 = regen::make_rng(6, r);
    const double ka = regen::sample_composition_path(g, n, eps, r1).K();
    const double kb = regen::sample_composition_sweep(g, n, sched, r2).K();
    a += ka, sa += ka * ka, b += kb, sb += kb * kb;
  }
  a /= reps, b /= reps;
  const double se = std::sqrt((sa / reps - a * a + sb / reps - b * b) / reps);
  EXPECT_NEAR(a, b, 4 * se);
}

TEST(Samplers, DeletionPreservesLaw) {
  const auto g = LevyModel::gamma(1.0);
  const int n = 5;
  const auto law = regen::exact_joint_law(g, n);
  const regen::TruncationSchedule sched(g, n + 1);
  const auto emp = regen::sampled_joint_law(20000, 9, 1, [&](regen::Rng& rng) {
    return regen::delete_random_point(regen::sample_composition_sweep(g, n + 1, sched, rng), rng);
  });
  EXPECT_LT(regen::tv_distance(law.joint_pmf, emp), 0.02);
}

// E K(t) = sum_n P{pi_t = n} E K_n, exact laws for n <= 14.
TEST(Poissonized, MeanMatchesMixtureOfExactLaws) {
  const double t = 2.5;
  DecrementMatrix q(atom());
  const auto laws = regen::exact_joint_laws(q, 14);
  const boost::math::poisson_distribution<double> pois(t);
  double expect = 0;
  for (int n = 1; n <= 14; ++n) expect += boost::math::pdf(pois, n) * laws[static_cast<std::size_t>(n)].mean_K();
  const int reps = 40000;
  double s = 0, s2 = 0;
  for (int r = 0; r < reps; ++r) {
    regen::Rng rng = regen::make_rng(12, r);
    const double k = static_cast<double>(regen::sample_poissonized(atom(), t, 0.0, rng).K_t);
    s += k, s2 += k * k;
  }
  const double mean = s / reps;
  EXPECT_NEAR(mean, expect, 4 * std::sqrt((s2 / reps - mean * mean) / reps));
}

}  // namespace
