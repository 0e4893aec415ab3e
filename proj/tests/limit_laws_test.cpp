#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "regen/limit_laws.hpp"

namespace {

using regen::LawKind;
using regen::LimitLaw;

TEST(LimitLaw, Scales) {
  EXPECT_NEAR(LimitLaw::make(LawKind::J_beta, 2.0, 1.0).variance(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(LimitLaw::make(LawKind::K_exp, 2.0).variance(), 0.5, 1e-15);
  EXPECT_NEAR(LimitLaw::make(LawKind::J1_beta, 2.0, 2.0).variance(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(LimitLaw::make(LawKind::J_beta, 1.5, 2.0).scale, std::pow(4.0, -1 / 1.5), 1e-15);
  EXPECT_THROW(LimitLaw::make(LawKind::Z1, 1.0), std::invalid_argument);
  EXPECT_THROW(LimitLaw::make(LawKind::J1_beta, 2.0, 1.0), std::invalid_argument);
}

TEST(LimitLaw, SpotValues) {
  EXPECT_NEAR(regen::integral_log_cf(LimitLaw::make(LawKind::J_beta, 2.0, 1.0), 1.0).real(), -1.0 / 6.0, 1e-12);
  EXPECT_NEAR(regen::integral_log_cf(LimitLaw::make(LawKind::K_exp, 2.0), 1.0).real(), -0.25, 1e-12);
  EXPECT_NEAR(std::abs(regen::stable_cf(1.5, 1.0)), std::exp(-std::sqrt(2 * M_PI)), 1e-12);
}

TEST(LimitLaw, IntegralMatchesClosedForm) {
  for (double a : {2.0, 1.8, 1.5, 1.2}) {
    std::vector<LimitLaw> laws{LimitLaw::make(LawKind::K_exp, a), LimitLaw::make(LawKind::J1_beta, a, 2.5)};
    for (double b : {0.0, 0.5, 3.0}) laws.push_back(LimitLaw::make(LawKind::J_beta, a, b));
    for (const auto& law : laws)
      for (double u = -3; u <= 3; u += 0.125)
        EXPECT_LT(std::abs(regen::integral_log_cf(law, u) - regen::closed_form_log_cf(law, u)), 1e-8)
            << "alpha=" << a << " kind=" << regen::to_string(law.kind) << " u=" << u;
  }
}

TEST(LimitLaw, StableCfProperties) {
  for (double a : {1.1, 1.5, 1.9}) {
    EXPECT_EQ(regen::stable_cf(a, 0.0), std::complex<double>(1.0, 0.0));
    for (double u : {-2.0, -0.5, 0.7, 3.0}) {
      EXPECT_LE(std::abs(regen::stable_cf(a, u)), 1.0);
      EXPECT_NEAR(std::abs(regen::stable_cf(a, -u) - std::conj(regen::stable_cf(a, u))), 0.0, 1e-14);
    }
  }
}

TEST(Sampler, StableDrawsMatchCf) {
  for (double a : {1.3, 1.7}) {
    const auto law = LimitLaw::make(LawKind::J_beta, a, 1.0);
    const auto xs = regen::sample_reference(law, 99, 200000);
    EXPECT_LT(regen::cf_distance(xs, law), 0.01) << a;
  }
}

TEST(Sampler, NormalBranch) {
  const auto law = LimitLaw::normal(0.5);
  const auto xs = regen::sample_reference(law, 3, 100000);
  double s = 0, s2 = 0;
  for (double x : xs) s += x, s2 += x * x;
  EXPECT_NEAR(s / xs.size(), 0.0, 0.01);
  EXPECT_NEAR(s2 / xs.size(), 0.25, 0.01);
  EXPECT_GT(regen::ks_distance(xs, law).p_value, 1e-3);
}

TEST(Ks, DetectsShift) {
  const auto law = LimitLaw::normal(1.0);
  auto xs = regen::sample_reference(law, 5, 5000);
  EXPECT_GT(regen::ks_distance(xs, law).p_value, 1e-3);
  for (double& x : xs) x += 0.2;
  const auto r = regen::ks_distance(xs, law);
  EXPECT_LT(r.p_value, 1e-6);
  EXPECT_NEAR(r.statistic, regen::normal_cdf(0.1) - regen::normal_cdf(-0.1), 0.03);
}

TEST(Ks, StableReferenceCdf) {
  const auto law = LimitLaw::make(LawKind::K_exp, 1.5);
  const auto xs = regen::sample_reference(law, 71, 20000);
  EXPECT_GT(regen::ks_distance(xs, law).p_value, 1e-3);
}

}  // namespace
