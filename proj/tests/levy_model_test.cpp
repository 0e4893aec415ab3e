#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <gtest/gtest.h>

#include "regen/levy_model.hpp"

namespace {

using regen::LevyModel;

// Gamma(1): with w = 1 - e^{-x}, Phi(t) = int_0^1 (1 - e^{-t w}) / (-log(1 - w)) dw.
double gamma_phi_oracle(double t) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([t](double w) { return -std::expm1(-t * w) / -std::log1p(-w); }, 0.0, 1.0);
}

TEST(LevyModel, SingleAtomClosedForms) {
  const auto m = LevyModel::finite_atomic({{std::log(2.0), 3.0}});
  EXPECT_DOUBLE_EQ(m.total_mass(), 1.0);
  for (double t : {0.1, 1.0, 7.0, 100.0}) {
    EXPECT_NEAR(m.phi(t), -std::expm1(-t / 2), 1e-12);
    EXPECT_NEAR(m.phi_hat(t), 1 - std::pow(2.0, -t), 1e-12);
  }
  EXPECT_NEAR(m.mean(), std::log(2.0), 1e-15);
  EXPECT_NEAR(m.increment_variance(), 0.0, 1e-15);
}

TEST(LevyModel, ExponentialMomentsAndPhi) {
  const auto m = LevyModel::exponential(1.0);
  EXPECT_NEAR(m.mean(), 1.0, 1e-10);
  EXPECT_NEAR(m.second_moment(), 2.0, 1e-9);
  EXPECT_NEAR(m.increment_variance(), 1.0, 1e-9);
  for (double t : {0.01, 0.5, 3.0, 1e4}) {
    EXPECT_NEAR(m.phi(t), 1 - (1 - std::exp(-t)) / t, 1e-10);
    EXPECT_NEAR(m.phi_hat(t), t / (1 + t), 1e-10);
  }
  const auto m2 = LevyModel::exponential(2.5);
  EXPECT_NEAR(m2.mean(), 1 / 2.5, 1e-10);
  EXPECT_NEAR(m2.phi_hat(4.0), 4.0 / (2.5 + 4.0), 1e-10);
}

TEST(LevyModel, GammaAgainstIndependentQuadrature) {
  const auto m = LevyModel::gamma(1.0);
  for (double t : {0.05, 1.0, 20.0, 1e3, 1e6}) {
    EXPECT_NEAR(m.phi(t) / gamma_phi_oracle(t), 1.0, 1e-9) << "t=" << t;
    EXPECT_NEAR(m.phi_hat(t), std::log1p(t), 1e-9 * std::log1p(t));
  }
  EXPECT_NEAR(m.mean(), 1.0, 1e-10);
  EXPECT_NEAR(m.second_moment(), 1.0, 1e-10);
  EXPECT_NEAR(m.tail(0.3), boost::math::expint(1, 0.3), 1e-10);
  EXPECT_NEAR(m.drift_loss(0.2), -std::expm1(-0.2), 1e-12);
}

TEST(LevyModel, DerivativesMatchFiniteDifferences) {
  for (const auto& m : {LevyModel::gamma(1.0), LevyModel::log_power(2.0), LevyModel::dehaan_exp(1.0, 0.8)}) {
    for (double t : {0.5, 10.0, 300.0}) {
      const double h = 1e-4 * t;
      const double fd = (m.phi(t + h) - m.phi(t - h)) / (2 * h);
      EXPECT_NEAR(m.phi_prime(t) / fd, 1.0, 1e-6) << m.describe() << " t=" << t;
      const double fd2 = (m.phi(t + h) - 2 * m.phi(t) + m.phi(t - h)) / (h * h);
      EXPECT_NEAR(m.phi_derivative(2, t) / fd2, 1.0, 1e-3) << m.describe() << " t=" << t;
    }
  }
}

TEST(LevyModel, PhiPropertiesOnLogGrid) {
  for (const auto& m : {LevyModel::finite_atomic({{0.3, 1}, {2.0, 2}}), LevyModel::exponential(1.0),
                        LevyModel::gamma(2.0), LevyModel::log_power(0.5), LevyModel::log_power(2.0),
                        LevyModel::dehaan_exp(2.0, 0.7),
                        LevyModel::heavy_composite(LevyModel::log_power(1.0), 1.5, 1.0)}) {
    const double slope0 = m.phi_prime(0.0);
    double prev = 0.0, prev_d = INFINITY;
    for (double y = -6; y <= 14; y += 0.25) {
      const double t = std::exp(y);
      const double p = m.phi(t), d = m.phi_prime(t);
      EXPECT_GE(p, prev - 1e-12) << m.describe();
      EXPECT_LE(d, prev_d * (1 + 1e-7)) << m.describe();
      EXPECT_LE(p, m.phi_hat(t) * (1 + 1e-9)) << m.describe();
      if (std::isfinite(slope0)) EXPECT_LE(p, slope0 * t * (1 + 1e-9)) << m.describe();
      prev = p;
      prev_d = d;
    }
  }
}

TEST(LevyModel, GrowthConditionsVerified) {
  EXPECT_TRUE(regen::verify_condition(LevyModel::finite_atomic({{1.0, 1.0}})).consistent);
  EXPECT_TRUE(regen::verify_condition(LevyModel::exponential(1.0)).consistent);
  EXPECT_TRUE(regen::verify_condition(LevyModel::gamma(1.0)).consistent);
  EXPECT_TRUE(regen::verify_condition(LevyModel::log_power(2.0)).consistent);
  EXPECT_TRUE(regen::verify_condition(LevyModel::dehaan_exp(1.0, 0.8)).consistent);
}

TEST(LevyModel, LogPowerGrowth) {
  const auto m = LevyModel::log_power(2.0);
  EXPECT_NEAR(m.phi_log(400.0) / m.phi_log(200.0), 4.0, 0.2);
}

TEST(LevyModel, DeHaanAuxiliaryFunction) {
  const auto m = LevyModel::dehaan_exp(1.0, 0.8);
  const double t = 1000.0, h = regen::auxiliary_h(m, t);
  for (double u : {0.5, 1.0, 2.0}) EXPECT_NEAR(m.phi_log(t - u * h) / m.phi_log(t), std::exp(-u), 0.05);
}

TEST(LevyModel, JumpSamplingMatchesTail) {
  const auto m = LevyModel::gamma(1.0);
  regen::Rng rng(11);
  const double eps = 1e-3, x0 = 0.5;
  const int n = 200000;
  int above = 0;
  for (int i = 0; i < n; ++i) above += m.draw_jump(eps, rng) > x0;
  const double p = m.tail(x0) / m.jump_rate(eps);
  EXPECT_NEAR(above / double(n), p, 4 * std::sqrt(p * (1 - p) / n));
}

TEST(LevyModel, InvalidParametersThrow) {
  EXPECT_THROW(LevyModel::finite_atomic({}), std::invalid_argument);
  EXPECT_THROW(LevyModel::finite_atomic({{-1.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(LevyModel::gamma(0.0), std::invalid_argument);
  EXPECT_THROW(LevyModel::dehaan_exp(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(LevyModel::heavy_composite(LevyModel::gamma(1.0), 1.5, 1.0), std::invalid_argument);
  EXPECT_THROW(LevyModel::heavy_composite(LevyModel::log_power(1.0), 2.5, 1.0), std::invalid_argument);
  EXPECT_THROW(LevyModel::gamma(1.0).phi(-1.0), std::invalid_argument);
}

TEST(PhiTable, AgreesWithDirectEvaluation) {
  for (const auto& m : {LevyModel::gamma(1.0), LevyModel::exponential(1.0), LevyModel::dehaan_exp(1.0, 0.8)}) {
    const regen::PhiTable tab(m);
    for (double y = -45; y < 60; y += 0.37) {
      EXPECT_NEAR(tab.phi_log(y), m.phi_log(y), 1e-7 * std::max(1.0, m.phi_log(y))) << m.describe() << " y=" << y;
      EXPECT_NEAR(tab.phi_prime_scaled_log(y), m.phi_derivative_scaled_log(1, y),
                  1e-7 * std::max(1e-3, m.phi_derivative_scaled_log(1, y)))
          << m.describe() << " y=" << y;
    }
  }
}

}  // namespace
