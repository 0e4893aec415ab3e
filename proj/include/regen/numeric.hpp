#ifndef REGEN_NUMERIC_HPP_
#define REGEN_NUMERIC_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "regen/error.hpp"

namespace regen {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kPi = 3.14159265358979323846;

// 1 - exp(-x) for x = exp(lx), accurate when x underflows.
inline double one_minus_exp_neg(double lx) {
  if (lx < -30.0) {
    const double x = std::exp(lx);
    return x * (1.0 - 0.5 * x);
  }
  return -std::expm1(-std::exp(lx));
}

// log(1 - exp(-x)) for x = exp(lx).
inline double log_one_minus_exp_neg(double lx) {
  if (lx < -30.0) return lx - 0.5 * std::exp(lx);
  return std::log(-std::expm1(-std::exp(lx)));
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Asymptotic Kolmogorov tail probability P{sup|B| > lambda}.
inline double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace quad {

inline constexpr double kRelTol = 1e-10;
inline constexpr double kAbsFloor = 1e-14;

struct Estimate {
  double value = 0.0;
  double error = 0.0;

  Estimate& operator+=(const Estimate& o) {
    value += o.value;
    error += o.error;
    return *this;
  }
};

template <class F>
Estimate gauss_kronrod(const F& f, double a, double b) {
  if (!(b > a)) return {};
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 10, 1e-12, &err);
  return {v, err};
}

// Integrates over [lo, hi] (either end may be infinite) by sweeping finite
// panels outward from `start`. `panel(a, b)` returns the estimate on [a, b].
// Panels widen geometrically and the sweep in a direction stops once a panel
// contributes below 1e-17 of the running total.
template <class Panel>
Estimate sweep_panels(const Panel& panel, double lo, double hi, double start, double width0) {
  start = std::clamp(start, lo, hi);
  Estimate total;
  constexpr int kMaxPanels = 20000;
  constexpr double kGrowth = 1.3;

  auto negligible = [&](const Estimate& e) {
    return std::abs(e.value) <= 1e-17 * std::abs(total.value) + 1e-300;
  };

  double a = start;
  double w = width0;
  for (int k = 0; a < hi; ++k) {
    if (k > kMaxPanels) throw QuadratureError("panel sweep did not terminate", kInf);
    const double b = std::min(hi, a + w);
    const Estimate e = panel(a, b);
    total += e;
    if (k >= 2 && negligible(e)) break;
    a = b;
    w *= kGrowth;
  }
  double b = start;
  w = width0;
  for (int k = 0; b > lo; ++k) {
    if (k > kMaxPanels) throw QuadratureError("panel sweep did not terminate", kInf);
    const double a2 = std::max(lo, b - w);
    const Estimate e = panel(a2, b);
    total += e;
    if (k >= 2 && negligible(e)) break;
    b = a2;
    w *= kGrowth;
  }
  return total;
}

inline double checked(const Estimate& e, const char* what, double rel_tol = kRelTol) {
  if (!std::isfinite(e.value)) throw QuadratureError(std::string(what) + ": non-finite value", kInf);
  const double scale = std::abs(e.value);
  if (e.error > rel_tol * scale + kAbsFloor) {
    throw QuadratureError(what, scale > 0 ? e.error / scale : e.error);
  }
  return e.value;
}

// Double-exponential rules for smooth integrands with endpoint behaviour.
template <class F>
double tanh_sinh(const F& f, double a, double b, double tol = 1e-13) {
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  double err = 0.0;
  double l1 = 0.0;
  const double v = integrator.integrate(f, a, b, tol, &err, &l1);
  if (err > 1e-9 * std::max(1.0, l1)) throw QuadratureError("tanh_sinh", err / std::max(1e-300, l1));
  return v;
}

template <class F>
double exp_sinh(const F& f, double a, double tol = 1e-13) {
  thread_local boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  double l1 = 0.0;
  const double v = integrator.integrate(f, a, kInf, tol, &err, &l1);
  if (err > 1e-9 * std::max(1.0, l1)) throw QuadratureError("exp_sinh", err / std::max(1e-300, l1));
  return v;
}

}  // namespace quad
}  // namespace regen

#endif  // REGEN_NUMERIC_HPP_
