#ifndef REGEN_LIMIT_LAWS_HPP_
#define REGEN_LIMIT_LAWS_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "regen/numeric.hpp"
#include "regen/rng.hpp"

namespace regen {

// J_beta  = beta int_0^1 Z(1-y) y^{beta-1} dy   (beta = 0 gives Z(1))
// K_exp   = int_0^inf Z(y) e^{-y} dy
// Z1      = Z(1)
// J1_beta = (beta-1) int_0^1 Z(1-y) y^{beta-2} dy
enum class LawKind { J_beta, K_exp, Z1, J1_beta };

inline const char* to_string(LawKind k) {
  switch (k) {
    case LawKind::J_beta: return "J_beta";
    case LawKind::K_exp: return "K_exp";
    case LawKind::Z1: return "Z1";
    case LawKind::J1_beta: return "J1_beta";
  }
  return "?";
}

inline LawKind parse_law_kind(const std::string& s) {
  if (s == "J_beta" || s == "J") return LawKind::J_beta;
  if (s == "K_exp" || s == "K") return LawKind::K_exp;
  if (s == "Z1") return LawKind::Z1;
  if (s == "J1_beta" || s == "J1") return LawKind::J1_beta;
  throw std::invalid_argument("unknown law kind: " + s);
}

// Z(1) is standard normal-type (log-CF -u^2/2) at alpha = 2 and spectrally
// negative alpha-stable for alpha in (1,2). Each law is scale * Z(1).
struct LimitLaw {
  double alpha = 2.0;
  double beta = 0.0;
  LawKind kind = LawKind::Z1;
  double scale = 1.0;

  static double scale_for(LawKind kind, double alpha, double beta) {
    switch (kind) {
      case LawKind::J_beta: return std::pow(alpha * beta + 1.0, -1.0 / alpha);
      case LawKind::K_exp: return std::pow(alpha, -1.0 / alpha);
      case LawKind::Z1: return 1.0;
      case LawKind::J1_beta: return std::pow(alpha * (beta - 1.0) + 1.0, -1.0 / alpha);
    }
    return 1.0;
  }

  static LimitLaw make(LawKind kind, double alpha, double beta = 0.0) {
    if (!(alpha > 1.0 && alpha <= 2.0)) throw std::invalid_argument("alpha must lie in (1,2]");
    if (kind == LawKind::J_beta && beta < 0) throw std::invalid_argument("J_beta needs beta >= 0");
    if (kind == LawKind::J1_beta && beta <= 1) throw std::invalid_argument("J1_beta needs beta > 1");
    return {alpha, beta, kind, scale_for(kind, alpha, beta)};
  }

  // Centered normal with standard deviation sd.
  static LimitLaw normal(double sd) { return {2.0, 0.0, LawKind::Z1, sd}; }

  bool is_normal() const { return alpha == 2.0; }
  double variance() const { return is_normal() ? scale * scale : kInf; }
};

// exp{-|u|^alpha Gamma(1-alpha)(cos(pi alpha/2) + i sin(pi alpha/2) sgn u)}
inline std::complex<double> stable_log_cf(double alpha, double u) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("stable_cf needs alpha in (1,2)");
  if (u == 0.0) return {0.0, 0.0};
  const double sgn = u > 0 ? 1.0 : -1.0;
  const double mag = std::pow(std::abs(u), alpha) * std::tgamma(1.0 - alpha);
  return {-mag * std::cos(kPi * alpha / 2.0), -mag * std::sin(kPi * alpha / 2.0) * sgn};
}

inline std::complex<double> stable_cf(double alpha, double u) { return std::exp(stable_log_cf(alpha, u)); }

// log E exp(i u Z(1)) for either branch.
inline std::complex<double> z1_log_cf(double alpha, double u) {
  if (alpha == 2.0) return {-0.5 * u * u, 0.0};
  return stable_log_cf(alpha, u);
}

inline std::complex<double> closed_form_log_cf(const LimitLaw& law, double u) {
  return z1_log_cf(law.alpha, u * law.scale);
}

inline std::complex<double> closed_form_cf(const LimitLaw& law, double u) {
  return std::exp(closed_form_log_cf(law, u));
}

// Log-CF from the integral representation of the law:
//   J_beta : int_0^1 g(u (1-x)^beta) dx
//   J1_beta: int_0^1 g(u (1-x)^{beta-1}) dx
//   K_exp  : int_0^inf g(u e^{-x}) dx
// with g the log-CF of Z(1).
inline std::complex<double> integral_log_cf(const LimitLaw& law, double u) {
  if (u == 0.0) return {0.0, 0.0};
  const double a = law.alpha;
  auto integrate = [&](auto weight, bool infinite) {
    auto re = [&](double x) { return z1_log_cf(a, u * weight(x)).real(); };
    auto im = [&](double x) { return z1_log_cf(a, u * weight(x)).imag(); };
    if (infinite) return std::complex<double>(quad::exp_sinh(re, 0.0), a == 2.0 ? 0.0 : quad::exp_sinh(im, 0.0));
    return std::complex<double>(quad::tanh_sinh(re, 0.0, 1.0), a == 2.0 ? 0.0 : quad::tanh_sinh(im, 0.0, 1.0));
  };
  switch (law.kind) {
    case LawKind::Z1: return z1_log_cf(a, u * law.scale);
    case LawKind::J_beta: {
      if (law.beta == 0.0) return z1_log_cf(a, u);
      const double b = law.beta;
      return integrate([b](double x) { return std::pow(1.0 - x, b); }, false);
    }
    case LawKind::J1_beta: {
      const double b = law.beta - 1.0;
      return integrate([b](double x) { return std::pow(1.0 - x, b); }, false);
    }
    case LawKind::K_exp: return integrate([](double x) { return std::exp(-x); }, true);
  }
  return {0.0, 0.0};
}

// Chambers-Mallows-Stuck draw from the totally skewed (skewness -1) stable
// law with unit scale in the one-parameter convention, CF
// exp(-|u|^alpha (1 + i tan(pi alpha/2) sgn u)).
inline double draw_skewed_stable(double alpha, Rng& rng) {
  const double t = std::tan(kPi * alpha / 2.0);
  const double b = std::atan(-t) / alpha;
  const double s = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));
  const double v = kPi * (uniform_open(rng) - 0.5);
  const double w = std_exponential(rng);
  return s * std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
}

// sigma with sigma^alpha = Gamma(1-alpha) cos(pi alpha/2), mapping the
// sampler above onto Z(1).
inline double stable_sigma(double alpha) {
  return std::pow(std::tgamma(1.0 - alpha) * std::cos(kPi * alpha / 2.0), 1.0 / alpha);
}

inline double draw_limit(const LimitLaw& law, Rng& rng) {
  if (law.scale == 0.0) return 0.0;
  if (law.is_normal()) return law.scale * std::normal_distribution<double>(0.0, 1.0)(rng);
  return law.scale * stable_sigma(law.alpha) * draw_skewed_stable(law.alpha, rng);
}

inline std::vector<double> sample_reference(const LimitLaw& law, std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& x : out) x = draw_limit(law, rng);
  return out;
}

// Sorted draws of stable Z(1), built once per alpha and shared read-only.
inline std::shared_ptr<const std::vector<double>> stable_reference_table(double alpha) {
  constexpr std::size_t kCount = 1000000;
  constexpr std::uint64_t kSeed = 0x5EEDCAFEF00DULL;
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(alpha);
  if (it != cache.end()) return it->second;
  auto v = sample_reference(LimitLaw{alpha, 0.0, LawKind::Z1, 1.0}, kSeed, kCount);
  std::sort(v.begin(), v.end());
  auto p = std::make_shared<const std::vector<double>>(std::move(v));
  cache.emplace(alpha, p);
  return p;
}

// CDF of the law: analytic for the normal branch, empirical reference for stable.
class LawCdf {
 public:
  explicit LawCdf(const LimitLaw& law) : law_(law) {
    if (!law.is_normal() && law.scale > 0) table_ = stable_reference_table(law.alpha);
  }
  double operator()(double x) const {
    if (law_.scale == 0.0) return x >= 0 ? 1.0 : 0.0;
    if (law_.is_normal()) return normal_cdf(x / law_.scale);
    const auto& t = *table_;
    const auto k = std::upper_bound(t.begin(), t.end(), x / law_.scale) - t.begin();
    return static_cast<double>(k) / static_cast<double>(t.size());
  }

 private:
  LimitLaw law_;
  std::shared_ptr<const std::vector<double>> table_;
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

template <class Cdf>
KsResult ks_test(std::vector<double> sample, const Cdf& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_test needs a nonempty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_q((sn + 0.12 + 0.11 / sn) * d)};
}

inline KsResult ks_distance(const std::vector<double>& sample, const LimitLaw& law) {
  return ks_test(sample, LawCdf(law));
}

inline std::complex<double> empirical_cf(const std::vector<double>& sample, double u) {
  double re = 0.0, im = 0.0;
  for (double x : sample) {
    re += std::cos(u * x);
    im += std::sin(u * x);
  }
  const double n = static_cast<double>(sample.size());
  return {re / n, im / n};
}

inline std::vector<double> cf_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 12; ++k) g.push_back(0.25 * k);
  return g;
}

// max over u in {0.25, 0.5, ..., 3} of |empirical CF - CF of law|
inline double cf_distance(const std::vector<double>& sample, const LimitLaw& law) {
  double worst = 0.0;
  for (double u : cf_grid()) worst = std::max(worst, std::abs(empirical_cf(sample, u) - closed_form_cf(law, u)));
  return worst;
}

}  // namespace regen

#endif  // REGEN_LIMIT_LAWS_HPP_
