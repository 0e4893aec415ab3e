#ifndef REGEN_LEVY_MODEL_HPP_
#define REGEN_LEVY_MODEL_HPP_

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/special_functions/expint.hpp>

#include "regen/numeric.hpp"
#include "regen/rng.hpp"

namespace regen {

// Lévy measure components. Every component integrates a function of
// lx = log x against its measure; each chooses the coordinate in which its
// density is regular.
namespace component {

struct Atom {
  double x;
  double w;
};

struct Atoms {
  std::vector<Atom> atoms;

  template <class F>
  quad::Estimate integrate(const F& f, double /*lx_peak*/) const {
    quad::Estimate e;
    for (const auto& a : atoms) e.value += a.w * f(std::log(a.x));
    return e;
  }
  double tail(double x) const {
    double s = 0.0;
    for (const auto& a : atoms)
      if (a.x >= x) s += a.w;
    return s;
  }
  double jump_rate(double eps) const { return tail(eps); }
  double draw_jump(double eps, Rng& rng) const {
    double u = uniform01(rng) * jump_rate(eps);
    const Atom* last = nullptr;
    for (const auto& a : atoms) {
      if (a.x < eps) continue;
      last = &a;
      if (u < a.w) return a.x;
      u -= a.w;
    }
    return last->x;
  }
  bool finite() const { return true; }
  double mean() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.w * a.x;
    return s;
  }
  double second_moment() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.w * a.x * a.x;
    return s;
  }
};

// nu(dx) = rate * exp(-rate x) dx, a probability measure.
struct Exponential {
  double rate;

  template <class F>
  quad::Estimate integrate(const F& f, double lx_peak) const {
    auto g = [&](double lx) {
      const double x = std::exp(lx);
      return f(lx) * rate * x * std::exp(-rate * x);
    };
    auto panel = [&](double a, double b) { return quad::gauss_kronrod(g, a, b); };
    return quad::sweep_panels(panel, -kInf, kInf, std::min(lx_peak, -std::log(rate)), 2.0);
  }
  double tail(double x) const { return x <= 0 ? 1.0 : std::exp(-rate * x); }
  double jump_rate(double eps) const { return tail(eps); }
  double draw_jump(double eps, Rng& rng) const { return std::max(eps, 0.0) + std_exponential(rng) / rate; }
  bool finite() const { return true; }
  double mean() const { return 1.0 / rate; }
  double second_moment() const { return 2.0 / (rate * rate); }
};

// nu(dx) = x^{-1} exp(-rate x) dx.
struct Gamma {
  double rate;

  template <class F>
  quad::Estimate integrate(const F& f, double lx_peak) const {
    auto g = [&](double lx) { return f(lx) * std::exp(-rate * std::exp(lx)); };
    auto panel = [&](double a, double b) { return quad::gauss_kronrod(g, a, b); };
    return quad::sweep_panels(panel, -kInf, kInf, std::min(lx_peak, -std::log(rate) + 2.0), 2.0);
  }
  double tail(double x) const {
    if (x <= 0) return kInf;
    return boost::math::expint(1, rate * x);
  }
  double jump_rate(double eps) const { return tail(eps); }
  // Rejection from x^{-1} on [eps, 1) and exp(-rate x) on [1, inf).
  double draw_jump(double eps, Rng& rng) const {
    const double lo = std::max(eps, 1e-300);
    if (lo >= 1.0) {
      for (;;) {
        const double x = lo + std_exponential(rng) / rate;
        if (uniform01(rng) * x < lo) return x;
      }
    }
    const double mass_small = -std::log(lo);
    const double mass_large = std::exp(-rate) / rate;
    for (;;) {
      if (uniform01(rng) * (mass_small + mass_large) < mass_small) {
        const double x = std::exp(std::log(lo) * uniform01(rng));
        if (x >= lo && uniform01(rng) < std::exp(-rate * x)) return x;
      } else {
        const double x = 1.0 + std_exponential(rng) / rate;
        if (uniform01(rng) * x < 1.0) return x;
      }
    }
  }
  bool finite() const { return false; }
  double mean() const { return 1.0 / rate; }
  double second_moment() const { return 1.0 / (rate * rate); }
};

// Measures on (0, 1) given by tail nu[x, inf) = T(s) with s = (-log x)^power.
// In the variable s the density is regular: LogPower has density 1 and
// DeHaanExp has density gamma * exp(gamma s).
template <class Derived>
struct PowerLogCoordinate {
  template <class F>
  quad::Estimate integrate(const F& f, double lx_peak) const {
    const auto& self = static_cast<const Derived&>(*this);
    const double p = self.power();
    // The map s -> lx = -s^{1/p} is smooth for p < 1; for p >= 1 the
    // density p (-lx)^{p-1} dens(s) in lx is the regular one.
    auto g_s = [&](double s) { return f(-std::pow(s, 1.0 / p)) * self.density_s(s); };
    auto g_lx = [&](double lx) {
      const double s = std::pow(-lx, p);
      return f(lx) * self.density_s(s) * p * std::pow(-lx, p - 1.0);
    };
    auto panel = [&](double a, double b) {
      // lx-panel [a, b] with a < b <= 0 maps to s in [(-b)^p, (-a)^p].
      if (p >= 1.0) return quad::gauss_kronrod(g_lx, a, b);
      return quad::gauss_kronrod(g_s, std::pow(-b, p), std::pow(-a, p));
    };
    return quad::sweep_panels(panel, -kInf, 0.0, std::min(lx_peak, -1e-3), 2.0);
  }
  double s_of(double eps) const {
    const auto& self = static_cast<const Derived&>(*this);
    return eps >= 1.0 ? 0.0 : std::pow(-std::log(eps), self.power());
  }
  bool finite() const { return false; }
};

struct LogPower : PowerLogCoordinate<LogPower> {
  double beta;

  explicit LogPower(double b) : beta(b) {}
  double power() const { return beta; }
  double density_s(double) const { return 1.0; }
  double tail(double x) const {
    if (x <= 0) return kInf;
    return x >= 1.0 ? 0.0 : std::pow(-std::log(x), beta);
  }
  double jump_rate(double eps) const { return s_of(eps); }
  double draw_jump(double eps, Rng& rng) const {
    const double s = uniform01(rng) * s_of(eps);
    return std::max(eps, std::exp(-std::pow(s, 1.0 / beta)));
  }
  double mean() const { return std::tgamma(beta + 1.0); }
  double second_moment() const { return std::tgamma(beta + 1.0) / std::pow(2.0, beta); }
};

struct DeHaanExp : PowerLogCoordinate<DeHaanExp> {
  double gamma;
  double delta;

  DeHaanExp(double g, double d) : gamma(g), delta(d) {}
  double power() const { return delta; }
  double density_s(double s) const { return gamma * std::exp(gamma * s); }
  double tail(double x) const {
    if (x <= 0) return kInf;
    return x >= 1.0 ? 0.0 : std::expm1(gamma * std::pow(-std::log(x), delta));
  }
  double jump_rate(double eps) const { return std::expm1(gamma * s_of(eps)); }
  double draw_jump(double eps, Rng& rng) const {
    const double s = std::log1p(uniform01(rng) * std::expm1(gamma * s_of(eps))) / gamma;
    return std::max(eps, std::exp(-std::pow(s, 1.0 / delta)));
  }
  // m = int_0^inf (e^{gamma y^delta} - 1) e^{-y} dy, written via the tail.
  double mean() const {
    auto f = [&](double y) { return std::exp(gamma * std::pow(y, delta) - y) - std::exp(-y); };
    return quad::exp_sinh(f, 0.0);
  }
  double second_moment() const {
    auto f = [&](double y) { return 2.0 * (std::exp(gamma * std::pow(y, delta) - 2.0 * y) - std::exp(-2.0 * y)); };
    return quad::exp_sinh(f, 0.0);
  }
};

// nu(dx) = alpha C x^{-alpha-1} dx on [1, inf).
struct Pareto {
  double alpha;
  double scale;

  template <class F>
  quad::Estimate integrate(const F& f, double lx_peak) const {
    auto g = [&](double lx) { return f(lx) * alpha * scale * std::exp(-alpha * lx); };
    auto panel = [&](double a, double b) { return quad::gauss_kronrod(g, a, b); };
    return quad::sweep_panels(panel, 0.0, kInf, lx_peak, 2.0);
  }
  double tail(double x) const { return x <= 1.0 ? scale : scale * std::pow(x, -alpha); }
  double jump_rate(double eps) const { return tail(eps); }
  double draw_jump(double eps, Rng& rng) const {
    return std::max(1.0, eps) * std::pow(uniform_open(rng), -1.0 / alpha);
  }
  bool finite() const { return true; }
  double mean() const { return alpha * scale / (alpha - 1.0); }
  double second_moment() const { return kInf; }
};

using Component = std::variant<Atoms, Exponential, Gamma, LogPower, DeHaanExp, Pareto>;

}  // namespace component

enum class Family { FiniteAtomic, Exponential, Gamma, LogPower, DeHaanExp, HeavyComposite };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::FiniteAtomic: return "atomic";
    case Family::Exponential: return "exponential";
    case Family::Gamma: return "gamma";
    case Family::LogPower: return "log_power";
    case Family::DeHaanExp: return "dehaan_exp";
    case Family::HeavyComposite: return "heavy_composite";
  }
  return "?";
}

// Growth regime of phi(t) = Phi(e^t).
struct GrowthCondition {
  enum class Kind { A, B, C };
  Kind kind = Kind::C;
  double beta = 0.0;  // index for Kind::A

  friend bool operator==(const GrowthCondition&, const GrowthCondition&) = default;
};

inline std::string to_string(const GrowthCondition& c) {
  switch (c.kind) {
    case GrowthCondition::Kind::A: {
      std::ostringstream os;
      os << "A(" << c.beta << ")";
      return os.str();
    }
    case GrowthCondition::Kind::B: return "B";
    case GrowthCondition::Kind::C: return "C";
  }
  return "?";
}

// A Lévy measure from one of the shipped families, with every deterministic
// functional of nu that the toolkit needs. Immutable after construction.
class LevyModel {
 public:
  using Atom = component::Atom;

  static LevyModel finite_atomic(std::vector<Atom> atoms) {
    if (atoms.empty()) throw std::invalid_argument("atomic model needs at least one atom");
    double total = 0.0;
    for (const auto& a : atoms) {
      if (!(a.x > 0) || !(a.w > 0)) throw std::invalid_argument("atoms need positive location and mass");
      total += a.w;
    }
    for (auto& a : atoms) a.w /= total;
    std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });
    LevyModel m(Family::FiniteAtomic, {GrowthCondition::Kind::C, 0.0});
    m.atoms_ = atoms;
    m.components_.push_back(component::Atoms{std::move(atoms)});
    m.finish();
    return m;
  }

  static LevyModel exponential(double rate) {
    if (!(rate > 0)) throw std::invalid_argument("exponential rate must be positive");
    LevyModel m(Family::Exponential, {GrowthCondition::Kind::C, 0.0});
    m.params_ = {{"rate", rate}};
    m.components_.push_back(component::Exponential{rate});
    m.finish();
    return m;
  }

  static LevyModel gamma(double rate) {
    if (!(rate > 0)) throw std::invalid_argument("gamma rate must be positive");
    LevyModel m(Family::Gamma, {GrowthCondition::Kind::A, 1.0});
    m.params_ = {{"rate", rate}};
    m.components_.push_back(component::Gamma{rate});
    m.finish();
    return m;
  }

  static LevyModel log_power(double beta) {
    if (!(beta > 0)) throw std::invalid_argument("log_power beta must be positive");
    LevyModel m(Family::LogPower, {GrowthCondition::Kind::A, beta});
    m.params_ = {{"beta", beta}};
    m.components_.push_back(component::LogPower{beta});
    m.finish();
    return m;
  }

  static LevyModel dehaan_exp(double gamma, double delta) {
    if (!(gamma > 0)) throw std::invalid_argument("dehaan_exp gamma must be positive");
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("dehaan_exp delta must lie in (0,1)");
    LevyModel m(Family::DeHaanExp, {GrowthCondition::Kind::B, 0.0});
    m.params_ = {{"gamma", gamma}, {"delta", delta}};
    m.components_.push_back(component::DeHaanExp{gamma, delta});
    m.finish();
    return m;
  }

  // Slow part near zero (log_power or dehaan_exp) plus a Pareto tail
  // alpha C x^{-alpha-1} on [1, inf). alpha = 2 gives an infinite variance
  // with slowly varying truncated second moment.
  static LevyModel heavy_composite(const LevyModel& slow, double alpha, double scale) {
    if (slow.family() != Family::LogPower && slow.family() != Family::DeHaanExp)
      throw std::invalid_argument("heavy_composite slow part must be log_power or dehaan_exp");
    if (!(alpha > 1 && alpha <= 2)) throw std::invalid_argument("heavy_composite alpha must lie in (1,2]");
    if (!(scale > 0)) throw std::invalid_argument("heavy_composite C must be positive");
    LevyModel m(Family::HeavyComposite, slow.condition());
    m.params_ = {{"alpha", alpha}, {"C", scale}};
    m.slow_ = std::make_shared<const LevyModel>(slow);
    m.components_ = slow.components_;
    m.components_.push_back(component::Pareto{alpha, scale});
    m.pareto_alpha_ = alpha;
    m.finish();
    return m;
  }

  Family family() const { return family_; }
  const GrowthCondition& condition() const { return condition_; }
  const std::vector<component::Component>& components() const { return components_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<std::pair<std::string, double>>& params() const { return params_; }
  double param(const std::string& name) const {
    for (const auto& [k, v] : params_)
      if (k == name) return v;
    throw std::out_of_range("no parameter " + name);
  }
  const LevyModel* slow_part() const { return slow_.get(); }

  bool finite() const { return finite_; }
  double total_mass() const { return finite_ ? total_mass_ : kInf; }
  // m = E S(1)
  double mean() const { return mean_; }
  // s^2 = int x^2 nu(dx); infinite for Pareto tails.
  double second_moment() const { return second_; }
  // Var of one walk increment when nu is a probability measure.
  double increment_variance() const { return second_ - mean_ * mean_; }
  // Index alpha in (1,2) of a regularly varying tail at infinity.
  std::optional<double> tail_alpha() const {
    if (pareto_alpha_ && *pareto_alpha_ < 2.0) return pareto_alpha_;
    return std::nullopt;
  }
  std::optional<double> pareto_alpha() const { return pareto_alpha_; }
  // Declared: t -> t Phi'(t) nondecreasing.
  bool kn1_monotone() const { return !finite_; }

  // int f(log x) nu(dx); f must be O(x) at zero.
  template <class F>
  quad::Estimate integrate_estimate(const F& f, double lx_peak) const {
    quad::Estimate total;
    for (const auto& c : components_) {
      total += std::visit([&](const auto& comp) { return comp.integrate(f, lx_peak); }, c);
    }
    return total;
  }
  template <class F>
  double integrate(const F& f, double lx_peak, const char* what = "integral of nu") const {
    return quad::checked(integrate_estimate(f, lx_peak), what);
  }

  // Phi(e^y) = int (1 - exp(-e^y (1 - e^{-x}))) nu(dx)
  double phi_log(double y) const {
    if (family_ == Family::Exponential && param("rate") == 1.0) {
      // int_0^1 (1 - e^{-t(1-w)}) dw
      const double t = std::exp(y);
      if (t < 1e-8) return 0.5 * t - t * t / 6.0;
      return 1.0 + std::expm1(-t) / t;
    }
    auto f = [y](double lx) { return -std::expm1(-std::exp(y + log_one_minus_exp_neg(lx))); };
    return integrate(f, -y, "Phi");
  }
  double phi(double t) const {
    check_nonneg(t);
    return t == 0.0 ? 0.0 : phi_log(std::log(t));
  }

  // t^r |Phi^{(r)}(t)| at t = e^y.
  double phi_derivative_scaled_log(int r, double y) const {
    auto f = [r, y](double lx) {
      const double z = y + log_one_minus_exp_neg(lx);
      return std::exp(r * z - std::exp(z));
    };
    return integrate(f, std::log(static_cast<double>(r)) - y, "Phi derivative");
  }
  // r-th derivative Phi^{(r)}(t), sign (-1)^{r-1}.
  double phi_derivative(int r, double t) const {
    check_nonneg(t);
    if (r < 1) throw std::invalid_argument("derivative order must be >= 1");
    const double sign = (r % 2 == 1) ? 1.0 : -1.0;
    if (t == 0.0) {
      auto f = [r](double lx) { return std::pow(one_minus_exp_neg(lx), r); };
      return sign * integrate(f, 0.0, "Phi derivative at 0");
    }
    return sign * phi_derivative_scaled_log(r, std::log(t)) / std::pow(t, r);
  }
  double phi_prime(double t) const { return phi_derivative(1, t); }

  // Conventional Laplace exponent int (1 - e^{-tx}) nu(dx) at t = e^y.
  double phi_hat_log(double y) const {
    if (components_.size() == 1 && (family_ == Family::Gamma || family_ == Family::Exponential)) {
      const double lb = std::log(param("rate"));
      if (family_ == Family::Gamma) return y > lb ? y - lb + std::log1p(std::exp(lb - y)) : std::log1p(std::exp(y - lb));
      if (family_ == Family::Exponential) return 1.0 / (1.0 + std::exp(lb - y));
    }
    auto f = [y](double lx) { return -std::expm1(-std::exp(y + lx)); };
    return integrate(f, -y, "Phi-hat");
  }
  double phi_hat(double t) const {
    check_nonneg(t);
    return t == 0.0 ? 0.0 : phi_hat_log(std::log(t));
  }
  double phi_hat_prime(double t) const {
    check_nonneg(t);
    if (t == 0.0) return mean_;
    if (components_.size() == 1 && family_ == Family::Gamma) return 1.0 / (param("rate") + t);
    const double y = std::log(t);
    auto f = [y](double lx) {
      const double z = y + lx;
      return std::exp(z - std::exp(z));
    };
    return integrate(f, -y, "Phi-hat derivative") / t;
  }

  // nu[x, inf)
  double tail(double x) const {
    if (!(x > 0)) throw std::invalid_argument("tail needs x > 0");
    double s = 0.0;
    for (const auto& c : components_) s += std::visit([x](const auto& comp) { return comp.tail(x); }, c);
    return s;
  }

  // int_{(0, eps)} x nu(dx): the mass dropped by jump truncation at eps.
  double drift_loss(double eps) const {
    if (finite_ || eps <= 0) return 0.0;
    const double le = std::log(eps);
    auto f = [le](double lx) { return lx < le ? std::exp(lx) : 0.0; };
    return integrate(f, le, "truncation drift");
  }

  // int_0^X y^2 nu(dy)
  double truncated_second_moment(double upper) const {
    const double lu = std::log(upper);
    auto f = [lu](double lx) { return lx <= lu ? std::exp(2.0 * lx) : 0.0; };
    return integrate(f, lu, "truncated second moment");
  }

  // int min(x, 1) nu(dx); finite for an admissible Lévy measure.
  double admissibility_integral() const {
    auto f = [](double lx) { return std::exp(std::min(lx, 0.0)); };
    return integrate(f, 0.0, "admissibility");
  }

  double jump_rate(double eps) const {
    double s = 0.0;
    for (const auto& c : components_) s += std::visit([eps](const auto& comp) { return comp.jump_rate(eps); }, c);
    return s;
  }
  double draw_jump(double eps, Rng& rng) const {
    if (components_.size() == 1) {
      return std::visit([&](const auto& comp) { return comp.draw_jump(eps, rng); }, components_[0]);
    }
    double u = uniform01(rng) * jump_rate(eps);
    for (const auto& c : components_) {
      const double r = std::visit([eps](const auto& comp) { return comp.jump_rate(eps); }, c);
      if (u < r) return std::visit([&](const auto& comp) { return comp.draw_jump(eps, rng); }, c);
      u -= r;
    }
    return std::visit([&](const auto& comp) { return comp.draw_jump(eps, rng); }, components_.back());
  }

  // Limit of Phi(x) / log x, read off as t Phi'(t) at t = e^{500}.
  double log_growth_constant() const { return phi_derivative_scaled_log(1, 500.0); }

  std::string describe() const {
    std::ostringstream os;
    os << to_string(family_);
    if (family_ == Family::FiniteAtomic) {
      os << "{";
      for (std::size_t i = 0; i < atoms_.size(); ++i) os << (i ? "," : "") << atoms_[i].x << "@" << atoms_[i].w;
      os << "}";
    } else {
      os << "(";
      if (slow_) os << slow_->describe() << ",";
      for (std::size_t i = 0; i < params_.size(); ++i)
        os << (i ? "," : "") << params_[i].first << "=" << params_[i].second;
      os << ")";
    }
    return os.str();
  }

 private:
  LevyModel(Family f, GrowthCondition c) : family_(f), condition_(c) {}

  static void check_nonneg(double t) {
    if (!(t >= 0)) throw std::invalid_argument("argument must be nonnegative");
  }

  void finish() {
    finite_ = std::all_of(components_.begin(), components_.end(), [](const auto& c) {
      return std::visit([](const auto& comp) { return comp.finite(); }, c);
    });
    mean_ = 0.0;
    second_ = 0.0;
    total_mass_ = 0.0;
    for (const auto& c : components_) {
      std::visit(
          [&](const auto& comp) {
            mean_ += comp.mean();
            second_ += comp.second_moment();
            if (comp.finite()) total_mass_ += comp.jump_rate(0.0);
          },
          c);
    }
  }

  Family family_;
  GrowthCondition condition_;
  std::vector<component::Component> components_;
  std::vector<Atom> atoms_;
  std::vector<std::pair<std::string, double>> params_;
  std::shared_ptr<const LevyModel> slow_;
  std::optional<double> pareto_alpha_;
  bool finite_ = false;
  double mean_ = 0.0;
  double second_ = 0.0;
  double total_mass_ = 0.0;
};

// Cubic Hermite tables of phi(y) = Phi(e^y) and phi'(y) = e^y Phi'(e^y) on a
// uniform grid in y, for the inner loops of path functionals. Outside the
// grid it falls back to the small-t expansion or to the model itself.
class PhiTable {
 public:
  explicit PhiTable(const LevyModel& model, double y_lo = -40.0, double y_hi = 40.0, int per_unit = 16)
      : model_(&model), y_lo_(y_lo), h_(1.0 / per_unit) {
    const auto n = static_cast<std::size_t>(std::llround((y_hi - y_lo) * per_unit)) + 1;
    y_hi_ = y_lo_ + h_ * static_cast<double>(n - 1);
    phi_.resize(n);
    d1_.resize(n);
    d2_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double y = y_lo_ + h_ * static_cast<double>(i);
      phi_[i] = model.phi_log(y);
      d1_[i] = model.phi_derivative_scaled_log(1, y);
      d2_[i] = d1_[i] - model.phi_derivative_scaled_log(2, y);
    }
    slope0_ = model.phi_derivative(1, 0.0);
    curv0_ = model.phi_derivative(2, 0.0);
  }

  const LevyModel& model() const { return *model_; }

  double phi_log(double y) const {
    if (y < y_lo_) {
      const double t = std::exp(y);
      return t * slope0_ + 0.5 * t * t * curv0_;
    }
    if (y > y_hi_) return model_->phi_log(y);
    return hermite(phi_, d1_, y);
  }
  double phi(double t) const { return t <= 0 ? 0.0 : phi_log(std::log(t)); }

  // t Phi'(t) at t = e^y
  double phi_prime_scaled_log(double y) const {
    if (y < y_lo_) {
      const double t = std::exp(y);
      return t * slope0_ + t * t * curv0_;
    }
    if (y > y_hi_) return model_->phi_derivative_scaled_log(1, y);
    return hermite(d1_, d2_, y);
  }

  double slope_at_zero() const { return slope0_; }

 private:
  double hermite(const std::vector<double>& v, const std::vector<double>& dv, double y) const {
    const double pos = (y - y_lo_) / h_;
    auto i = static_cast<std::size_t>(pos);
    if (i >= v.size() - 1) i = v.size() - 2;
    const double s = pos - static_cast<double>(i);
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * v[i] + h10 * h_ * dv[i] + h01 * v[i + 1] + h11 * h_ * dv[i + 1];
  }

  const LevyModel* model_;
  double y_lo_;
  double y_hi_ = 0.0;
  double h_;
  std::vector<double> phi_, d1_, d2_;
  double slope0_ = 0.0;
  double curv0_ = 0.0;
};

// Numerical consistency of a model's declared growth condition.
struct ConditionReport {
  bool consistent = false;
  double discrepancy = 0.0;
  std::string detail;
};

// phi(t) = Phi(e^t)
inline double phi_of_log(const LevyModel& m, double t) { return m.phi_log(t); }

// Auxiliary function h(t) = int_0^t phi(y) dy / phi(t).
inline double auxiliary_h(const LevyModel& m, double t) {
  if (!(t > 0)) throw std::invalid_argument("auxiliary h needs t > 0");
  auto e = quad::gauss_kronrod([&](double y) { return m.phi_log(y); }, 0.0, t);
  return quad::checked(e, "auxiliary h", 1e-9) / m.phi_log(t);
}

inline ConditionReport verify_condition(const LevyModel& m) {
  ConditionReport rep;
  std::ostringstream os;
  switch (m.condition().kind) {
    case GrowthCondition::Kind::C: {
      // Phi is bounded by the total mass.
      const double big = m.phi_log(200.0);
      rep.discrepancy = std::abs(big - m.total_mass());
      rep.consistent = m.finite() && rep.discrepancy < 1e-6;
      os << "Phi(e^200)=" << big << " mass=" << m.total_mass();
      break;
    }
    case GrowthCondition::Kind::A: {
      const double t = 200.0;
      const double ratio = m.phi_log(2 * t) / m.phi_log(t);
      const double target = std::pow(2.0, m.condition().beta);
      rep.discrepancy = std::abs(ratio / target - 1.0);
      rep.consistent = !m.finite() && rep.discrepancy < 0.05;
      os << "phi(2t)/phi(t)=" << ratio << " target 2^beta=" << target << " at t=" << t;
      break;
    }
    case GrowthCondition::Kind::B: {
      const double t = 1000.0;
      const double h = auxiliary_h(m, t);
      const double pt = m.phi_log(t);
      double worst = 0.0;
      for (double u : {-2.0, -1.0, 1.0, 2.0}) {
        const double ratio = m.phi_log(t - u * h) / pt;
        worst = std::max(worst, std::abs(ratio - std::exp(-u)));
      }
      rep.discrepancy = worst;
      rep.consistent = !m.finite() && worst < 0.05;
      os << "max |phi(t-uh)/phi(t) - e^{-u}|=" << worst << " at t=" << t << " h=" << h;
      break;
    }
  }
  rep.detail = os.str();
  return rep;
}

}  // namespace regen

#endif  // REGEN_LEVY_MODEL_HPP_
