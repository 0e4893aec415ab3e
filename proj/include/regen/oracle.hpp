#ifndef REGEN_ORACLE_HPP_
#define REGEN_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/special_functions/expint.hpp>

#include "regen/levy_model.hpp"
#include "regen/numeric.hpp"
#include "regen/occupancy.hpp"
#include "regen/pathsim.hpp"
#include "regen/rng.hpp"

namespace regen {

// Exact law of (K_n, K_{n,1}).
struct ExactLaw {
  int n = 0;
  std::map<std::pair<int, int>, double> joint_pmf;

  double total() const {
    double s = 0.0;
    for (const auto& [k, p] : joint_pmf) s += p;
    return s;
  }
  std::map<int, double> k_marginal() const {
    std::map<int, double> m;
    for (const auto& [k, p] : joint_pmf) m[k.first] += p;
    return m;
  }
  double mean_K() const {
    double s = 0.0;
    for (const auto& [k, p] : joint_pmf) s += k.first * p;
    return s;
  }
  double mean_K1() const {
    double s = 0.0;
    for (const auto& [k, p] : joint_pmf) s += k.second * p;
    return s;
  }
  void write_csv(std::ostream& os, bool header = true) const {
    if (header) os << "n,K,K1,prob\n";
    os.precision(17);
    for (const auto& [k, p] : joint_pmf) os << n << ',' << k.first << ',' << k.second << ',' << p << '\n';
  }
};

inline constexpr int kExactMaxN = 14;

// Recursion over the first block:
// P{(K_n, K_n1) = (k, k1)} = sum_m q(n,m) P{(K_{n-m}, K_{n-m,1}) = (k-1, k1-[m=1])}.
inline std::vector<ExactLaw> exact_joint_laws(DecrementMatrix& q, int n_max) {
  if (n_max < 1 || n_max > kExactMaxN) throw std::invalid_argument("exact law supports 1 <= n <= 14");
  std::vector<ExactLaw> laws(static_cast<std::size_t>(n_max) + 1);
  laws[0].n = 0;
  laws[0].joint_pmf[{0, 0}] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    auto& law = laws[static_cast<std::size_t>(n)];
    law.n = n;
    for (int m = 1; m <= n; ++m) {
      const double qm = q.q(n, m);
      for (const auto& [k, p] : laws[static_cast<std::size_t>(n - m)].joint_pmf)
        law.joint_pmf[{k.first + 1, k.second + (m == 1 ? 1 : 0)}] += qm * p;
    }
  }
  return laws;
}

inline ExactLaw exact_joint_law(const LevyModel& model, int n) {
  DecrementMatrix q(model);
  return exact_joint_laws(q, n)[static_cast<std::size_t>(n)];
}

// Total variation distance between two pmfs on the same key type.
template <class Key>
double tv_distance(const std::map<Key, double>& a, const std::map<Key, double>& b) {
  double s = 0.0;
  for (const auto& [k, p] : a) {
    auto it = b.find(k);
    s += std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, p] : b)
    if (!a.count(k)) s += std::abs(p);
  return 0.5 * s;
}

template <class Key>
std::map<Key, double> empirical_pmf(const std::vector<Key>& xs) {
  std::map<Key, double> m;
  for (const auto& x : xs) m[x] += 1.0;
  for (auto& [k, p] : m) p /= static_cast<double>(xs.size());
  return m;
}

// Law of V in (0,1) for the centering-swap bounds.
struct VLaw {
  struct Point {
    double v;
  };
  struct Uniform {};
  // V = 1 - e^{-xi} with xi ~ nu / |nu| for a finite Lévy measure.
  struct FromModel {
    const LevyModel* model;
  };
  std::variant<Point, Uniform, FromModel> law;

  static VLaw point(double v) {
    if (!(v > 0 && v < 1)) throw std::invalid_argument("V must lie in (0,1)");
    return {Point{v}};
  }
  static VLaw uniform() { return {Uniform{}}; }
  static VLaw from_model(const LevyModel& m) {
    if (!m.finite()) throw std::invalid_argument("V from a model needs a finite Lévy measure");
    return {FromModel{&m}};
  }

  // E exp(-c V)
  double laplace(double c) const {
    if (auto* p = std::get_if<Point>(&law)) return std::exp(-c * p->v);
    if (std::holds_alternative<Uniform>(law)) return c < 1e-8 ? 1.0 - 0.5 * c : -std::expm1(-c) / c;
    const auto& m = *std::get<FromModel>(law).model;
    return m.integrate([c](double lx) { return std::exp(-c * one_minus_exp_neg(lx)); }, 0.0) / m.total_mass();
  }
  // P{V < e^{-y}}
  double below(double y) const {
    const double s = std::exp(-y);
    if (auto* p = std::get_if<Point>(&law)) return p->v < s ? 1.0 : 0.0;
    if (std::holds_alternative<Uniform>(law)) return s;
    // 1 - e^{-xi} < s  <=>  xi < -log(1-s)
    const auto& m = *std::get<FromModel>(law).model;
    return 1.0 - m.tail(-std::log1p(-s)) / m.total_mass();
  }
  // Points y where y -> P{V < e^{-y}} jumps.
  std::vector<double> breakpoints() const {
    std::vector<double> b;
    if (auto* p = std::get_if<Point>(&law)) b.push_back(-std::log(p->v));
    if (auto* f = std::get_if<FromModel>(&law))
      for (const auto& a : f->model->atoms()) b.push_back(-std::log(one_minus_exp_neg(std::log(a.x))));
    return b;
  }
};

struct BoundConstants {
  double lower;  // -int_0^1 (1-e^{-y})/y dy
  double upper;  // int_1^inf e^{-y}/y dy
};

inline BoundConstants centering_bound_constants() {
  // Ein(1) = E1(1) + gamma + log 1
  const double e1 = boost::math::expint(1, 1.0);
  return {-(e1 + kEulerGamma), e1};
}

struct WePoint {
  double x, f1, f2, diff;
  double violation;  // > 0 when the bound fails
};

struct BoundReport {
  BoundConstants bounds;
  std::vector<WePoint> points;
  double max_violation = 0.0;
  bool holds(double tol = 1e-9) const { return max_violation <= tol; }
};

// f1(x) = int_0^x E exp(-e^y V) dy,  f2(x) = int_0^x P{V < e^{-y}} dy
inline BoundReport check_centering_bounds(const VLaw& v, const std::vector<double>& xs) {
  BoundReport rep;
  rep.bounds = centering_bound_constants();
  for (double x : xs) {
    if (!(x >= 0)) throw std::invalid_argument("x must be nonnegative");
    WePoint p{x, 0.0, 0.0, 0.0, 0.0};
    if (x > 0) {
      auto e1 = quad::gauss_kronrod([&](double y) { return v.laplace(std::exp(y)); }, 0.0, x);
      p.f1 = quad::checked(e1, "f1", 1e-7);
      std::vector<double> cuts{0.0};
      for (double b : v.breakpoints())
        if (b > 0 && b < x) cuts.push_back(b);
      cuts.push_back(x);
      std::sort(cuts.begin(), cuts.end());
      quad::Estimate e2;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        e2 += quad::gauss_kronrod([&](double y) { return v.below(y); }, cuts[i], cuts[i + 1]);
      p.f2 = quad::checked(e2, "f2", 1e-7);
    }
    p.diff = p.f1 - p.f2;
    p.violation = std::max({0.0, rep.bounds.lower - p.diff, p.diff - rep.bounds.upper});
    rep.max_violation = std::max(rep.max_violation, p.violation);
    rep.points.push_back(p);
  }
  return rep;
}

enum class RenewalTest { Phi, PhiPrime };

struct RenewalRatioPoint {
  double t;
  double lhs;       // Monte Carlo mean of int_0^t v(t-z) dT(z)
  double lhs_se;    // its standard error
  double rhs;       // m^{-1} int_0^t v(z) dz, times delta on a lattice
  double ratio;
};

struct RenewalRatioReport {
  bool arithmetic = false;
  double span = 0.0;
  std::vector<RenewalRatioPoint> points;
};

// int_{[0,t]} v(t - z) dT(z) = int_0^{T(t)} v(t - S(u)) du, summed exactly
// over the constancy intervals of the path. Lattice levels may round
// across t, hence the small slack.
inline double renewal_functional(const SubordinatorPath& path, const std::function<double(double)>& v, double t) {
  const double slack = 1e-9 * std::max(1.0, t);
  double total = 0.0, level = 0.0, v_prev = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (level > t + slack) break;
    total += v(std::max(0.0, t - level)) * (path.jump_times[k] - v_prev);
    level = path.cum_sums[k];
    v_prev = path.jump_times[k];
  }
  return total;
}

// Renewal asymptotics check: ratio of the Monte Carlo renewal functional to
// its asymptotic form. Single-atom models are arithmetic with span equal to
// the atom; there t should be a multiple of the span and the right side is
// delta m^{-1} sum_{j=0}^{t/delta} v(j delta).
inline RenewalRatioReport check_renewal_ratio(const LevyModel& model, RenewalTest which, const std::vector<double>& ts,
                                int replicates, std::uint64_t seed) {
  RenewalRatioReport rep;
  rep.arithmetic = model.family() == Family::FiniteAtomic && model.atoms().size() == 1;
  rep.span = rep.arithmetic ? model.atoms()[0].x : 0.0;
  const double t_max = *std::max_element(ts.begin(), ts.end());
  const PhiTable table(model, -40.0, t_max + 5.0, 16);
  std::function<double(double)> v;
  if (which == RenewalTest::Phi) v = [&](double z) { return table.phi_log(z); };
  else v = [&](double z) { return table.phi_prime_scaled_log(z); };
  const double m = model.mean();
  const double eps = model.finite() ? 0.0 : eps_for_drift(model, 1e-4 / t_max);

  std::vector<std::vector<double>> draws(ts.size(), std::vector<double>(static_cast<std::size_t>(replicates)));
  for (int r = 0; r < replicates; ++r) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(r));
    const auto path = simulate_path(model, HorizonRule::until_level(t_max + 1.0), eps, rng);
    for (std::size_t i = 0; i < ts.size(); ++i) draws[i][static_cast<std::size_t>(r)] = renewal_functional(path, v, ts[i]);
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    double mean = 0.0, sq = 0.0;
    for (double d : draws[i]) mean += d;
    mean /= replicates;
    for (double d : draws[i]) sq += (d - mean) * (d - mean);
    const double se = std::sqrt(sq / (replicates - 1.0) / replicates);
    double rhs;
    if (rep.arithmetic) {
      const double d = rep.span;
      const auto k = static_cast<long long>(std::floor(t / d + 1e-9));
      double sum = 0.0;
      for (long long j = 0; j <= k; ++j) sum += v(static_cast<double>(j) * d);
      rhs = d * sum / m;
    } else {
      auto e = quad::gauss_kronrod([&](double z) { return v(z); }, 0.0, t);
      rhs = quad::checked(e, "renewal right side", 1e-8) / m;
    }
    rep.points.push_back({t, mean, se, rhs, mean / rhs});
  }
  return rep;
}

}  // namespace regen

#endif  // REGEN_ORACLE_HPP_
