#ifndef REGEN_PATHSIM_HPP_
#define REGEN_PATHSIM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "regen/error.hpp"
#include "regen/levy_model.hpp"
#include "regen/norm_constants.hpp"
#include "regen/rng.hpp"

namespace regen {

// Jumps of size >= truncation_eps of a driftless subordinator, as a marked
// Poisson process. S is constant between jumps.
struct SubordinatorPath {
  std::vector<double> jump_times;
  std::vector<double> jump_sizes;
  std::vector<double> cum_sums;  // S right after each jump
  double truncation_eps = 0.0;
  double horizon = 0.0;
  double drift_loss = 0.0;

  std::size_t size() const { return jump_times.size(); }
  double final_level() const { return cum_sums.empty() ? 0.0 : cum_sums.back(); }

  // S(v), right-continuous.
  double S(double v) const {
    const auto k = std::upper_bound(jump_times.begin(), jump_times.end(), v) - jump_times.begin();
    return k == 0 ? 0.0 : cum_sums[static_cast<std::size_t>(k - 1)];
  }

  void push(double time, double size) {
    jump_times.push_back(time);
    jump_sizes.push_back(size);
    cum_sums.push_back(final_level() + size);
  }

  void write_csv(std::ostream& os) const {
    os << "jump_time,jump_size\n";
    os.precision(17);
    for (std::size_t k = 0; k < size(); ++k) os << jump_times[k] << ',' << jump_sizes[k] << '\n';
  }
};

class PathHorizonError : public HorizonError {
 public:
  PathHorizonError(const std::string& what, SubordinatorPath partial)
      : HorizonError(what), partial_(std::move(partial)) {}
  const SubordinatorPath& partial_path() const { return partial_; }

 private:
  SubordinatorPath partial_;
};

struct HorizonRule {
  enum class Kind { FixedTime, UntilLevel };
  Kind kind;
  double value;

  static HorizonRule fixed(double v_max) { return {Kind::FixedTime, v_max}; }
  static HorizonRule until_level(double s) { return {Kind::UntilLevel, s}; }
};

inline constexpr std::size_t kMaxPathJumps = 50000000;

// Extends `path` until the rule is met. Jumps of size >= eps arrive at rate
// nu[eps, inf); eps is ignored for a finite Lévy measure.
inline void extend_path(SubordinatorPath& path, const LevyModel& model, HorizonRule rule, Rng& rng,
                        std::size_t max_jumps = kMaxPathJumps) {
  const double eps = path.truncation_eps;
  const double rate = model.jump_rate(eps);
  if (!(rate > 0) || !std::isfinite(rate)) throw std::invalid_argument("jump rate must be positive and finite");
  double v = path.jump_times.empty() ? 0.0 : path.jump_times.back();
  while (true) {
    if (rule.kind == HorizonRule::Kind::UntilLevel && path.final_level() > rule.value) {
      path.horizon = path.jump_times.back();
      return;
    }
    if (path.size() >= max_jumps)
      throw PathHorizonError("path horizon not reached within " + std::to_string(max_jumps) + " jumps", path);
    const double w = std_exponential(rng) / rate;
    if (rule.kind == HorizonRule::Kind::FixedTime && v + w > rule.value) {
      path.horizon = rule.value;
      return;
    }
    v += w;
    path.push(v, model.draw_jump(eps, rng));
  }
}

inline SubordinatorPath simulate_path(const LevyModel& model, HorizonRule rule, double eps, Rng& rng,
                                      std::size_t max_jumps = kMaxPathJumps) {
  if (!model.finite() && !(eps > 0)) throw std::invalid_argument("infinite Lévy measure needs eps > 0");
  SubordinatorPath p;
  p.truncation_eps = model.finite() ? 0.0 : eps;
  p.drift_loss = model.drift_loss(p.truncation_eps);
  extend_path(p, model, rule, rng, max_jumps);
  return p;
}

inline SubordinatorPath simulate_path(const LevyModel& model, HorizonRule rule, double eps, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_path(model, rule, eps, rng);
}

// T(s) = inf{v : S(v) > s}
inline double first_passage(const SubordinatorPath& path, double s) {
  if (!(s >= 0)) throw std::invalid_argument("first_passage needs s >= 0");
  const auto it = std::upper_bound(path.cum_sums.begin(), path.cum_sums.end(), s);
  if (it == path.cum_sums.end()) throw HorizonError("path does not cover level " + std::to_string(s));
  return path.jump_times[static_cast<std::size_t>(it - path.cum_sums.begin())];
}

// Zero-delayed random walk R_k with i.i.d. increments from nu (normalized).
struct RenewalWalk {
  std::vector<double> increments;
  std::vector<double> partial_sums{0.0};

  double last() const { return partial_sums.back(); }
  void push(double x) {
    increments.push_back(x);
    partial_sums.push_back(last() + x);
  }
};

inline void extend_walk(RenewalWalk& w, const LevyModel& model, double level, Rng& rng,
                        std::size_t max_steps = kMaxPathJumps) {
  if (!model.finite()) throw std::invalid_argument("renewal walk needs a finite Lévy measure");
  while (w.last() <= level) {
    if (w.increments.size() >= max_steps) throw HorizonError("walk did not pass the requested level");
    w.push(model.draw_jump(0.0, rng));
  }
}

// Walk run until R_k > level.
inline RenewalWalk simulate_walk(const LevyModel& model, double level, Rng& rng) {
  RenewalWalk w;
  extend_walk(w, model, level, rng);
  return w;
}

// rho(y) = inf{k >= 0 : R_k > y}
inline std::size_t renewal_count(const RenewalWalk& w, double y) {
  const auto it = std::upper_bound(w.partial_sums.begin(), w.partial_sums.end(), y);
  if (it == w.partial_sums.end()) throw HorizonError("walk does not extend beyond " + std::to_string(y));
  return static_cast<std::size_t>(it - w.partial_sums.begin());
}

// Largest eps with drift_loss(eps) <= target (bisection in log eps).
inline double eps_for_drift(const LevyModel& model, double target) {
  if (model.finite()) return 0.0;
  double lo = -745.0, hi = 0.0;
  if (model.drift_loss(1.0) <= target) return 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (model.drift_loss(std::exp(mid)) <= target) lo = mid;
    else hi = mid;
  }
  return std::exp(lo);
}

// Truncation so that n * tau * int_0^eps x nu(dx) <= budget, tau being the
// expected horizon: bounds the expected number of missed occupied gaps.
inline double choose_eps(const LevyModel& model, double n, double tau, double budget = 1e-3) {
  return eps_for_drift(model, budget / (n * tau));
}

// Expected time for S to pass the largest of n standard exponentials.
inline double expected_horizon(const LevyModel& model, double n) {
  return (std::log(std::max(n, 1.0)) + 1.0) / model.mean() + 1.0;
}

namespace detail {

// log of a Beta(a, b) variate, from two log-gamma variates.
inline double log_beta_variate(double a, double b, Rng& rng) {
  const double la = log_gamma_variate(a, rng);
  const double lb = log_gamma_variate(b, rng);
  const double mx = std::max(la, lb);
  return la - (mx + std::log(std::exp(la - mx) + std::exp(lb - mx)));
}

// Gamma process (Lévy measure x^{-1} e^{-b x}): S(v) ~ Gamma(v, b). Passage
// time through s from gamma increments on a grid refined by gamma bridges.
inline double gamma_first_passage(double rate, double s, Rng& rng, double resolution) {
  const double h = std::max(1e-3, (s * rate) / 1000.0);
  double v = 0.0, level = 0.0;
  double inc = 0.0;
  for (;;) {
    inc = std::exp(log_gamma_variate(h, rng)) / rate;
    if (level + inc > s) break;
    level += inc;
    v += h;
  }
  // S(v) = level <= s < level + inc = S(v + width)
  double width = h;
  while (width > resolution) {
    const double half = 0.5 * width;
    const double first = inc * std::exp(log_beta_variate(half, half, rng));
    if (level + first > s) {
      inc = first;
    } else {
      level += first;
      inc -= first;
      v += half;
    }
    width = half;
  }
  return v + width;
}

}  // namespace detail

// Truncation level for first-passage sampling through level t: the time
// shift from dropped jumps stays below 1e-3 of the fluctuation scale.
inline double fpt_eps(const LevyModel& model, double t) {
  if (model.finite()) return 0.0;
  const double m = model.mean();
  const double target = 1e-3 * fluctuation_scale(model, t) * m * m / std::max(t, 1.0);
  return eps_for_drift(model, target);
}

// One draw of T(t).
inline double sample_first_passage(const LevyModel& model, double t, Rng& rng) {
  if (model.family() == Family::Gamma) {
    const double res = 1e-6 * std::max(1.0, fluctuation_scale(model, t));
    return detail::gamma_first_passage(model.param("rate"), t, rng, res);
  }
  const auto path = simulate_path(model, HorizonRule::until_level(t), fpt_eps(model, t), rng);
  return first_passage(path, t);
}

// (T(t) - t/m) / g(t)
inline double normalized_fpt(const LevyModel& model, double t, Rng& rng) {
  return (sample_first_passage(model, t, rng) - t / model.mean()) / fluctuation_scale(model, t);
}

}  // namespace regen

#endif  // REGEN_PATHSIM_HPP_
