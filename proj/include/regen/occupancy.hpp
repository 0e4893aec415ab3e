#ifndef REGEN_OCCUPANCY_HPP_
#define REGEN_OCCUPANCY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <mutex>
#include <ostream>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "regen/error.hpp"
#include "regen/levy_model.hpp"
#include "regen/pathsim.hpp"
#include "regen/rng.hpp"

namespace regen {

// Ordered partition of n; parts are the occupancy numbers of occupied gaps
// from left to right.
struct Composition {
  std::vector<long long> parts;

  long long n() const { return std::accumulate(parts.begin(), parts.end(), 0LL); }
  long long K() const { return static_cast<long long>(parts.size()); }
  long long K_r(long long r) const { return std::count(parts.begin(), parts.end(), r); }
  std::map<long long, long long> counts_by_size() const {
    std::map<long long, long long> c;
    for (auto p : parts) ++c[p];
    return c;
  }
};

struct BlockCounts {
  long long K = 0;
  long long K1 = 0;
  friend bool operator==(const BlockCounts&, const BlockCounts&) = default;
};

inline BlockCounts block_counts(const Composition& c) { return {c.K(), c.K_r(1)}; }

// "3;1;1"
inline void write_parts(std::ostream& os, const Composition& c) {
  for (std::size_t i = 0; i < c.parts.size(); ++i) os << (i ? ";" : "") << c.parts[i];
}

inline long long draw_binomial(long long trials, double p, Rng& rng) {
  if (trials <= 0 || p <= 0) return 0;
  if (p >= 1) return trials;
  return std::binomial_distribution<long long>(trials, p)(rng);
}

// Occupied gaps of `path` for `count` points i.i.d. standard exponential.
// Gap k is (S_{k-1}, S_k); given N points beyond S_{k-1}, memorylessness
// makes its occupancy Binomial(N, 1 - e^{-size}). The path is extended as
// needed. Returns (jump index, occupancy) pairs.
inline std::vector<std::pair<std::size_t, long long>> occupy_path(SubordinatorPath& path, const LevyModel& model,
                                                                   long long count, Rng& path_rng, Rng& point_rng) {
  std::vector<std::pair<std::size_t, long long>> occ;
  long long left = count;
  std::size_t k = 0;
  while (left > 0) {
    if (k == path.size()) {
      extend_path(path, model, HorizonRule::until_level(path.final_level() + 10.0), path_rng);
    }
    const long long c = draw_binomial(left, -std::expm1(-path.jump_sizes[k]), point_rng);
    if (c > 0) {
      occ.emplace_back(k, c);
      left -= c;
    }
    ++k;
  }
  return occ;
}

// Fixed-n sampling as constructed: n exponential points, a path run until it
// passes the largest one, each point assigned to the gap containing it.
inline Composition sample_composition_path(const LevyModel& model, long long n, double eps, Rng& rng,
                                           SubordinatorPath* path_out = nullptr) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (auto& e : pts) e = std_exponential(rng);
  std::sort(pts.begin(), pts.end());
  auto path = simulate_path(model, HorizonRule::until_level(pts.back()), eps, rng);
  Composition c;
  std::size_t i = 0;
  double left_end = 0.0;
  for (std::size_t k = 0; k < path.size() && i < pts.size(); ++k) {
    const double right_end = path.cum_sums[k];
    long long cnt = 0;
    while (i < pts.size() && pts[i] < right_end) {
      if (pts[i] >= left_end) ++cnt;
      ++i;
    }
    if (cnt > 0) c.parts.push_back(cnt);
    left_end = right_end;
  }
  if (path_out) *path_out = std::move(path);
  return c;
}

inline Composition sample_composition_path(const LevyModel& model, long long n, double eps, std::uint64_t seed) {
  Rng rng(seed);
  return sample_composition_path(model, n, eps, rng);
}

// Truncation levels indexed by the number of points still to place:
// level j serves N in (2^{j-1}, 2^j] and drops jumps below eps_j, where
// 2^j * tau * int_0^{eps_j} x nu(dx) <= budget.
class TruncationSchedule {
 public:
  TruncationSchedule(const LevyModel& model, long long n_max, double budget = 1e-3) {
    const double tau = expected_horizon(model, static_cast<double>(n_max));
    int levels = 1;
    while ((1LL << (levels - 1)) < n_max) ++levels;
    for (int j = 0; j < levels; ++j) {
      const double eps = model.finite() ? 0.0 : eps_for_drift(model, budget / (std::ldexp(1.0, j) * tau));
      eps_.push_back(eps);
    }
  }
  // One truncation level for every stage.
  static TruncationSchedule fixed(double eps) { return TruncationSchedule(eps); }

  double eps_for(long long remaining) const {
    std::size_t j = 0;
    while ((1LL << j) < remaining) ++j;
    return eps_[std::min(j, eps_.size() - 1)];
  }
  double smallest_eps() const { return eps_.back(); }

 private:
  explicit TruncationSchedule(double eps) : eps_{eps} {}

  std::vector<double> eps_;
};

// Binomial(trials, 1 - e^{-x}) conditioned on being positive: the index of
// the first success is a truncated geometric, the rest are unconditioned.
inline long long draw_positive_binomial(long long trials, double x, Rng& rng) {
  const double u = uniform01(rng);
  double j = std::ceil(-std::log1p(u * std::expm1(-static_cast<double>(trials) * x)) / x);
  j = std::clamp(j, 1.0, static_cast<double>(trials));
  const auto first = static_cast<long long>(j);
  return 1 + draw_binomial(trials - first, -std::expm1(-x), rng);
}

// Share of jumps below c = kThinShare / N examined by the sweep.
inline constexpr double kThinShare = 1e-3;

// Same law as sample_composition_path up to truncation: the jump stream is
// swept with binomial occupancy, and the truncation level rises as points
// are used up. Jump times are not needed for block counts.
//
// With N points left, a jump x < c = kThinShare / N is occupied with
// probability 1 - e^{-N x} <= kThinShare. Such jumps are examined with
// probability kThinShare and kept with probability (1 - e^{-N x}) / kThinShare;
// unexamined jumps are empty and skipped without being drawn.
inline Composition sample_composition_sweep(const LevyModel& model, long long n, const TruncationSchedule& sched,
                                            Rng& rng) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Composition comp;
  long long left = n;
  double eps = 0.0, cut = 0.0, p_big = 1.0;
  bool thin = false;
  auto reset = [&] {
    eps = sched.eps_for(left);
    cut = kThinShare / static_cast<double>(left);
    thin = false;
    if (model.finite() || !(cut > eps)) return;
    const double all = model.jump_rate(eps), big = model.jump_rate(cut);
    const double small = all - big;
    if (!(small > 0.5 * all)) return;
    thin = true;
    p_big = big / (big + small * kThinShare);
  };
  reset();
  while (left > 0) {
    long long k = 0;
    if (!thin || uniform01(rng) < p_big) {
      const double x = model.draw_jump(thin ? cut : eps, rng);
      k = draw_binomial(left, -std::expm1(-x), rng);
    } else {
      double x;
      do x = model.draw_jump(eps, rng);
      while (x >= cut);
      const double occupied = -std::expm1(-static_cast<double>(left) * x);
      if (uniform01(rng) * kThinShare < occupied) k = draw_positive_binomial(left, x, rng);
    }
    if (k > 0) {
      comp.parts.push_back(k);
      left -= k;
      if (left > 0) reset();
    }
  }
  return comp;
}

struct PoissonOccupancy {
  double t = 0.0;
  std::vector<long long> counts;
  long long pi_t = 0;
  long long K_t = 0;
  long long K_t1 = 0;
};

inline PoissonOccupancy occupancy_from(double t, long long pi_t,
                                       const std::vector<std::pair<std::size_t, long long>>& occ) {
  PoissonOccupancy p;
  p.t = t;
  p.pi_t = pi_t;
  for (const auto& [k, c] : occ) {
    p.counts.push_back(c);
    if (c == 1) ++p.K_t1;
  }
  p.K_t = static_cast<long long>(p.counts.size());
  return p;
}

inline long long draw_poisson(double mean, Rng& rng) {
  if (mean <= 0) return 0;
  return std::poisson_distribution<long long>(mean)(rng);
}

// K(t) and K(t,1): Poisson(t) many exponential points on one path.
inline PoissonOccupancy sample_poissonized(const LevyModel& model, double t, double eps, Rng& rng) {
  if (!(t > 0)) throw std::invalid_argument("t must be positive");
  const long long pi = draw_poisson(t, rng);
  auto path = simulate_path(model, HorizonRule::until_level(0.0), eps, rng);
  return occupancy_from(t, pi, occupy_path(path, model, pi, rng, rng));
}

// First-block law q(n, m) = C(n,m) int (1-e^{-x})^m e^{-(n-m)x} nu(dx) / PhiHat(n),
// computed lazily per row and memoized. Safe to share across threads.
class DecrementMatrix {
 public:
  // Testing hook: Standard is the law above; DropBinomial omits C(n,m).
  enum class Formula { Standard, DropBinomial };

  static constexpr long long kMaxN = 10000;

  explicit DecrementMatrix(const LevyModel& model, Formula f = Formula::Standard) : model_(&model), formula_(f) {}

  const LevyModel& model() const { return *model_; }

  double q(long long n, long long m) {
    check(n, m);
    std::lock_guard<std::mutex> lock(mu_);
    auto& row = row_locked(n);
    while (static_cast<long long>(row.probs.size()) < m) row.probs.push_back(compute(n, static_cast<long long>(row.probs.size()) + 1, row.log_norm));
    return row.probs[static_cast<std::size_t>(m - 1)];
  }

  std::vector<double> row(long long n) {
    std::vector<double> r;
    for (long long m = 1; m <= n; ++m) r.push_back(q(n, m));
    return r;
  }

  // Inverse-CDF draw of the first block size of C_n with early exit.
  long long draw_first_block(long long n, Rng& rng) {
    const double u = uniform01(rng);
    double cum = 0.0;
    for (long long m = 1; m <= n; ++m) {
      cum += q(n, m);
      if (u < cum) return m;
    }
    return n;
  }

 private:
  struct Row {
    double log_norm = 0.0;  // log PhiHat(n)
    std::vector<double> probs;
  };

  void check(long long n, long long m) const {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("decrement matrix supports 1 <= n <= 10^4");
    if (m < 1 || m > n) throw std::invalid_argument("q(n,m) needs 1 <= m <= n");
  }

  Row& row_locked(long long n) {
    auto it = rows_.find(n);
    if (it != rows_.end()) return it->second;
    Row r;
    r.log_norm = std::log(model_->phi_hat(static_cast<double>(n)));
    return rows_.emplace(n, std::move(r)).first->second;
  }

  double compute(long long n, long long m, double log_norm) const {
    const double dn = static_cast<double>(n), dm = static_cast<double>(m);
    const double log_binom =
        formula_ == Formula::Standard ? std::lgamma(dn + 1) - std::lgamma(dm + 1) - std::lgamma(dn - dm + 1) : 0.0;
    auto f = [&](double lx) {
      return std::exp(log_binom - log_norm + dm * log_one_minus_exp_neg(lx) - (dn - dm) * std::exp(lx));
    };
    // The integrand peaks near x = log(n/(n-m)).
    const double peak = m < n ? std::log(std::log(dn / (dn - dm))) : std::log(std::log(dn) + 1.0);
    return quad::checked(model_->integrate_estimate(f, peak), "decrement probability", 1e-8);
  }

  const LevyModel* model_;
  Formula formula_;
  std::mutex mu_;
  std::map<long long, Row> rows_;
};

inline Composition sample_composition_decrement(DecrementMatrix& q, long long n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Composition c;
  long long k = n;
  while (k > 0) {
    const long long m = q.draw_first_block(k, rng);
    c.parts.push_back(m);
    k -= m;
  }
  return c;
}

// Removes one of the n points uniformly at random.
inline Composition delete_random_point(Composition c, Rng& rng) {
  long long idx = static_cast<long long>(uniform01(rng) * static_cast<double>(c.n()));
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    if (idx < c.parts[i]) {
      if (--c.parts[i] == 0) c.parts.erase(c.parts.begin() + static_cast<std::ptrdiff_t>(i));
      return c;
    }
    idx -= c.parts[i];
  }
  return c;
}

}  // namespace regen

#endif  // REGEN_OCCUPANCY_HPP_
