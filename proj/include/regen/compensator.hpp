#ifndef REGEN_COMPENSATOR_HPP_
#define REGEN_COMPENSATOR_HPP_

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "regen/error.hpp"
#include "regen/levy_model.hpp"
#include "regen/pathsim.hpp"

namespace regen {

enum class CompensatorKind { A, A1, B };

struct CompensatorValue {
  double t = 0.0;
  double value = 0.0;
  CompensatorKind kind = CompensatorKind::A;
  std::size_t ref_id = 0;
};

// Level beyond which Phi(t e^{-S}) < 1e-12, from Phi(y) <= Phi'(0) y.
inline double compensator_level(const PhiTable& table, double t) {
  return std::log(t) + std::log(std::max(table.slope_at_zero(), 1e-300)) + std::log(1e12);
}

namespace detail {

// sum_k w(log t - S_{k-1}) * (length of the k-th constancy interval within [0, u]).
// For u = inf the path must pass compensator_level, and the expected
// remainder Phi'(0) t e^{-S_end} / PhiHat(1) is added.
template <class W>
double integrate_along_path(const SubordinatorPath& path, const PhiTable& table, double t, double u, const W& w,
                            const char* what) {
  if (!(t > 0)) throw std::invalid_argument("compensator needs t > 0");
  if (!(u >= 0)) throw std::invalid_argument("compensator needs u >= 0");
  const bool to_end = std::isinf(u);
  const double lt = std::log(t);
  if (to_end && path.final_level() < compensator_level(table, t))
    throw HorizonError(std::string(what) + ": path too short for the terminal value; extend it");
  if (!to_end && u > path.horizon)
    throw HorizonError(std::string(what) + ": path horizon ends before u");
  double total = 0.0;
  double level = 0.0;
  double v_prev = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const double v_next = path.jump_times[k];
    if (!to_end && v_next >= u) {
      total += w(lt - level) * (u - v_prev);
      return total;
    }
    total += w(lt - level) * (v_next - v_prev);
    level = path.cum_sums[k];
    v_prev = v_next;
  }
  if (!to_end) {
    total += w(lt - level) * (u - v_prev);
    return total;
  }
  const double tail = table.slope_at_zero() * t * std::exp(-level) / table.model().phi_hat(1.0);
  return total + tail;
}

}  // namespace detail

// A(t, u) = int_0^u Phi(t e^{-S(v)}) dv; u = inf gives the terminal value A(t).
inline double compensator_A(const SubordinatorPath& path, const PhiTable& table, double t,
                            double u = std::numeric_limits<double>::infinity()) {
  return detail::integrate_along_path(path, table, t, u, [&](double y) { return table.phi_log(y); }, "A(t,u)");
}

// A1(t) = int Phi'(t e^{-S(v)}) t e^{-S(v)} dv
inline double compensator_A1(const SubordinatorPath& path, const PhiTable& table, double t,
                             double u = std::numeric_limits<double>::infinity()) {
  return detail::integrate_along_path(path, table, t, u, [&](double y) { return table.phi_prime_scaled_log(y); },
                                      "A1(t,u)");
}

// B(t) = sum_{k>=1} Phi(t e^{-R_{k-1}}) along the renewal walk. The walk
// must pass compensator_level; the geometric remainder
// Phi'(0) t e^{-R_end} / PhiHat(1) is added.
inline double compensator_B(const RenewalWalk& walk, const PhiTable& table, double t) {
  if (!(t > 0)) throw std::invalid_argument("compensator needs t > 0");
  if (!table.model().finite()) throw std::invalid_argument("B(t) needs a finite Lévy measure");
  if (walk.last() < compensator_level(table, t)) throw HorizonError("B(t): walk too short; extend it");
  const double lt = std::log(t);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < walk.partial_sums.size(); ++k) total += table.phi_log(lt - walk.partial_sums[k]);
  const double r_end = walk.partial_sums.back();
  return total + table.phi_log(lt - r_end) +
         table.slope_at_zero() * t * std::exp(-r_end) / table.model().phi_hat(1.0);
}

// Renewal walk made of the path's jump sizes (finite Lévy measure).
inline RenewalWalk walk_of(const SubordinatorPath& path) {
  RenewalWalk w;
  for (double x : path.jump_sizes) w.push(x);
  return w;
}

}  // namespace regen

#endif  // REGEN_COMPENSATOR_HPP_
