#ifndef REGEN_NORM_CONSTANTS_HPP_
#define REGEN_NORM_CONSTANTS_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "regen/error.hpp"
#include "regen/levy_model.hpp"
#include "regen/limit_laws.hpp"

namespace regen {

enum class Target { Kn, Kn1 };

// Centering variants for K_n. They differ by O(1) terms and share one limit.
//   PhiIntegral    : m^{-1} int_0^{log n} Phi(e^u) du = m^{-1} int_1^n Phi(y)/y dy
//   PhiHatIntegral : m^{-1} int_1^n PhiHat(z)/z dz
//   TailIntegral   : m^{-1} int_0^{log n} nu[-log(1-e^{-z}), inf) dz
enum class Centering { PhiIntegral, PhiHatIntegral, TailIntegral };

inline const char* to_string(Centering c) {
  switch (c) {
    case Centering::PhiIntegral: return "phi_integral";
    case Centering::PhiHatIntegral: return "phi_hat_integral";
    case Centering::TailIntegral: return "tail_integral";
  }
  return "?";
}

// Moment regime of the jump law at infinity.
//   FiniteVariance : s^2 < inf, g(x) = sqrt(s^2 m^{-3} x)
//   SlowTruncated  : s^2 = inf, int_0^x y^2 nu(dy) slowly varying, g(x) = m^{-3/2} c(x)
//   StableTail     : nu[x, inf) ~ x^{-alpha} L(x), g(x) = m^{-1-1/alpha} c(x)
enum class MomentRegime { FiniteVariance, SlowTruncated, StableTail };

inline const char* to_string(MomentRegime r) {
  switch (r) {
    case MomentRegime::FiniteVariance: return "finite_variance";
    case MomentRegime::SlowTruncated: return "slow_truncated_second_moment";
    case MomentRegime::StableTail: return "stable_tail";
  }
  return "?";
}

inline MomentRegime moment_regime(const LevyModel& m) {
  if (std::isfinite(m.second_moment())) return MomentRegime::FiniteVariance;
  if (m.tail_alpha()) return MomentRegime::StableTail;
  return MomentRegime::SlowTruncated;
}

// Index of the limiting Z(1): 2 for the Brownian regimes.
inline double regime_alpha(const LevyModel& m) {
  return moment_regime(m) == MomentRegime::StableTail ? *m.tail_alpha() : 2.0;
}

// Root c of the decreasing map c -> ratio(c) = 1, bracket [1, max(x^2, 10)]
// widened if the root lies outside.
template <class Ratio>
double solve_normalizer(const Ratio& ratio, double x) {
  double lo = 1.0;
  double hi = std::max(x * x, 10.0);
  while (ratio(lo) < 1.0 && lo > 1e-300) lo *= 0.5;
  while (ratio(hi) > 1.0 && hi < 1e300) hi *= 2.0;
  auto f = [&](double lc) { return std::log(ratio(std::exp(lc))); };
  boost::math::tools::eps_tolerance<double> tol(50);
  auto r = boost::math::tools::bisect(f, std::log(lo), std::log(hi), tol);
  return std::exp(0.5 * (r.first + r.second));
}

// c(x) of the heavy-tailed regimes: x L(c)/c^2 = 1 with L the truncated
// second moment, or x nu[c, inf) = 1 for the stable tail.
inline double stable_normalizer(const LevyModel& m, double x) {
  switch (moment_regime(m)) {
    case MomentRegime::SlowTruncated:
      return solve_normalizer([&](double c) { return x * m.truncated_second_moment(c) / (c * c); }, x);
    case MomentRegime::StableTail:
      return solve_normalizer([&](double c) { return x * m.tail(c); }, x);
    case MomentRegime::FiniteVariance: break;
  }
  throw std::invalid_argument("stable normalizer needs an infinite second moment");
}

// Fluctuation scale g of the first-passage time T: (T(x) - x/m)/g(x) has a
// nondegenerate limit.
inline double fluctuation_scale(const LevyModel& m, double x) {
  const double mean = m.mean();
  switch (moment_regime(m)) {
    case MomentRegime::FiniteVariance: return std::sqrt(m.second_moment() * std::pow(mean, -3.0) * x);
    case MomentRegime::SlowTruncated: return std::pow(mean, -1.5) * stable_normalizer(m, x);
    case MomentRegime::StableTail: {
      const double a = *m.tail_alpha();
      return std::pow(mean, -1.0 - 1.0 / a) * stable_normalizer(m, x);
    }
  }
  return 0.0;
}

// int_0^y phi(u) du
inline double phi_integral(const LevyModel& m, double y) {
  if (y <= 0) return 0.0;
  auto e = quad::gauss_kronrod([&](double u) { return m.phi_log(u); }, 0.0, y);
  return quad::checked(e, "int phi", 1e-9);
}

inline double centering_kn(const LevyModel& m, double n, Centering c) {
  const double ly = std::log(n);
  switch (c) {
    case Centering::PhiIntegral: return phi_integral(m, ly) / m.mean();
    case Centering::PhiHatIntegral: {
      auto e = quad::gauss_kronrod([&](double u) { return m.phi_hat_log(u); }, 0.0, ly);
      return quad::checked(e, "int phi-hat", 1e-9) / m.mean();
    }
    case Centering::TailIntegral: {
      // nu[-log(1-e^{-z}), inf) jumps where -log(1-e^{-z}) crosses an atom.
      std::vector<double> cuts{0.0};
      for (const auto& a : m.atoms()) {
        const double z = -std::log(-std::expm1(-a.x));
        if (z > 0 && z < ly) cuts.push_back(z);
      }
      cuts.push_back(ly);
      std::sort(cuts.begin(), cuts.end());
      auto f = [&](double z) {
        if (z <= 0) return 0.0;
        return m.tail(-std::log1p(-std::exp(-z)));
      };
      quad::Estimate total;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += quad::gauss_kronrod(f, cuts[i], cuts[i + 1]);
      return quad::checked(total, "int tail", 1e-9) / m.mean();
    }
  }
  return 0.0;
}

// Centering, normalization and limit law for K_n or K_{n,1} (also used for
// the Poissonized K(t), K(t,1) with n = t).
struct NormConstants {
  double b = 0.0;
  double a = 1.0;
  LimitLaw law;
  MomentRegime regime = MomentRegime::FiniteVariance;
  std::string branch;
  std::function<double(double)> g_of;
  std::function<double(double)> h_of;  // Condition B only
  std::function<double(double)> c_of;  // heavy-tailed regimes only
  bool exploratory = false;
};

// Whether an (model, target) pair has a proven limit theorem.
inline void require_supported(const LevyModel& m, Target target, bool exploratory) {
  const auto& cond = m.condition();
  if (target == Target::Kn) {
    if (cond.kind == GrowthCondition::Kind::C && !(m.increment_variance() > 0))
      throw UnsupportedRegime("K_n has no normal limit when log W is degenerate (single atom)");
    return;
  }
  if (cond.kind == GrowthCondition::Kind::C)
    throw UnsupportedRegime("K_{n,1} has no limit theorem for a finite Lévy measure");
  if (!m.kn1_monotone())
    throw UnsupportedRegime("K_{n,1} limit theorems need t -> t Phi'(t) nondecreasing");
  if (cond.kind == GrowthCondition::Kind::A) {
    if (cond.beta < 1.0) throw UnsupportedRegime("K_{n,1} limit theorem under Condition A needs beta >= 1");
    if (cond.beta == 1.0 && moment_regime(m) == MomentRegime::FiniteVariance && !exploratory)
      throw UnsupportedRegime(
          "K_{n,1} with finite variance and Phi(x) ~ c log x is an open case: only a conjectured "
          "two-component normal limit is known (set exploratory to run it outside acceptance)");
  }
}

inline NormConstants norm_constants(const LevyModel& m, double n, Target target,
                                    Centering centering = Centering::PhiIntegral, bool exploratory = false) {
  if (!(n >= 2)) throw std::invalid_argument("norm_constants needs n >= 2");
  require_supported(m, target, exploratory);
  NormConstants nc;
  nc.regime = moment_regime(m);
  const double alpha = regime_alpha(m);
  const LevyModel* mp = &m;
  nc.g_of = [mp](double x) { return fluctuation_scale(*mp, x); };
  if (nc.regime != MomentRegime::FiniteVariance) nc.c_of = [mp](double x) { return stable_normalizer(*mp, x); };
  const auto& cond = m.condition();
  const double ln = std::log(n);
  std::ostringstream br;
  br << (target == Target::Kn ? "Kn" : "Kn1") << "/" << to_string(cond) << "/" << to_string(nc.regime);

  // Argument of g: log n, or h(log n) under Condition B.
  double garg = ln;
  if (cond.kind == GrowthCondition::Kind::B) {
    nc.h_of = [mp](double t) { return auxiliary_h(*mp, t); };
    garg = auxiliary_h(m, ln);
  }

  if (target == Target::Kn) {
    nc.b = centering_kn(m, n, centering);
    switch (cond.kind) {
      case GrowthCondition::Kind::A:
        nc.a = nc.g_of(garg) * m.phi(n);
        nc.law = cond.beta > 0 ? LimitLaw::make(LawKind::J_beta, alpha, cond.beta) : LimitLaw::make(LawKind::Z1, alpha);
        break;
      case GrowthCondition::Kind::B:
        nc.a = nc.g_of(garg) * m.phi(n);
        nc.law = LimitLaw::make(LawKind::K_exp, alpha);
        break;
      case GrowthCondition::Kind::C:
        // Renewal walk scale: sigma^2 = Var(log W) replaces s^2.
        if (nc.regime == MomentRegime::FiniteVariance) {
          const double sigma2 = m.increment_variance();
          const double mean = m.mean();
          nc.g_of = [sigma2, mean](double x) { return std::sqrt(sigma2 * std::pow(mean, -3.0) * x); };
        }
        nc.a = nc.g_of(garg);
        nc.law = LimitLaw::make(LawKind::Z1, alpha);
        break;
    }
  } else {
    nc.b = m.phi(n) / m.mean();
    const double nphip = m.phi_derivative_scaled_log(1, ln);
    if (cond.kind == GrowthCondition::Kind::B) {
      nc.a = nphip * nc.g_of(garg);
      nc.law = LimitLaw::make(LawKind::K_exp, alpha);
    } else if (cond.beta == 1.0 && nc.regime == MomentRegime::FiniteVariance) {
      // Conjectured limit: (s^2 m^{-3})^{1/2} V1 + (m c)^{-1/2} V2 scaled by c sqrt(log n).
      const double c = m.log_growth_constant();
      const double mean = m.mean();
      nc.a = c * std::sqrt(ln);
      nc.law = LimitLaw::normal(std::sqrt(m.second_moment() * std::pow(mean, -3.0) + 1.0 / (mean * c)));
      nc.exploratory = true;
      br << "/conjecture";
    } else {
      nc.a = nphip * nc.g_of(garg);
      nc.law = cond.beta == 1.0 ? LimitLaw::make(LawKind::Z1, alpha) : LimitLaw::make(LawKind::J1_beta, alpha, cond.beta);
    }
  }
  nc.branch = br.str();
  return nc;
}

}  // namespace regen

#endif  // REGEN_NORM_CONSTANTS_HPP_
