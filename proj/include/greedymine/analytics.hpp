#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "greedymine/errors.hpp"
#include "greedymine/params.hpp"

// Closed-form incentive analysis: fee-split bounds for the classic attacks,
// per-episode state probabilities of the Greedy-Mine chain, expected revenue
// of honest and greedy mining, relative extra reward, and the break-even
// mining power.
namespace greedymine {

struct Interval {
  double lower;
  double upper;

  bool operator==(const Interval&) const = default;
};

struct IncentiveBounds {
  double alpha;
  double r_min_inclusion;  // transaction inclusion attack unprofitable above this
  double r_min_modified;   // modified inclusion attack unprofitable above this
  double r_max_extension;  // longest-chain extension unprofitable below this
  // (r_min_modified, r_max_extension) when non-empty.
  std::optional<Interval> window;
};

/// Admissible leader fee shares against an adversary of power alpha.
/// Requires 0 <= alpha < 1; alpha = 1 is degenerate and rejected.
inline IncentiveBounds incentive_bounds(double alpha) {
  detail::require_probability(alpha, "alpha");
  if (alpha >= 1.0) throw InvalidArgument("alpha", "bounds are degenerate at alpha = 1");

  IncentiveBounds b{};
  b.alpha = alpha;
  b.r_min_inclusion = 1.0 - (1.0 - alpha) / (1.0 + alpha - alpha * alpha);
  b.r_min_modified = alpha / (1.0 + alpha);
  b.r_max_extension = (1.0 - alpha) / (2.0 - alpha);
  if (b.r_min_modified < b.r_max_extension) b.window = Interval{b.r_min_modified, b.r_max_extension};
  return b;
}

// Reach probabilities of the named states within one episode, with the
// fork-race excursions folded in through the geometric factor
// sum_k (alpha (1 - alpha))^k.
struct StateProbabilities {
  double p_s;
  double p_a0;
  double p_h0;
  double p_h00;
  double p_h10;
  double p_a1;
  double p_a2;
  double p_a00;
  double p_a10;
  double p_a20;
};

inline StateProbabilities state_probabilities(const StrategyParams& params) {
  const double a = params.alpha();
  const double g = params.gamma();
  const double excursion = 1.0 / (1.0 - a * (1.0 - a));

  StateProbabilities p{};
  p.p_s = 1.0;
  p.p_a0 = (1.0 - a) * p.p_s;
  p.p_h0 = a + a * p.p_a0;
  p.p_a1 = (1.0 - a) * p.p_a0;
  p.p_a2 = a * p.p_a1;
  p.p_a00 = (1.0 - a) * p.p_a1;
  p.p_h00 = (1.0 - a) * p.p_h0 + g * (1.0 - a) * p.p_a2;
  p.p_a10 = (1.0 - g) * (1.0 - a) * p.p_a2 + a * p.p_a00;
  p.p_h10 = a * p.p_h00 * excursion;
  p.p_a20 = a * p.p_a10 * excursion;
  return p;
}

// Expected share of the whale fee earned by a pool of power alpha that mines
// honestly. The r_leader terms cancel, leaving alpha.
inline double honest_revenue(const StrategyParams& params) {
  const double a = params.alpha();
  const double r = params.r_leader();
  return a * a + a * (1.0 - a) * r + (1.0 - a) * a * (1.0 - r);
}

// Expected share of the whale fee earned by the greedy pool: the probability
// mass flowing into H1 from H0, H10, A2 and A20.
inline double greedy_revenue(const StrategyParams& params) {
  const auto p = state_probabilities(params);
  const double a = params.alpha();
  const double tie_win = a + params.gamma() * (1.0 - a);
  return a * p.p_h0 + tie_win * p.p_h10 + a * p.p_a2 + tie_win * p.p_a20;
}

/// Relative extra reward (r_attack - r_base) / r_base as a signed fraction.
/// Throws UndefinedRer when r_base is not positive.
inline double rer(double r_attack, double r_base) {
  if (!(r_base > 0.0)) throw UndefinedRer();
  return (r_attack - r_base) / r_base;
}

struct AnalyticReport {
  StrategyParams params;
  StateProbabilities probs;
  double revenue_honest;
  double revenue_greedy;
  std::optional<double> rer;  // absent when alpha = 0
};

inline AnalyticReport analyze(const StrategyParams& params) {
  AnalyticReport report{params, state_probabilities(params), honest_revenue(params), greedy_revenue(params),
                        std::nullopt};
  if (report.revenue_honest > 0.0) report.rer = rer(report.revenue_greedy, report.revenue_honest);
  return report;
}

inline constexpr double kThresholdLow = 1e-6;
inline constexpr double kThresholdHigh = 0.5;
inline constexpr double kDefaultTolerance = 1e-6;
inline constexpr int kBisectionIterations = 200;
inline constexpr std::size_t kThresholdScanCells = 1000;

/// Smallest root of a continuous f on [lo, hi]: scans `cells` equal
/// sub-intervals for the first sign change, then bisects it until the bracket
/// half-width is at most tol (or `max_iter` halvings). Throws NoThreshold when
/// no sub-interval changes sign.
template <typename F>
double first_root(F&& f, double lo, double hi, double tol, std::size_t cells = kThresholdScanCells,
                  int max_iter = kBisectionIterations) {
  if (!(tol > 0.0)) throw InvalidArgument("tol", "tolerance must be positive");
  if (!(lo < hi) || cells == 0) throw ContractViolation("empty search interval");

  const double width = (hi - lo) / static_cast<double>(cells);
  double left = lo;
  double f_left = f(left);
  if (f_left == 0.0) return left;
  for (std::size_t i = 1; i <= cells; ++i) {
    const double right = i == cells ? hi : lo + width * static_cast<double>(i);
    const double f_right = f(right);
    if (f_right == 0.0) return right;
    if (std::signbit(f_left) != std::signbit(f_right)) {
      double a = left;
      double b = right;
      double f_a = f_left;
      for (int it = 0; it < max_iter && (b - a) / 2.0 > tol; ++it) {
        const double mid = a + (b - a) / 2.0;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (std::signbit(f_mid) == std::signbit(f_a)) {
          a = mid;
          f_a = f_mid;
        } else {
          b = mid;
        }
      }
      return a + (b - a) / 2.0;
    }
    left = right;
    f_left = f_right;
  }
  throw NoThreshold("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

/// Minimum greedy mining power at which Greedy-Mine out-earns honest mining,
/// searched on (0, 0.5].
inline double threshold_alpha(double gamma, double tol = kDefaultTolerance) {
  detail::require_probability(gamma, "gamma");
  const auto gap = [gamma](double alpha) {
    const StrategyParams params(alpha, gamma);
    return greedy_revenue(params) - honest_revenue(params);
  };
  try {
    return first_root(gap, kThresholdLow, kThresholdHigh, tol);
  } catch (const NoThreshold&) {
    throw NoThreshold("no profitability threshold in (0, 0.5] for gamma = " + std::to_string(gamma));
  }
}

}  // namespace greedymine
