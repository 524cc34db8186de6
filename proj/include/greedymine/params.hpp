#pragma once

#include <cmath>
#include <string>

#include "greedymine/errors.hpp"

namespace greedymine {

// Bitcoin-NG pays 40% of an epoch's fees to its leader.
inline constexpr double kDefaultLeaderShare = 0.40;

namespace detail {

inline double require_probability(double value, const char* field) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    throw InvalidArgument(field, "value " + std::to_string(value) + " is not a probability in [0, 1]");
  }
  return value;
}

}  // namespace detail

/// Parameters of one attack scenario.
///
/// alpha is the greedy pool's share of total mining power, gamma the share of
/// honest power that extends the greedy branch when two branches tie, and
/// r_leader the share of an epoch's fees paid to its own leader. All three are
/// probabilities; construction rejects anything outside [0, 1].
class StrategyParams {
 public:
  StrategyParams(double alpha, double gamma, double r_leader = kDefaultLeaderShare)
      : alpha_(detail::require_probability(alpha, "alpha")),
        gamma_(detail::require_probability(gamma, "gamma")),
        r_leader_(detail::require_probability(r_leader, "r-leader")) {}

  double alpha() const noexcept { return alpha_; }
  double gamma() const noexcept { return gamma_; }
  double r_leader() const noexcept { return r_leader_; }

  bool operator==(const StrategyParams&) const = default;

 private:
  double alpha_;
  double gamma_;
  double r_leader_;
};

}  // namespace greedymine
