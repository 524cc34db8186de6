#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "greedymine/core_model.hpp"
#include "greedymine/errors.hpp"
#include "greedymine/params.hpp"

// Exact evaluation of the Greedy-Mine chain by absorbing-chain linear solves
// on a depth-truncated state space. Every state with honest lead k <= depth is
// materialized; entering a state with k > depth leaves the finite chain. Two
// closures of that boundary bracket the infinite-chain answer:
//
//   lower: boundary states are worth 0 (the episode is lost)
//   upper: a boundary state of index k is worth min(1, (alpha / (1 - alpha))^k)
//
// The upper closure is a rigorous bound: from any boundary state the greedy
// pool can only reach H1 by first closing a lead of at least k through a walk
// that moves down with probability alpha and up with 1 - alpha, and the
// gambler's-ruin probability of that is (alpha / (1 - alpha))^k for
// alpha < 1/2.
namespace greedymine {

inline constexpr std::uint32_t kDefaultDepth = 64;

// Largest acceptable ||A v - b||_inf of a solve.
inline constexpr double kSolveResidualLimit = 1e-12;

class TruncatedChain {
 public:
  explicit TruncatedChain(std::uint32_t depth) : depth_(depth) {
    if (depth < 1) throw InvalidArgument("depth", "truncation depth must be positive");
    states_.reserve(size());
    for (auto kind : kFixed) states_.push_back(ChainState::make(kind));
    for (auto kind : kFamilies) {
      for (std::uint32_t k = min_index(kind); k <= depth; ++k) states_.push_back(ChainState::make(kind, k));
    }
  }

  std::uint32_t depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return kFixed.size() + 5 * static_cast<std::size_t>(depth_) + 3; }
  const std::vector<ChainState>& states() const noexcept { return states_; }

  // Position of a materialized state, or nullopt for terminals and states
  // beyond the truncation depth.
  std::optional<std::size_t> index_of(const ChainState& state) const noexcept {
    for (std::size_t i = 0; i < kFixed.size(); ++i) {
      if (state.kind() == kFixed[i]) return i;
    }
    if (!is_indexed(state.kind()) || state.index() > depth_) return std::nullopt;
    std::size_t offset = kFixed.size();
    for (auto kind : kFamilies) {
      if (kind == state.kind()) return offset + (state.index() - min_index(kind));
      offset += depth_ + 1 - min_index(kind);
    }
    return std::nullopt;
  }

  bool is_boundary(const ChainState& state) const noexcept {
    return is_indexed(state.kind()) && state.index() > depth_;
  }

 private:
  static constexpr std::array<StateKind, 7> kFixed{StateKind::S,  StateKind::A0,  StateKind::A1, StateKind::A2,
                                                   StateKind::H0, StateKind::H10, StateKind::A20};
  static constexpr std::array<StateKind, 5> kFamilies{StateKind::H0k, StateKind::H1k, StateKind::A0k,
                                                      StateKind::A1k, StateKind::A2k};

  std::uint32_t depth_;
  std::vector<ChainState> states_;
};

/// Solves v(s) = per_step + sum_t P(s, t) v(t) over the materialized states.
///
/// `fixed(state)` returns the prescribed value of a state that is not an
/// unknown: it must cover every terminal and boundary successor, and may also
/// pin materialized states (which then act as absorbing targets).
template <typename Fixed>
std::vector<double> solve_values(const TruncatedChain& chain, const StrategyParams& params, Fixed&& fixed,
                                 double per_step = 0.0) {
  const auto& states = chain.states();
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);

  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& state = states[static_cast<std::size_t>(i)];
    if (const std::optional<double> pinned = fixed(state)) {
      b(i) = *pinned;
      continue;
    }
    b(i) = per_step;
    for (const auto& edge : transition_distribution(state, params)) {
      if (const auto j = chain.index_of(edge.to)) {
        a(i, static_cast<Eigen::Index>(*j)) -= edge.probability;
      } else if (const std::optional<double> value = fixed(edge.to)) {
        b(i) += edge.probability * *value;
      } else {
        throw ContractViolation("no value for absorbing successor " + to_string(edge.to));
      }
    }
  }

  const Eigen::VectorXd v = a.partialPivLu().solve(b);
  const double residual = (a * v - b).lpNorm<Eigen::Infinity>();
  if (!v.allFinite() || !(residual <= kSolveResidualLimit)) {
    throw NumericalError("absorption solve failed: residual " + std::to_string(residual) + " at alpha " +
                         std::to_string(params.alpha()) + ", gamma " + std::to_string(params.gamma()));
  }
  return {v.data(), v.data() + v.size()};
}

// Upper bound on the chance of ever reaching H1 from a state whose honest
// lead is k.
inline double tail_bound(double alpha, std::uint32_t k) {
  if (alpha >= 0.5) return 1.0;
  return std::min(1.0, std::pow(alpha / (1.0 - alpha), static_cast<double>(k)));
}

struct AbsorptionBounds {
  double lower;
  double upper;
  std::uint32_t depth;
  double residual;  // upper - lower
};

namespace detail {

inline void require_depth(std::uint32_t depth, std::uint32_t minimum) {
  if (depth < minimum) {
    throw InvalidArgument("depth", "depth " + std::to_string(depth) + " is below the minimum " +
                                       std::to_string(minimum));
  }
}

}  // namespace detail

/// Probability that an episode started at S ends in H1, bracketed by the
/// pessimistic and tail-bound closures of the depth-truncated chain.
inline AbsorptionBounds absorption_bounds(const StrategyParams& params, std::uint32_t depth = kDefaultDepth) {
  detail::require_depth(depth, 2);
  const TruncatedChain chain(depth);
  const auto start = *chain.index_of(ChainState::start());

  const auto lower = solve_values(chain, params, [&](const ChainState& s) -> std::optional<double> {
    if (s.kind() == StateKind::H1) return 1.0;
    if (chain.is_boundary(s)) return 0.0;
    return std::nullopt;
  });
  // The gap between the closures solves the same system with H1 worth 0 and
  // the boundary worth its tail bound.
  const auto gap = solve_values(chain, params, [&](const ChainState& s) -> std::optional<double> {
    if (s.kind() == StateKind::H1) return 0.0;
    if (chain.is_boundary(s)) return tail_bound(params.alpha(), s.index());
    return std::nullopt;
  });

  AbsorptionBounds bounds{};
  bounds.depth = depth;
  bounds.lower = std::clamp(lower[start], 0.0, 1.0);
  bounds.residual = std::max(gap[start], 0.0);
  bounds.upper = std::min(bounds.lower + bounds.residual, 1.0);
  return bounds;
}

// Probability of leaving the truncated chain through its boundary before H1.
inline double boundary_mass(const StrategyParams& params, std::uint32_t depth = kDefaultDepth) {
  detail::require_depth(depth, 2);
  const TruncatedChain chain(depth);
  const auto v = solve_values(chain, params, [&](const ChainState& s) -> std::optional<double> {
    if (s.kind() == StateKind::H1) return 0.0;
    if (chain.is_boundary(s)) return 1.0;
    return std::nullopt;
  });
  return v[*chain.index_of(ChainState::start())];
}

// Expected Key-Blocks per episode when episodes end at H1 or on the step that
// crosses the boundary.
inline double expected_steps(const StrategyParams& params, std::uint32_t depth = kDefaultDepth) {
  detail::require_depth(depth, 2);
  const TruncatedChain chain(depth);
  const auto v = solve_values(
      chain, params,
      [&](const ChainState& s) -> std::optional<double> {
        if (s.kind() == StateKind::H1 || chain.is_boundary(s)) return 0.0;
        return std::nullopt;
      },
      1.0);
  return v[*chain.index_of(ChainState::start())];
}

/// Probability that the honest lead, starting at one block (H1k(1)), is
/// closed back to the tie H10 before it exceeds `depth`. Defined for
/// 0 < alpha < 0.5; at or beyond one half the descent is almost sure.
inline double descent_probability(const StrategyParams& params, std::uint32_t depth = kDefaultDepth) {
  if (!(params.alpha() > 0.0 && params.alpha() < 0.5)) {
    throw InvalidArgument("alpha", "descent probability needs 0 < alpha < 0.5");
  }
  detail::require_depth(depth, 8);
  const TruncatedChain chain(depth);
  const auto v = solve_values(chain, params, [&](const ChainState& s) -> std::optional<double> {
    if (s.kind() == StateKind::H10) return 1.0;
    if (s.kind() == StateKind::H1 || chain.is_boundary(s)) return 0.0;
    return std::nullopt;
  });
  return v[*chain.index_of(ChainState::h1k(1))];
}

}  // namespace greedymine
