#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "greedymine/errors.hpp"
#include "greedymine/params.hpp"

// State machine of one whale-transaction episode under Greedy-Mine.
//
// Naming follows the fork race: H* states have the whale transaction packaged
// by the greedy pool, A* states by the honest pool. Indexed families carry the
// lead of the honest branch in k.
//
//   S      nothing packaged yet
//   H0     greedy packaged, nothing on top
//   H1     greedy packaged and extended by greedy (greedy wins, terminal)
//   H0k(k) greedy packaged, honest blocks on top, honest branch k+1 long
//   H10    greedy and honest branches tied
//   H1k(k) honest branch k ahead of the greedy branch (k >= 1)
//   A0     honest packaged, nothing on top
//   A1     honest packaged, one honest block on top
//   A2     greedy forked in front of the honest whale block, tie
//   A0k(k) honest packaged, honest branch k+2 long
//   A1k(k) honest branch k+1 ahead after a greedy fork
//   A20    tie after the honest lead was closed
//   A2k(k) honest branch k ahead (k >= 1)
//   HonestWin  absorbing boundary, never entered by the transition rules
namespace greedymine {

enum class StateKind : std::uint8_t {
  S,
  A0,
  A1,
  A2,
  H0,
  H1,
  HonestWin,
  H0k,
  H10,
  H1k,
  A0k,
  A1k,
  A20,
  A2k,
};

enum class Finder : std::uint8_t { Greedy, Honest };

enum class TieChoice : std::uint8_t { ExtendGreedy, ExtendHonest };

enum class Outcome : std::uint8_t { GreedyWin, HonestWin };

constexpr bool is_indexed(StateKind kind) noexcept {
  switch (kind) {
    case StateKind::H0k:
    case StateKind::H1k:
    case StateKind::A0k:
    case StateKind::A1k:
    case StateKind::A2k:
      return true;
    default:
      return false;
  }
}

// Smallest admissible index of an indexed family.
constexpr std::uint32_t min_index(StateKind kind) noexcept {
  return (kind == StateKind::H1k || kind == StateKind::A2k) ? 1 : 0;
}

class ChainState {
 public:
  constexpr ChainState() = default;

  // Throws ContractViolation for an index the family does not admit.
  static constexpr ChainState make(StateKind kind, std::uint32_t k = 0) {
    if (is_indexed(kind)) {
      if (k < min_index(kind)) throw ContractViolation("state index below family minimum");
    } else if (k != 0) {
      throw ContractViolation("index given for a non-indexed state");
    }
    return ChainState(kind, k);
  }

  static constexpr ChainState start() noexcept { return {}; }
  static constexpr ChainState s() noexcept { return {}; }
  static constexpr ChainState a0() noexcept { return {StateKind::A0, 0}; }
  static constexpr ChainState a1() noexcept { return {StateKind::A1, 0}; }
  static constexpr ChainState a2() noexcept { return {StateKind::A2, 0}; }
  static constexpr ChainState h0() noexcept { return {StateKind::H0, 0}; }
  static constexpr ChainState h1() noexcept { return {StateKind::H1, 0}; }
  static constexpr ChainState honest_win() noexcept { return {StateKind::HonestWin, 0}; }
  static constexpr ChainState h10() noexcept { return {StateKind::H10, 0}; }
  static constexpr ChainState a20() noexcept { return {StateKind::A20, 0}; }
  static constexpr ChainState h0k(std::uint32_t k) { return make(StateKind::H0k, k); }
  static constexpr ChainState h1k(std::uint32_t k) { return make(StateKind::H1k, k); }
  static constexpr ChainState a0k(std::uint32_t k) { return make(StateKind::A0k, k); }
  static constexpr ChainState a1k(std::uint32_t k) { return make(StateKind::A1k, k); }
  static constexpr ChainState a2k(std::uint32_t k) { return make(StateKind::A2k, k); }

  constexpr StateKind kind() const noexcept { return kind_; }
  // Honest lead index; 0 for non-indexed states.
  constexpr std::uint32_t index() const noexcept { return k_; }

  constexpr auto operator<=>(const ChainState&) const = default;

 private:
  constexpr ChainState(StateKind kind, std::uint32_t k) noexcept : kind_(kind), k_(k) {}

  StateKind kind_ = StateKind::S;
  std::uint32_t k_ = 0;
};

inline std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::S: return "S";
    case StateKind::A0: return "A0";
    case StateKind::A1: return "A1";
    case StateKind::A2: return "A2";
    case StateKind::H0: return "H0";
    case StateKind::H1: return "H1";
    case StateKind::HonestWin: return "HonestWin";
    case StateKind::H0k: return "H0k";
    case StateKind::H10: return "H10";
    case StateKind::H1k: return "H1k";
    case StateKind::A0k: return "A0k";
    case StateKind::A1k: return "A1k";
    case StateKind::A20: return "A20";
    case StateKind::A2k: return "A2k";
  }
  return "?";
}

inline std::string to_string(const ChainState& state) {
  auto name = to_string(state.kind());
  if (is_indexed(state.kind())) name += "(" + std::to_string(state.index()) + ")";
  return name;
}

constexpr std::optional<Outcome> is_terminal(const ChainState& state) noexcept {
  switch (state.kind()) {
    case StateKind::H1: return Outcome::GreedyWin;
    case StateKind::HonestWin: return Outcome::HonestWin;
    default: return std::nullopt;
  }
}

// States where an honest finder chooses which tied branch to extend.
constexpr bool is_tie_state(const ChainState& state) noexcept {
  const auto kind = state.kind();
  return kind == StateKind::H10 || kind == StateKind::A2 || kind == StateKind::A20;
}

constexpr bool needs_tie_choice(const ChainState& state, Finder finder) noexcept {
  return finder == Finder::Honest && is_tie_state(state);
}

/// Successor of a non-terminal state after one Key-Block is found.
///
/// `tie` must be supplied exactly when the honest pool finds the block in a
/// tie state (H10, A2, A20); any other combination, or a terminal input,
/// throws ContractViolation.
constexpr ChainState transition(const ChainState& state, Finder finder,
                                std::optional<TieChoice> tie = std::nullopt) {
  if (is_terminal(state)) throw ContractViolation("transition from terminal state " + to_string(state));
  if (needs_tie_choice(state, finder) != tie.has_value()) {
    throw ContractViolation(tie ? "tie choice supplied outside a tie" : "tie choice required in " + to_string(state));
  }
  const bool greedy = finder == Finder::Greedy;
  const std::uint32_t k = state.index();
  const bool to_greedy_branch = tie == TieChoice::ExtendGreedy;

  switch (state.kind()) {
    case StateKind::S:
      return greedy ? ChainState::h0() : ChainState::a0();
    case StateKind::H0:
      return greedy ? ChainState::h1() : ChainState::h0k(0);
    case StateKind::H0k:
      if (greedy) return k == 0 ? ChainState::h10() : ChainState::h1k(k);
      return ChainState::h0k(k + 1);
    case StateKind::H10:
      if (greedy || to_greedy_branch) return ChainState::h1();
      return ChainState::h1k(1);
    case StateKind::H1k:
      if (greedy) return k == 1 ? ChainState::h10() : ChainState::h1k(k - 1);
      return ChainState::h1k(k + 1);
    case StateKind::A0:
      return greedy ? ChainState::h0() : ChainState::a1();
    case StateKind::A1:
      return greedy ? ChainState::a2() : ChainState::a0k(0);
    case StateKind::A2:
      if (greedy) return ChainState::h1();
      return to_greedy_branch ? ChainState::h0k(0) : ChainState::a1k(0);
    case StateKind::A0k:
      return greedy ? ChainState::a1k(k) : ChainState::a0k(k + 1);
    case StateKind::A1k:
      if (greedy) return k == 0 ? ChainState::a20() : ChainState::a2k(k);
      return ChainState::a1k(k + 1);
    case StateKind::A20:
      if (greedy || to_greedy_branch) return ChainState::h1();
      return ChainState::a2k(1);
    case StateKind::A2k:
      if (greedy) return k == 1 ? ChainState::a20() : ChainState::a2k(k - 1);
      return ChainState::a2k(k + 1);
    case StateKind::H1:
    case StateKind::HonestWin:
      break;
  }
  throw ContractViolation("unreachable state kind");
}

struct Edge {
  ChainState to;
  double probability;

  bool operator==(const Edge&) const = default;
};

/// One-step distribution of a non-terminal state with finder and tie choice
/// marginalized out. Duplicate successors are merged and zero-probability
/// edges dropped; the greedy-found successor comes first.
inline std::vector<Edge> transition_distribution(const ChainState& state, const StrategyParams& params) {
  if (is_terminal(state)) throw ContractViolation("no successors for terminal state " + to_string(state));
  const double alpha = params.alpha();
  const double gamma = params.gamma();

  std::vector<Edge> edges;
  edges.reserve(3);
  const auto add = [&edges](ChainState to, double p) {
    if (p <= 0.0) return;
    for (auto& e : edges) {
      if (e.to == to) {
        e.probability += p;
        return;
      }
    }
    edges.push_back({to, p});
  };

  add(transition(state, Finder::Greedy), alpha);
  if (is_tie_state(state)) {
    add(transition(state, Finder::Honest, TieChoice::ExtendGreedy), gamma * (1.0 - alpha));
    add(transition(state, Finder::Honest, TieChoice::ExtendHonest), (1.0 - gamma) * (1.0 - alpha));
  } else {
    add(transition(state, Finder::Honest), 1.0 - alpha);
  }
  return edges;
}

}  // namespace greedymine

template <>
struct std::hash<greedymine::ChainState> {
  std::size_t operator()(const greedymine::ChainState& s) const noexcept {
    return (static_cast<std::size_t>(s.index()) << 8) ^ static_cast<std::size_t>(s.kind());
  }
};
