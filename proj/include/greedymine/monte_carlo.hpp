#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "greedymine/core_model.hpp"
#include "greedymine/errors.hpp"
#include "greedymine/params.hpp"

// Seeded simulation of whale-transaction episodes.
//
// Reproducibility contract: trial i of a run with master seed m draws from a
// SplitMix64 stream whose initial state is the i-th output (counting from 0)
// of a SplitMix64 stream seeded with m. Each Key-Block consumes one 64-bit
// draw x for the finder (greedy iff (x >> 11) * 2^-53 < alpha), and a block
// found by the honest pool in a tie state consumes one more draw for the
// branch choice (extend greedy iff the uniform is < gamma). Results therefore
// depend only on (params, trials, master seed, giveup depth), never on thread
// count or scheduling.
namespace greedymine {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

  constexpr explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    std::uint64_t z = (state_ += kGoldenGamma);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Jump ahead by n outputs.
  constexpr void discard(std::uint64_t n) noexcept { state_ += n * kGoldenGamma; }

 private:
  std::uint64_t state_;
};

inline constexpr SplitMix64 trial_stream(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
  SplitMix64 master(master_seed);
  master.discard(trial_index);
  return SplitMix64(master());
}

// Uniform in [0, 1) on the 2^-53 lattice.
constexpr double to_unit(std::uint64_t bits) noexcept { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

template <typename Urbg>
bool bernoulli(Urbg& stream, double p) {
  return to_unit(stream()) < p;
}

enum class TrialOutcome : std::uint8_t { GreedyWin, HonestWin, Truncated };

// How an episode that would step past the give-up depth is recorded.
enum class BoundaryScoring : std::uint8_t { Truncated, HonestWin };

struct TrialResult {
  TrialOutcome outcome;
  std::uint64_t steps;  // Key-Blocks found during the episode

  bool operator==(const TrialResult&) const = default;
};

inline constexpr std::uint32_t kDefaultGiveupDepth = 64;

struct NoObserver {
  void operator()(const ChainState&, const ChainState&) const noexcept {}
};

/// Plays one episode from S. The greedy pool never yields on its own; once a
/// transition would enter a state whose honest lead exceeds `giveup_depth`
/// the episode stops and is scored per `scoring`. `on_step(from, to)` sees
/// every applied transition, including the one into the boundary.
template <typename Urbg, typename Observer = NoObserver>
TrialResult run_trial(const StrategyParams& params, Urbg& stream, std::uint32_t giveup_depth = kDefaultGiveupDepth,
                      BoundaryScoring scoring = BoundaryScoring::Truncated, Observer&& on_step = {}) {
  ChainState state = ChainState::start();
  std::uint64_t steps = 0;
  for (;;) {
    const Finder finder = bernoulli(stream, params.alpha()) ? Finder::Greedy : Finder::Honest;
    std::optional<TieChoice> tie;
    if (needs_tie_choice(state, finder)) {
      tie = bernoulli(stream, params.gamma()) ? TieChoice::ExtendGreedy : TieChoice::ExtendHonest;
    }
    const ChainState next = transition(state, finder, tie);
    ++steps;
    if (next.index() > giveup_depth) {
      if (scoring == BoundaryScoring::HonestWin) {
        on_step(state, ChainState::honest_win());
        return {TrialOutcome::HonestWin, steps};
      }
      on_step(state, next);
      return {TrialOutcome::Truncated, steps};
    }
    on_step(state, next);
    if (next.kind() == StateKind::H1) return {TrialOutcome::GreedyWin, steps};
    if (next.kind() == StateKind::HonestWin) return {TrialOutcome::HonestWin, steps};
    state = next;
  }
}

struct SimConfig {
  StrategyParams params;
  std::uint64_t trials = 1'000'000;
  std::uint64_t master_seed = 0;
  std::uint32_t giveup_depth = kDefaultGiveupDepth;
  BoundaryScoring scoring = BoundaryScoring::Truncated;
  // Debug switch: keep every episode's state path (memory grows with trials).
  bool record_paths = false;

  void validate() const {
    if (trials < 1) throw InvalidArgument("trials", "at least one trial is required");
    if (giveup_depth < 2) throw InvalidArgument("giveup-depth", "give-up depth must be at least 2");
  }
};

struct SimStats {
  std::uint64_t trials = 0;
  std::uint64_t greedy_wins = 0;
  std::uint64_t honest_wins = 0;
  std::uint64_t truncated = 0;
  double p_hat = 0.0;
  double ci95_half_width = 0.0;
  double mean_steps = 0.0;
  std::uint64_t seed_echo = 0;
  // Filled only when SimConfig::record_paths is set; paths[i] starts at S.
  std::vector<std::vector<ChainState>> paths;

  bool operator==(const SimStats&) const = default;
};

// Worker count: `requested` if non-zero, else the hardware concurrency.
inline unsigned resolve_threads(unsigned requested, std::uint64_t trials) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(n, trials));
}

/// Runs config.trials independent episodes and aggregates them. Trials are
/// split into contiguous blocks across `threads` workers (0 = hardware
/// concurrency); each trial uses its own derived stream, so the result is
/// bit-identical for any worker count.
inline SimStats estimate(const SimConfig& config, unsigned threads = 0) {
  config.validate();
  const std::uint64_t trials = config.trials;
  const unsigned workers = resolve_threads(threads, trials);

  struct Tally {
    std::uint64_t greedy = 0;
    std::uint64_t honest = 0;
    std::uint64_t truncated = 0;
    std::uint64_t steps = 0;
  };
  std::vector<Tally> tallies(workers);
  std::vector<std::vector<ChainState>> paths(config.record_paths ? trials : 0);

  const auto work = [&](unsigned w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    Tally& tally = tallies[w];
    for (std::uint64_t i = begin; i < end; ++i) {
      auto stream = trial_stream(config.master_seed, i);
      TrialResult result{};
      if (config.record_paths) {
        auto& path = paths[i];
        path.push_back(ChainState::start());
        result = run_trial(config.params, stream, config.giveup_depth, config.scoring,
                           [&path](const ChainState&, const ChainState& to) { path.push_back(to); });
      } else {
        result = run_trial(config.params, stream, config.giveup_depth, config.scoring);
      }
      tally.steps += result.steps;
      switch (result.outcome) {
        case TrialOutcome::GreedyWin: ++tally.greedy; break;
        case TrialOutcome::HonestWin: ++tally.honest; break;
        case TrialOutcome::Truncated: ++tally.truncated; break;
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  SimStats stats;
  stats.trials = trials;
  stats.seed_echo = config.master_seed;
  std::uint64_t steps = 0;
  for (const auto& t : tallies) {
    stats.greedy_wins += t.greedy;
    stats.honest_wins += t.honest;
    stats.truncated += t.truncated;
    steps += t.steps;
  }
  const auto n = static_cast<double>(trials);
  stats.p_hat = static_cast<double>(stats.greedy_wins) / n;
  stats.ci95_half_width = 1.96 * std::sqrt(stats.p_hat * (1.0 - stats.p_hat) / n);
  stats.mean_steps = static_cast<double>(steps) / n;
  stats.paths = std::move(paths);
  return stats;
}

}  // namespace greedymine
