#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "greedymine/analytics.hpp"
#include "greedymine/errors.hpp"
#include "greedymine/monte_carlo.hpp"
#include "greedymine/oracle.hpp"
#include "greedymine/params.hpp"

// Parameter sweeps over the closed forms, the chain oracle and the simulator,
// plus reproduction of the reference RER table.
namespace greedymine {

struct SweepRecord {
  double alpha = 0.0;
  double gamma = 0.0;
  double revenue_honest = 0.0;
  double revenue_greedy_closed = 0.0;
  std::optional<double> revenue_greedy_oracle_lower;
  std::optional<double> revenue_greedy_oracle_upper;
  std::optional<double> revenue_greedy_mc;
  std::optional<double> rer_closed;  // undefined at alpha = 0
  std::optional<double> mc_ci;

  bool operator==(const SweepRecord&) const = default;
};

struct ThresholdRecord {
  double gamma = 0.0;
  double alpha_star = 0.0;
  double tol = 0.0;

  bool operator==(const ThresholdRecord&) const = default;
};

enum class SweepMode : std::uint8_t { Closed, Oracle, MonteCarlo, All };

struct SweepOptions {
  std::uint32_t depth = kDefaultDepth;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  std::uint32_t giveup_depth = kDefaultGiveupDepth;
  unsigned threads = 0;
};

// Default revenue-curve grid: alpha = 0.01, 0.02, ..., 0.50.
inline std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 50; ++i) grid.push_back(i / 100.0);
  return grid;
}

inline std::vector<double> default_gamma_list() { return {0.0, 0.25, 0.5, 1.0}; }

namespace detail {

inline void require_grid(const std::vector<double>& grid, const char* field) {
  if (grid.empty()) throw InvalidArgument(field, "grid must not be empty");
  for (double v : grid) require_probability(v, field);
}

// Seed of the Monte Carlo run for sweep cell `cell`.
inline std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t cell) {
  SplitMix64 stream(seed ^ 0xC2B2AE3D27D4EB4FULL);
  stream.discard(cell);
  return stream();
}

}  // namespace detail

inline SweepRecord closed_form_record(double alpha, double gamma) {
  const auto report = analyze(StrategyParams(alpha, gamma));
  SweepRecord r;
  r.alpha = alpha;
  r.gamma = gamma;
  r.revenue_honest = report.revenue_honest;
  r.revenue_greedy_closed = report.revenue_greedy;
  r.rer_closed = report.rer;
  return r;
}

/// One record per (alpha, gamma) pair, ordered by gamma then alpha. Closed
/// forms are always filled; oracle bounds and simulation estimates follow
/// `mode`. Simulated cells use seeds derived from options.seed and the cell's
/// position in the sorted output.
inline std::vector<SweepRecord> sweep_revenue(const std::vector<double>& alpha_grid,
                                              const std::vector<double>& gamma_list, SweepMode mode,
                                              const SweepOptions& options = {}) {
  detail::require_grid(alpha_grid, "alphas");
  detail::require_grid(gamma_list, "gammas");
  auto alphas = alpha_grid;
  auto gammas = gamma_list;
  std::stable_sort(alphas.begin(), alphas.end());
  std::stable_sort(gammas.begin(), gammas.end());

  const bool with_oracle = mode == SweepMode::Oracle || mode == SweepMode::All;
  const bool with_mc = mode == SweepMode::MonteCarlo || mode == SweepMode::All;

  std::vector<SweepRecord> records;
  records.reserve(alphas.size() * gammas.size());
  for (double gamma : gammas) {
    for (double alpha : alphas) {
      auto r = closed_form_record(alpha, gamma);
      const StrategyParams params(alpha, gamma);
      if (with_oracle) {
        const auto bounds = absorption_bounds(params, options.depth);
        r.revenue_greedy_oracle_lower = bounds.lower;
        r.revenue_greedy_oracle_upper = bounds.upper;
      }
      if (with_mc) {
        SimConfig config{params};
        config.trials = options.trials;
        config.master_seed = detail::cell_seed(options.seed, records.size());
        config.giveup_depth = options.giveup_depth;
        const auto stats = estimate(config, options.threads);
        r.revenue_greedy_mc = stats.p_hat;
        r.mc_ci = stats.ci95_half_width;
      }
      records.push_back(r);
    }
  }
  return records;
}

inline std::vector<ThresholdRecord> threshold_curve(const std::vector<double>& gamma_grid,
                                                    double tol = kDefaultTolerance) {
  detail::require_grid(gamma_grid, "gammas");
  std::vector<ThresholdRecord> curve;
  curve.reserve(gamma_grid.size());
  for (double gamma : gamma_grid) curve.push_back({gamma, threshold_alpha(gamma, tol), tol});
  return curve;
}

// Closed-form RER over alpha rows and gamma columns; alpha = 0 cells are
// undefined.
struct RerHeatmap {
  std::vector<double> alphas;
  std::vector<double> gammas;
  std::vector<std::optional<double>> cells;  // row-major, cells[i * gammas.size() + j]

  const std::optional<double>& at(std::size_t alpha_index, std::size_t gamma_index) const {
    return cells.at(alpha_index * gammas.size() + gamma_index);
  }
};

inline RerHeatmap rer_heatmap(const std::vector<double>& alpha_grid, const std::vector<double>& gamma_grid) {
  detail::require_grid(alpha_grid, "alphas");
  detail::require_grid(gamma_grid, "gammas");
  RerHeatmap map{alpha_grid, gamma_grid, {}};
  map.cells.reserve(alpha_grid.size() * gamma_grid.size());
  for (double alpha : alpha_grid) {
    for (double gamma : gamma_grid) map.cells.push_back(analyze(StrategyParams(alpha, gamma)).rer);
  }
  return map;
}

// Reference RER table, in percent: rows gamma = 0, 0.2, ..., 1; columns
// alpha = 0.1, ..., 0.5.
inline constexpr std::array<double, 6> kTable1Gammas{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
inline constexpr std::array<double, 5> kTable1Alphas{0.1, 0.2, 0.3, 0.4, 0.5};
inline constexpr std::array<std::array<double, 5>, 6> kTable1Percent{{
    {-69.4187, -39.4667, -12.9279, 7.7053, 20.8333},
    {-63.1523, -30.0900, -2.9542, 16.4968, 27.5000},
    {-56.8859, -20.6933, 7.0195, 25.2884, 34.1667},
    {-50.6196, -11.3067, 16.9932, 34.0800, 40.8333},
    {-44.3532, -1.9200, 26.9668, 42.8716, 47.5000},
    {-38.0868, 7.4667, 36.9405, 51.6632, 54.1667},
}};
// Absolute tolerance on percentage values printed to four decimals.
inline constexpr double kTable1Tolerance = 5e-5;

struct Table1Cell {
  SweepRecord record;
  double reference_percent;
  double computed_percent;
  double deviation;  // |computed - reference|
  bool pass;
};

struct Table1Report {
  std::vector<Table1Cell> cells;  // gamma-major, 6 x 5

  bool all_pass() const {
    return std::all_of(cells.begin(), cells.end(), [](const Table1Cell& c) { return c.pass; });
  }

  std::vector<Table1Cell> failures() const {
    std::vector<Table1Cell> out;
    std::copy_if(cells.begin(), cells.end(), std::back_inserter(out), [](const Table1Cell& c) { return !c.pass; });
    return out;
  }
};

inline std::string cell_name(const Table1Cell& cell) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(gamma=%.1f, alpha=%.1f)", cell.record.gamma, cell.record.alpha);
  return buf;
}

inline Table1Report reproduce_table1() {
  Table1Report report;
  report.cells.reserve(30);
  for (std::size_t g = 0; g < kTable1Gammas.size(); ++g) {
    for (std::size_t a = 0; a < kTable1Alphas.size(); ++a) {
      Table1Cell cell{closed_form_record(kTable1Alphas[a], kTable1Gammas[g]), kTable1Percent[g][a], 0.0, 0.0, false};
      cell.computed_percent = *cell.record.rer_closed * 100.0;
      cell.deviation = std::abs(cell.computed_percent - cell.reference_percent);
      cell.pass = cell.deviation <= kTable1Tolerance;
      report.cells.push_back(cell);
    }
  }
  return report;
}

}  // namespace greedymine
