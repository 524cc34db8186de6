#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "greedymine/analytics.hpp"
#include "greedymine/errors.hpp"
#include "greedymine/experiments.hpp"
#include "greedymine/monte_carlo.hpp"
#include "greedymine/oracle.hpp"
#include "greedymine/serialization.hpp"

// Command-line front end. Exit codes: 0 success, 1 numerical or I/O failure
// (and a table1 run with failing cells), 2 invalid usage or parameter values.
namespace greedymine::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kThreadsEnv = "NG_GREEDY_THREADS";

enum class Format { Human, Json, Csv };

// What a subcommand produced, in every output format.
struct Output {
  nlohmann::ordered_json document;
  std::string csv;
  std::string human;
  // Record payload for --out files (CSV rows or a JSON array); empty when the
  // subcommand has no record form and the document is written instead.
  std::optional<nlohmann::ordered_json> records_json;
  int status = kExitOk;
};

namespace detail {

inline std::string num(double v) { return format_number(v); }

inline nlohmann::ordered_json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

inline std::string opt_text(const std::optional<double>& v, const char* absent = "undefined") {
  return v ? num(*v) : std::string(absent);
}

// Worker cap from NG_GREEDY_THREADS; 0 means hardware concurrency.
inline unsigned threads_from_env() {
  const char* raw = std::getenv(kThreadsEnv);
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 1) throw InvalidArgument(kThreadsEnv, "must be a positive integer");
  return static_cast<unsigned>(value);
}

inline std::uint64_t entropy_seed() {
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

}  // namespace detail

inline Output run_bounds(double alpha) {
  const auto b = incentive_bounds(alpha);
  Output out;
  out.document = {{"command", "bounds"},
                  {"alpha", b.alpha},
                  {"r_min_inclusion", b.r_min_inclusion},
                  {"r_min_modified", b.r_min_modified},
                  {"r_max_extension", b.r_max_extension},
                  {"window", b.window ? nlohmann::ordered_json{{"lower", b.window->lower}, {"upper", b.window->upper}}
                                      : nlohmann::ordered_json(nullptr)}};
  out.csv = "alpha,r_min_inclusion,r_min_modified,r_max_extension,window_lower,window_upper\n" +
            fmt::format("{},{},{},{},{},{}\n", detail::num(alpha), detail::num(b.r_min_inclusion),
                        detail::num(b.r_min_modified), detail::num(b.r_max_extension),
                        b.window ? detail::num(b.window->lower) : "", b.window ? detail::num(b.window->upper) : "");
  out.human = fmt::format(
      "alpha                 {}\n"
      "r_leader >            {}  (transaction inclusion)\n"
      "r_leader >            {}  (modified transaction inclusion)\n"
      "r_leader <            {}  (longest chain extension)\n"
      "admissible window     {}\n",
      detail::num(alpha), detail::num(b.r_min_inclusion), detail::num(b.r_min_modified),
      detail::num(b.r_max_extension),
      b.window ? fmt::format("({}, {})", detail::num(b.window->lower), detail::num(b.window->upper)) : "empty");
  return out;
}

inline Output run_analytic(const StrategyParams& params) {
  const auto r = analyze(params);
  const auto& p = r.probs;
  Output out;
  out.document = {
      {"command", "analytic"},
      {"parameters", {{"alpha", params.alpha()}, {"gamma", params.gamma()}, {"r_leader", params.r_leader()}}},
      {"state_probabilities",
       {{"p_s", p.p_s},
        {"p_a0", p.p_a0},
        {"p_h0", p.p_h0},
        {"p_h00", p.p_h00},
        {"p_h10", p.p_h10},
        {"p_a1", p.p_a1},
        {"p_a2", p.p_a2},
        {"p_a00", p.p_a00},
        {"p_a10", p.p_a10},
        {"p_a20", p.p_a20}}},
      {"revenue_honest", r.revenue_honest},
      {"revenue_greedy", r.revenue_greedy},
      {"rer", detail::opt_json(r.rer)},
      {"rer_status", r.rer ? "defined" : "undefined"}};
  out.csv = "alpha,gamma,r_leader,p_h0,p_h10,p_a2,p_a20,revenue_honest,revenue_greedy,rer\n" +
            fmt::format("{},{},{},{},{},{},{},{},{},{}\n", detail::num(params.alpha()), detail::num(params.gamma()),
                        detail::num(params.r_leader()), detail::num(p.p_h0), detail::num(p.p_h10),
                        detail::num(p.p_a2), detail::num(p.p_a20), detail::num(r.revenue_honest),
                        detail::num(r.revenue_greedy), detail::opt_text(r.rer));
  out.human = fmt::format(
      "alpha {}  gamma {}  r_leader {}\n"
      "p_s {}  p_a0 {}  p_h0 {}  p_h00 {}  p_h10 {}\n"
      "p_a1 {}  p_a2 {}  p_a00 {}  p_a10 {}  p_a20 {}\n"
      "honest revenue   {}\n"
      "greedy revenue   {}\n"
      "rer              {}\n",
      detail::num(params.alpha()), detail::num(params.gamma()), detail::num(params.r_leader()), detail::num(p.p_s),
      detail::num(p.p_a0), detail::num(p.p_h0), detail::num(p.p_h00), detail::num(p.p_h10), detail::num(p.p_a1),
      detail::num(p.p_a2), detail::num(p.p_a00), detail::num(p.p_a10), detail::num(p.p_a20),
      detail::num(r.revenue_honest), detail::num(r.revenue_greedy),
      r.rer ? fmt::format("{} ({}%)", detail::num(*r.rer), detail::num(*r.rer * 100.0)) : "undefined");
  return out;
}

inline Output run_oracle(const StrategyParams& params, std::uint32_t depth) {
  const auto bounds = absorption_bounds(params, depth);
  const double closed = greedy_revenue(params);
  const double escape = boundary_mass(params, depth);
  const double steps = expected_steps(params, depth);
  std::optional<double> descent;
  if (params.alpha() > 0.0 && params.alpha() < 0.5 && depth >= 8) descent = descent_probability(params, depth);

  Output out;
  out.document = {{"command", "oracle"},
                  {"parameters", {{"alpha", params.alpha()}, {"gamma", params.gamma()}, {"depth", depth}}},
                  {"lower", bounds.lower},
                  {"upper", bounds.upper},
                  {"residual", bounds.residual},
                  {"closed_form", closed},
                  {"gap_lower_minus_closed", bounds.lower - closed},
                  {"boundary_mass", escape},
                  {"expected_steps", steps},
                  {"descent_probability", detail::opt_json(descent)}};
  out.csv = "alpha,gamma,depth,lower,upper,residual,closed_form,gap,boundary_mass,expected_steps,descent\n" +
            fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", detail::num(params.alpha()),
                        detail::num(params.gamma()), depth, detail::num(bounds.lower), detail::num(bounds.upper),
                        detail::num(bounds.residual), detail::num(closed), detail::num(bounds.lower - closed),
                        detail::num(escape), detail::num(steps), detail::opt_text(descent, ""));
  out.human = fmt::format(
      "alpha {}  gamma {}  depth {}\n"
      "P(greedy wins) in [{}, {}]  residual {}\n"
      "closed form      {}  (lower - closed = {})\n"
      "boundary mass    {}\n"
      "expected steps   {}\n"
      "descent H1k(1)   {}\n",
      detail::num(params.alpha()), detail::num(params.gamma()), depth, detail::num(bounds.lower),
      detail::num(bounds.upper), detail::num(bounds.residual), detail::num(closed),
      detail::num(bounds.lower - closed), detail::num(escape), detail::num(steps),
      detail::opt_text(descent, "n/a (needs 0 < alpha < 0.5)"));
  return out;
}

inline Output run_simulate(const SimConfig& config, unsigned threads) {
  const auto stats = estimate(config, threads);
  const double alpha = config.params.alpha();
  std::optional<double> rer_estimate;
  if (alpha > 0.0) rer_estimate = rer(stats.p_hat, honest_revenue(config.params));

  Output out;
  out.document = {{"command", "simulate"},
                  {"parameters",
                   {{"alpha", alpha},
                    {"gamma", config.params.gamma()},
                    {"r_leader", config.params.r_leader()},
                    {"trials", config.trials},
                    {"seed", config.master_seed},
                    {"giveup_depth", config.giveup_depth}}},
                  {"greedy_wins", stats.greedy_wins},
                  {"honest_wins", stats.honest_wins},
                  {"truncated", stats.truncated},
                  {"p_hat", stats.p_hat},
                  {"ci95_half_width", stats.ci95_half_width},
                  {"mean_steps", stats.mean_steps},
                  {"seed_echo", stats.seed_echo},
                  {"rer_estimate", detail::opt_json(rer_estimate)}};
  out.csv =
      "alpha,gamma,r_leader,trials,seed,giveup_depth,greedy_wins,honest_wins,truncated,p_hat,ci95_half_width,"
      "mean_steps,rer_estimate\n" +
      fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", detail::num(alpha), detail::num(config.params.gamma()),
                  detail::num(config.params.r_leader()), config.trials, config.master_seed, config.giveup_depth,
                  stats.greedy_wins, stats.honest_wins, stats.truncated, detail::num(stats.p_hat),
                  detail::num(stats.ci95_half_width), detail::num(stats.mean_steps), detail::opt_text(rer_estimate));
  out.human = fmt::format(
      "alpha {}  gamma {}  r_leader {}\n"
      "trials {}  seed {}  giveup depth {}\n"
      "greedy wins {}  honest wins {}  truncated {}\n"
      "p_hat {} +/- {} (95%)\n"
      "mean steps {}\n"
      "rer estimate {}\n",
      detail::num(alpha), detail::num(config.params.gamma()), detail::num(config.params.r_leader()), config.trials,
      config.master_seed, config.giveup_depth, stats.greedy_wins, stats.honest_wins, stats.truncated,
      detail::num(stats.p_hat), detail::num(stats.ci95_half_width), detail::num(stats.mean_steps),
      detail::opt_text(rer_estimate));
  return out;
}

inline std::string sweep_mode_name(SweepMode mode) {
  switch (mode) {
    case SweepMode::Closed: return "closed";
    case SweepMode::Oracle: return "oracle";
    case SweepMode::MonteCarlo: return "mc";
    case SweepMode::All: return "all";
  }
  return "?";
}

inline Output run_sweep(const std::vector<double>& alphas, const std::vector<double>& gammas, SweepMode mode,
                        const SweepOptions& options) {
  const auto records = sweep_revenue(alphas, gammas, mode, options);
  const std::span<const SweepRecord> view(records);
  Output out;
  out.records_json = to_json(view);
  out.document = {{"command", "sweep"},
                  {"parameters",
                   {{"mode", sweep_mode_name(mode)},
                    {"depth", options.depth},
                    {"trials", options.trials},
                    {"seed", options.seed},
                    {"giveup_depth", options.giveup_depth},
                    {"r_leader", kDefaultLeaderShare}}},
                  {"records", *out.records_json}};
  out.csv = to_csv(view);
  out.human = fmt::format("mode {}  depth {}  trials {}  seed {}  giveup depth {}\n", sweep_mode_name(mode),
                          options.depth, options.trials, options.seed, options.giveup_depth);
  out.human += fmt::format("{:>6} {:>6} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}\n", "gamma", "alpha", "honest",
                           "closed", "oracle_lo", "oracle_hi", "mc", "rer_closed");
  for (const auto& r : records) {
    out.human += fmt::format("{:>6} {:>6} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}\n", detail::num(r.gamma),
                             detail::num(r.alpha), fmt::format("{:.6f}", r.revenue_honest),
                             fmt::format("{:.6f}", r.revenue_greedy_closed),
                             r.revenue_greedy_oracle_lower ? fmt::format("{:.6f}", *r.revenue_greedy_oracle_lower) : "-",
                             r.revenue_greedy_oracle_upper ? fmt::format("{:.6f}", *r.revenue_greedy_oracle_upper) : "-",
                             r.revenue_greedy_mc ? fmt::format("{:.6f}", *r.revenue_greedy_mc) : "-",
                             r.rer_closed ? fmt::format("{:.6f}", *r.rer_closed) : "undefined");
  }
  return out;
}

inline Output run_heatmap(const std::vector<double>& alphas, const std::vector<double>& gammas) {
  const auto cells = heatmap_cells(rer_heatmap(alphas, gammas));
  const std::span<const HeatmapCell> view(cells);
  Output out;
  out.records_json = to_json(view);
  out.document = {{"command", "sweep"}, {"parameters", {{"mode", "heatmap"}}}, {"records", *out.records_json}};
  out.csv = to_csv(view);
  out.human = fmt::format("{:>6} {:>6} {:>12}\n", "alpha", "gamma", "rer_closed");
  for (const auto& c : cells) {
    out.human += fmt::format("{:>6} {:>6} {:>12}\n", detail::num(c.alpha), detail::num(c.gamma),
                             c.rer_closed ? fmt::format("{:.6f}", *c.rer_closed) : "undefined");
  }
  return out;
}

inline Output run_threshold(const std::vector<double>& gammas, double tol) {
  const auto curve = threshold_curve(gammas, tol);
  const std::span<const ThresholdRecord> view(curve);
  Output out;
  out.records_json = to_json(view);
  out.document = {{"command", "threshold"}, {"parameters", {{"tol", tol}}}, {"records", *out.records_json}};
  out.csv = to_csv(view);
  out.human = fmt::format("tol {}\n", detail::num(tol));
  for (const auto& r : curve) {
    out.human += fmt::format("gamma {:<6} alpha* {:.6f}\n", detail::num(r.gamma), r.alpha_star);
  }
  return out;
}

inline Output run_table1() {
  const auto report = reproduce_table1();
  std::vector<SweepRecord> records;
  for (const auto& c : report.cells) records.push_back(c.record);

  Output out;
  auto cells = nlohmann::ordered_json::array();
  out.csv = "gamma,alpha,reference_percent,computed_percent,deviation,pass\n";
  out.human = fmt::format("{:>6} {:>6} {:>12} {:>14} {:>12}  {}\n", "gamma", "alpha", "reference", "computed",
                          "deviation", "status");
  for (const auto& c : report.cells) {
    cells.push_back({{"gamma", c.record.gamma},
                     {"alpha", c.record.alpha},
                     {"reference_percent", c.reference_percent},
                     {"computed_percent", c.computed_percent},
                     {"deviation", c.deviation},
                     {"pass", c.pass}});
    out.csv += fmt::format("{},{},{},{},{},{}\n", detail::num(c.record.gamma), detail::num(c.record.alpha),
                           detail::num(c.reference_percent), detail::num(c.computed_percent),
                           detail::num(c.deviation), c.pass ? "true" : "false");
    out.human += fmt::format("{:>6} {:>6} {:>12.4f} {:>14.6f} {:>12.2e}  {}\n", detail::num(c.record.gamma),
                             detail::num(c.record.alpha), c.reference_percent, c.computed_percent, c.deviation,
                             c.pass ? "ok" : "MISMATCH");
  }
  const auto failures = report.failures();
  auto failing = nlohmann::ordered_json::array();
  for (const auto& c : failures) failing.push_back(cell_name(c));
  out.document = {{"command", "table1"},
                  {"tolerance", kTable1Tolerance},
                  {"all_pass", report.all_pass()},
                  {"failing_cells", failing},
                  {"cells", cells}};
  out.records_json = out.document;
  out.human += fmt::format("{} of {} cells within {} (percentage points)\n", report.cells.size() - failures.size(),
                           report.cells.size(), detail::num(kTable1Tolerance));
  for (const auto& c : failures) out.human += "mismatch " + cell_name(c) + "\n";
  out.status = report.all_pass() ? kExitOk : kExitFailure;
  return out;
}

namespace detail {

inline void emit(const Output& output, Format format, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  std::string text;
  switch (format) {
    case Format::Human: text = output.human; break;
    case Format::Csv: text = output.csv; break;
    case Format::Json: text = output.document.dump(2) + "\n"; break;
  }
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::string file_text = text;
  if (format == Format::Json && output.records_json) file_text = output.records_json->dump(2) + "\n";
  if (format == Format::Human) file_text = output.csv;
  const auto bytes = greedymine::detail::write_file(std::filesystem::path(out_path), [&](std::ostream& file) {
    file << file_text;
    return file_text.size();
  });
  err << fmt::format("wrote {} bytes to {}\n", bytes, out_path);
}

}  // namespace detail

/// Parses `args` (without the program name), runs one subcommand and writes
/// its output. Returns the process exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Greedy-Mine attack laboratory for Bitcoin-NG", "greedymine"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "human";
  std::string out_path;
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Write output to PATH instead of standard output");

  double alpha = 0.0;
  double gamma = 0.0;
  double r_leader = kDefaultLeaderShare;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  std::uint32_t depth = kDefaultDepth;
  std::uint32_t giveup_depth = kDefaultGiveupDepth;
  double tol = kDefaultTolerance;
  bool nondeterministic = false;
  bool heatmap = false;
  std::vector<double> alphas;
  std::vector<double> gammas;
  std::string mode_name = "closed";

  const auto probability = CLI::Range(0.0, 1.0);
  const auto add_alpha = [&](CLI::App* sub) {
    return sub->add_option("--alpha", alpha, "Greedy pool mining power share")->check(probability);
  };
  const auto add_gamma = [&](CLI::App* sub) {
    return sub->add_option("--gamma", gamma, "Honest share extending the greedy branch in a tie")->check(probability);
  };
  const auto add_r_leader = [&](CLI::App* sub) {
    sub->add_option("--r-leader", r_leader, "Leader share of epoch fees")->check(probability)->capture_default_str();
  };
  const auto add_seed = [&](CLI::App* sub) {
    auto* seed_opt = sub->add_option("--seed", seed, "Master seed");
    auto* nd = sub->add_flag("--nondeterministic", nondeterministic, "Draw the master seed from the OS");
    seed_opt->excludes(nd);
    return seed_opt;
  };

  auto* bounds_cmd = app.add_subcommand("bounds", "Fee-split bounds for the classic attacks");
  add_alpha(bounds_cmd)->required();

  auto* analytic_cmd = app.add_subcommand("analytic", "Closed-form probabilities, revenues and RER");
  add_alpha(analytic_cmd)->required();
  add_gamma(analytic_cmd)->required();
  add_r_leader(analytic_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "Bracketed absorption probability of the truncated chain");
  add_alpha(oracle_cmd)->required();
  add_gamma(oracle_cmd)->required();
  oracle_cmd->add_option("--depth", depth, "Truncation depth")->check(CLI::Range(2u, 100000u))->capture_default_str();

  auto* simulate_cmd = app.add_subcommand("simulate", "Seeded Monte Carlo estimate of the greedy win probability");
  add_alpha(simulate_cmd)->required();
  add_gamma(simulate_cmd)->required();
  add_r_leader(simulate_cmd);
  simulate_cmd->add_option("--trials", trials, "Episodes to simulate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_seed(simulate_cmd);
  simulate_cmd->add_option("--giveup-depth", giveup_depth, "Honest lead at which an episode is truncated")
      ->check(CLI::Range(2u, 1000000u))
      ->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "Revenue sweep over alpha and gamma grids");
  sweep_cmd->add_option("--alphas", alphas, "Alpha grid (default 0.01..0.50)")->delimiter(',')->check(probability);
  sweep_cmd->add_option("--gammas", gammas, "Gamma list (default 0,0.25,0.5,1)")->delimiter(',')->check(probability);
  sweep_cmd->add_option("--mode", mode_name, "Which revenue columns to compute")
      ->check(CLI::IsMember({"closed", "oracle", "mc", "all"}))
      ->capture_default_str();
  sweep_cmd->add_option("--depth", depth, "Oracle truncation depth")->check(CLI::Range(2u, 100000u));
  sweep_cmd->add_option("--trials", trials, "Episodes per simulated cell")->check(CLI::PositiveNumber);
  add_seed(sweep_cmd);
  sweep_cmd->add_option("--giveup-depth", giveup_depth, "Simulation give-up depth")->check(CLI::Range(2u, 1000000u));
  sweep_cmd->add_flag("--heatmap", heatmap, "Emit the closed-form RER grid instead of revenue records");

  auto* threshold_cmd = app.add_subcommand("threshold", "Minimum profitable mining power per gamma");
  auto* gamma_opt = add_gamma(threshold_cmd);
  auto* gammas_opt = threshold_cmd->add_option("--gammas", gammas, "Gamma grid (default 0,0.25,0.5,0.75,1)")
                         ->delimiter(',')
                         ->check(probability);
  gamma_opt->excludes(gammas_opt);
  threshold_cmd->add_option("--tol", tol, "Bisection tolerance")->check(CLI::PositiveNumber)->capture_default_str();

  auto* table1_cmd = app.add_subcommand("table1", "Reproduce the reference RER table");

  std::vector<std::string> argv_store{"greedymine"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    const Format format = format_name == "json" ? Format::Json : format_name == "csv" ? Format::Csv : Format::Human;
    const SweepMode mode = mode_name == "oracle" ? SweepMode::Oracle
                           : mode_name == "mc"   ? SweepMode::MonteCarlo
                           : mode_name == "all"  ? SweepMode::All
                                                 : SweepMode::Closed;
    const unsigned threads = detail::threads_from_env();
    const auto resolve_seed = [&](CLI::App* sub, bool needed) {
      if (!needed || nondeterministic) {
        if (nondeterministic) seed = detail::entropy_seed();
        return;
      }
      if (sub->count("--seed") == 0) throw InvalidArgument("seed", "required (or pass --nondeterministic)");
    };

    Output output;
    if (*bounds_cmd) {
      output = run_bounds(alpha);
    } else if (*analytic_cmd) {
      output = run_analytic(StrategyParams(alpha, gamma, r_leader));
    } else if (*oracle_cmd) {
      output = run_oracle(StrategyParams(alpha, gamma), depth);
    } else if (*simulate_cmd) {
      resolve_seed(simulate_cmd, true);
      SimConfig config{StrategyParams(alpha, gamma, r_leader)};
      config.trials = trials;
      config.master_seed = seed;
      config.giveup_depth = giveup_depth;
      output = run_simulate(config, threads);
    } else if (*sweep_cmd) {
      if (alphas.empty()) alphas = default_alpha_grid();
      if (gammas.empty()) gammas = default_gamma_list();
      if (heatmap) {
        output = run_heatmap(alphas, gammas);
      } else {
        resolve_seed(sweep_cmd, mode == SweepMode::MonteCarlo || mode == SweepMode::All);
        SweepOptions options;
        options.depth = depth;
        options.trials = trials;
        options.seed = seed;
        options.giveup_depth = giveup_depth;
        options.threads = threads;
        output = run_sweep(alphas, gammas, mode, options);
      }
    } else if (*threshold_cmd) {
      if (threshold_cmd->count("--gamma") > 0) {
        gammas = {gamma};
      } else if (gammas.empty()) {
        gammas = {0.0, 0.25, 0.5, 0.75, 1.0};
      }
      output = run_threshold(gammas, tol);
    } else if (*table1_cmd) {
      output = run_table1();
    }

    detail::emit(output, format, out_path, out, err);
    return output.status;
  } catch (const InvalidArgument& e) {
    err << "error: " << (e.field() == kThreadsEnv ? "" : "--") << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const ContractViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace greedymine::cli
