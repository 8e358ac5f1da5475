// Experiment configuration, runner and algorithm comparison.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stateop/errors.hpp"
#include "stateop/grover.hpp"
#include "stateop/oracles.hpp"
#include "stateop/reflect.hpp"
#include "stateop/statevec.hpp"
#include "stateop/trace.hpp"

namespace stateop {

/// Inconsistent or incomplete experiment settings (a usage problem, not a
/// property of the search instance).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Algorithm { grover, doubling };
enum class OutputFormat { json, csv };

inline std::string_view to_string(Algorithm a) {
  return a == Algorithm::grover ? "grover" : "doubling";
}
inline std::string_view to_string(OutputFormat f) {
  return f == OutputFormat::json ? "json" : "csv";
}

inline Algorithm algorithm_from_string(std::string_view s) {
  if (s == "grover") return Algorithm::grover;
  if (s == "doubling") return Algorithm::doubling;
  throw ConfigError("unknown algorithm '" + std::string(s) + "'");
}
inline OutputFormat output_format_from_string(std::string_view s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw ConfigError("unknown format '" + std::string(s) + "'");
}

struct ExperimentConfig {
  std::optional<unsigned> n;
  /// Marked string as 0b..., 0x... or decimal. Exclusive with cnf_path.
  std::optional<std::string> omega;
  std::optional<std::string> cnf_path;
  Algorithm algorithm = Algorithm::grover;
  /// Only meaningful for Algorithm::doubling.
  ScheduleKind schedule = ScheduleKind::binary;
  /// Grover iterations (grover) or target index (doubling); defaults to t_opt.
  std::optional<std::uint64_t> steps;
  /// 0 disables sampling.
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::json;
  /// Empty means standard output.
  std::string output;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses `0b1010`, `0x2A` or `42` and checks it fits in n bits.
inline BasisIndex parse_omega_literal(std::string_view text, unsigned n) {
  check_width(n, 63);
  int base = 10;
  std::string_view digits = text;
  if (text.starts_with("0b") || text.starts_with("0B")) {
    base = 2;
    digits.remove_prefix(2);
  } else if (text.starts_with("0x") || text.starts_with("0X")) {
    base = 16;
    digits.remove_prefix(2);
  }
  if (digits.empty()) throw ConfigError("empty omega literal '" + std::string(text) + "'");
  std::uint64_t value = 0;
  for (char c : digits) {
    int d = -1;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    if (d < 0 || d >= base) {
      throw ConfigError("bad digit '" + std::string(1, c) + "' in omega literal '" +
                        std::string(text) + "'");
    }
    if (value > (std::uint64_t{1} << 62)) throw ConfigError("omega literal too large");
    value = value * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(d);
  }
  if (value >= (std::uint64_t{1} << n)) {
    throw ConfigError("omega " + std::string(text) + " does not fit in " + std::to_string(n) +
                      " bits");
  }
  return BasisIndex(value, n);
}

/// Builds the oracle a config describes, validating the source flags.
inline Oracle make_oracle(const ExperimentConfig& config) {
  if (config.omega.has_value() == config.cnf_path.has_value()) {
    throw ConfigError("exactly one of --omega or --cnf is required");
  }
  if (config.omega) {
    if (!config.n) throw ConfigError("--omega needs --n");
    return Oracle::marked(parse_omega_literal(*config.omega, *config.n));
  }
  auto formula = load_dimacs(*config.cnf_path);
  if (config.n && *config.n != formula.num_vars) {
    throw ConfigError("--n " + std::to_string(*config.n) + " disagrees with the " +
                      std::to_string(formula.num_vars) + " variables in " + *config.cnf_path);
  }
  return Oracle::cnf(std::move(formula));
}

struct FinalSummary {
  double success_prob = 0.0;
  double angle = 0.0;
  std::int64_t emulated_index = 0;
  /// Solution found by brute force, as a bit string.
  std::string solution;

  friend bool operator==(const FinalSummary&, const FinalSummary&) = default;
};

struct RunCounts {
  std::uint64_t oracle_calls = 0;
  std::uint64_t reflections = 0;
  std::uint64_t grover_steps = 0;

  friend bool operator==(const RunCounts&, const RunCounts&) = default;
};

struct RunReport {
  ExperimentConfig config;
  GroverParams params;
  std::vector<StepTrace> traces;
  FinalSummary final;
  RunCounts counts;
  /// Doubling runs only.
  std::optional<std::uint64_t> peak_stored_states;
  /// Present iff config.shots > 0.
  std::optional<Histogram> histogram;
  double wall_time_seconds = 0.0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Runs one search. Deterministic for a fixed config apart from wall time.
inline RunReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (config.schedule != ScheduleKind::binary && config.algorithm != Algorithm::doubling) {
    throw ConfigError("--schedule only applies to --algorithm doubling");
  }
  const Oracle oracle = make_oracle(config);
  const BasisIndex omega = require_unique_solution(oracle);

  RunReport report;
  report.config = config;
  report.config.n = oracle.width();
  report.params = optimal_iterations(oracle.width());
  const std::uint64_t target = config.steps.value_or(report.params.t_opt);

  std::optional<QuantumState> final_state;
  if (config.algorithm == Algorithm::grover) {
    auto run = grover_run(oracle, target);
    report.traces = std::move(run.traces);
    report.final.emulated_index = static_cast<std::int64_t>(target);
    final_state = std::move(run.state);
  } else {
    if (target == 0) throw ConfigError("doubling needs a target index >= 1");
    const auto schedule =
        build_schedule(config.schedule, static_cast<std::int64_t>(target), oracle.width());
    auto run = doubling_run(oracle, schedule);
    report.traces = std::move(run.traces);
    report.final.emulated_index = run.emulated_index;
    report.peak_stored_states = run.peak_stored_states;
    final_state = std::move(run.state);
  }

  for (const auto& t : report.traces) {
    report.counts.grover_steps += t.op_kind == OpKind::grover;
    report.counts.reflections += t.op_kind == OpKind::reflect;
  }
  report.counts.oracle_calls = oracle.call_count();
  report.final.success_prob = success_probability(*final_state, omega);
  report.final.angle = angle_of(*final_state, omega);
  report.final.solution = omega.to_bitstring();
  if (config.shots > 0) report.histogram = sample_measurement(*final_state, config.shots, config.seed);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

struct ComparisonRow {
  std::string algorithm;
  /// Oracle-equivalent queries: classical evaluations, or U_w applications.
  std::uint64_t queries = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t reflections = 0;
  /// Grover iterations plus stored-state reflections (classical: evaluations).
  std::uint64_t total_ops = 0;
  double success_prob = 0.0;

  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

/// Classical scan, plain Grover and the doubling schedule on the same instance.
inline std::vector<ComparisonRow> compare_algorithms(const ExperimentConfig& config) {
  std::vector<ComparisonRow> rows;
  {
    const Oracle oracle = make_oracle(config);
    const BasisIndex omega = require_unique_solution(oracle);
    const std::uint64_t scanned = omega.value() + 1;
    rows.push_back({"classical", scanned, scanned, 0, scanned, 1.0});
  }
  for (const Algorithm algorithm : {Algorithm::grover, Algorithm::doubling}) {
    ExperimentConfig c = config;
    c.algorithm = algorithm;
    c.schedule = algorithm == Algorithm::doubling ? config.schedule : ScheduleKind::binary;
    c.shots = 0;
    const RunReport r = run_experiment(c);
    rows.push_back({std::string(to_string(algorithm)), r.counts.oracle_calls,
                    r.counts.oracle_calls, r.counts.reflections,
                    r.counts.grover_steps + r.counts.reflections, r.final.success_prob});
  }
  return rows;
}

}  // namespace stateop
