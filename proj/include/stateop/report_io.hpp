// JSON and CSV encodings of run reports.
//
// JSON is the canonical form and round-trips every RunReport field. CSV
// carries only the per-step trace table:
//
//   step_index,op_kind,emulated_index,angle,success_prob,cumulative_oracle_calls
//
// with an empty emulated_index cell when the index is undefined and reals
// printed with 17 significant digits.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "stateop/experiment.hpp"
#include "stateop/grover.hpp"
#include "stateop/reflect.hpp"
#include "stateop/trace.hpp"

namespace stateop {

inline constexpr const char* kTraceCsvHeader =
    "step_index,op_kind,emulated_index,angle,success_prob,cumulative_oracle_calls";

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_trace_csv(std::ostream& out, const std::vector<StepTrace>& traces) {
  out << kTraceCsvHeader << '\n';
  for (const auto& t : traces) {
    out << t.step_index << ',' << to_string(t.op_kind) << ',';
    if (t.emulated_index) out << *t.emulated_index;
    out << ',' << format_real(t.angle) << ',' << format_real(t.success_prob) << ','
        << t.cumulative_oracle_calls << '\n';
  }
}

inline void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
  out << "algorithm,queries,oracle_calls,reflections,total_ops,success_prob\n";
  for (const auto& r : rows) {
    out << r.algorithm << ',' << r.queries << ',' << r.oracle_calls << ',' << r.reflections << ','
        << r.total_ops << ',' << format_real(r.success_prob) << '\n';
  }
}

// nlohmann::json hooks, found by ADL.

inline void to_json(nlohmann::json& j, const StepTrace& t) {
  j = {{"step_index", t.step_index},
       {"op_kind", to_string(t.op_kind)},
       {"emulated_index", t.emulated_index ? nlohmann::json(*t.emulated_index) : nlohmann::json()},
       {"angle", t.angle},
       {"success_prob", t.success_prob},
       {"cumulative_oracle_calls", t.cumulative_oracle_calls},
       {"max_imag", t.max_imag}};
}

inline void from_json(const nlohmann::json& j, StepTrace& t) {
  j.at("step_index").get_to(t.step_index);
  t.op_kind = op_kind_from_string(j.at("op_kind").get<std::string>());
  const auto& e = j.at("emulated_index");
  t.emulated_index = e.is_null() ? std::nullopt : std::optional(e.get<std::int64_t>());
  j.at("angle").get_to(t.angle);
  j.at("success_prob").get_to(t.success_prob);
  j.at("cumulative_oracle_calls").get_to(t.cumulative_oracle_calls);
  j.at("max_imag").get_to(t.max_imag);
}

inline void to_json(nlohmann::json& j, const GroverParams& p) {
  j = {{"n", p.n},
       {"theta", p.theta},
       {"t_opt", p.t_opt},
       {"approx_iterations", p.approx_iterations}};
}

inline void from_json(const nlohmann::json& j, GroverParams& p) {
  j.at("n").get_to(p.n);
  j.at("theta").get_to(p.theta);
  j.at("t_opt").get_to(p.t_opt);
  j.at("approx_iterations").get_to(p.approx_iterations);
}

namespace detail {
template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json();
}
template <class T>
std::optional<T> optional_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}
}  // namespace detail

inline void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = {{"n", detail::optional_json(c.n)},
       {"omega", detail::optional_json(c.omega)},
       {"cnf", detail::optional_json(c.cnf_path)},
       {"algorithm", to_string(c.algorithm)},
       {"schedule", to_string(c.schedule)},
       {"steps", detail::optional_json(c.steps)},
       {"shots", c.shots},
       {"seed", c.seed},
       {"format", to_string(c.format)},
       {"output", c.output}};
}

inline void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  c.n = detail::optional_from<unsigned>(j, "n");
  c.omega = detail::optional_from<std::string>(j, "omega");
  c.cnf_path = detail::optional_from<std::string>(j, "cnf");
  c.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
  c.schedule = schedule_kind_from_string(j.at("schedule").get<std::string>());
  c.steps = detail::optional_from<std::uint64_t>(j, "steps");
  j.at("shots").get_to(c.shots);
  j.at("seed").get_to(c.seed);
  c.format = output_format_from_string(j.at("format").get<std::string>());
  j.at("output").get_to(c.output);
}

inline void to_json(nlohmann::json& j, const RunReport& r) {
  nlohmann::json hist;
  if (r.histogram) {
    hist = nlohmann::json::array();
    const unsigned n = r.params.n;
    for (const auto& [index, count] : *r.histogram) {
      hist.push_back({{"index", index},
                      {"bits", BasisIndex(index, n).to_bitstring()},
                      {"count", count}});
    }
  }
  j = {{"config", r.config},
       {"params", r.params},
       {"traces", r.traces},
       {"final",
        {{"success_prob", r.final.success_prob},
         {"angle", r.final.angle},
         {"emulated_index", r.final.emulated_index},
         {"solution", r.final.solution}}},
       {"counts",
        {{"oracle_calls", r.counts.oracle_calls},
         {"reflections", r.counts.reflections},
         {"grover_steps", r.counts.grover_steps}}},
       {"peak_stored_states", detail::optional_json(r.peak_stored_states)},
       {"histogram", hist},
       {"wall_time_seconds", r.wall_time_seconds}};
}

inline void from_json(const nlohmann::json& j, RunReport& r) {
  j.at("config").get_to(r.config);
  j.at("params").get_to(r.params);
  j.at("traces").get_to(r.traces);
  const auto& f = j.at("final");
  f.at("success_prob").get_to(r.final.success_prob);
  f.at("angle").get_to(r.final.angle);
  f.at("emulated_index").get_to(r.final.emulated_index);
  f.at("solution").get_to(r.final.solution);
  const auto& c = j.at("counts");
  c.at("oracle_calls").get_to(r.counts.oracle_calls);
  c.at("reflections").get_to(r.counts.reflections);
  c.at("grover_steps").get_to(r.counts.grover_steps);
  r.peak_stored_states = detail::optional_from<std::uint64_t>(j, "peak_stored_states");
  r.histogram.reset();
  if (j.contains("histogram") && !j.at("histogram").is_null()) {
    Histogram hist;
    for (const auto& bin : j.at("histogram")) {
      hist[bin.at("index").get<std::uint64_t>()] = bin.at("count").get<std::uint64_t>();
    }
    r.histogram = std::move(hist);
  }
  j.at("wall_time_seconds").get_to(r.wall_time_seconds);
}

inline void to_json(nlohmann::json& j, const ComparisonRow& r) {
  j = {{"algorithm", r.algorithm},
       {"queries", r.queries},
       {"oracle_calls", r.oracle_calls},
       {"reflections", r.reflections},
       {"total_ops", r.total_ops},
       {"success_prob", r.success_prob}};
}

/// Writes `report` in the configured format.
inline void write_report(std::ostream& out, const RunReport& report) {
  if (report.config.format == OutputFormat::csv) {
    write_trace_csv(out, report.traces);
  } else {
    out << nlohmann::json(report).dump(2) << '\n';
  }
}

inline void write_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows,
                             OutputFormat format) {
  if (format == OutputFormat::csv) {
    write_comparison_csv(out, rows);
  } else {
    out << nlohmann::json({{"rows", rows}}).dump(2) << '\n';
  }
}

}  // namespace stateop
