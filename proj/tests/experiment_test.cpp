#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "stateop/experiment.hpp"
#include "stateop/report_io.hpp"

using namespace stateop;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

ExperimentConfig byte_config(Algorithm algorithm) {
  ExperimentConfig c;
  c.n = 8;
  c.omega = "0x2A";
  c.algorithm = algorithm;
  return c;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

TEST(OmegaLiteral, Bases) {
  EXPECT_EQ(parse_omega_literal("0b101010", 8).value(), 42u);
  EXPECT_EQ(parse_omega_literal("0x2A", 8).value(), 42u);
  EXPECT_EQ(parse_omega_literal("0x2a", 8).value(), 42u);
  EXPECT_EQ(parse_omega_literal("42", 8).value(), 42u);
  EXPECT_THROW(parse_omega_literal("256", 8), ConfigError);
  EXPECT_THROW(parse_omega_literal("0b102", 8), ConfigError);
  EXPECT_THROW(parse_omega_literal("0x", 8), ConfigError);
  EXPECT_THROW(parse_omega_literal("4a", 8), ConfigError);
}

TEST(RunExperiment, GroverByteExample) {
  auto c = byte_config(Algorithm::grover);
  c.steps = 12;
  const auto r = run_experiment(c);
  EXPECT_NEAR(r.final.success_prob, 0.9999470421032647, 1e-10);
  EXPECT_EQ(r.counts.oracle_calls, 12u);
  EXPECT_EQ(r.counts.grover_steps, 12u);
  EXPECT_EQ(r.counts.reflections, 0u);
  EXPECT_EQ(r.final.solution, "00101010");
  EXPECT_EQ(r.params.t_opt, 12u);
  EXPECT_FALSE(r.histogram.has_value());
  EXPECT_FALSE(r.peak_stored_states.has_value());
}

TEST(RunExperiment, DoublingByteExample) {
  const auto r = run_experiment(byte_config(Algorithm::doubling));
  EXPECT_NEAR(r.final.success_prob, 0.9999470421032647, 1e-10);
  EXPECT_EQ(r.counts.oracle_calls, 1u);
  EXPECT_EQ(r.counts.reflections, 4u);
  EXPECT_EQ(r.counts.grover_steps, 1u);
  EXPECT_EQ(r.final.emulated_index, 12);
  EXPECT_EQ(r.peak_stored_states, 3u);
}

TEST(RunExperiment, RefusesTwoSolutions) {
  ExperimentConfig c;
  c.cnf_path = write_temp("stateop_two.cnf", "p cnf 2 2\n1 2 0\n-1 -2 0\n");
  try {
    run_experiment(c);
    FAIL() << "expected refusal";
  } catch (const UniquenessError& e) {
    EXPECT_EQ(e.solution_count(), 2u);
    EXPECT_NE(std::string(e.what()).find("found 2"), std::string::npos);
  }
}

TEST(RunExperiment, ConfigValidation) {
  ExperimentConfig none;
  EXPECT_THROW(run_experiment(none), ConfigError);

  auto both = byte_config(Algorithm::grover);
  both.cnf_path = STATEOP_TEST_DATA "/unique10.cnf";
  EXPECT_THROW(run_experiment(both), ConfigError);

  ExperimentConfig no_width;
  no_width.omega = "3";
  EXPECT_THROW(run_experiment(no_width), ConfigError);

  ExperimentConfig width_clash;
  width_clash.cnf_path = STATEOP_TEST_DATA "/unique10.cnf";
  width_clash.n = 9;
  EXPECT_THROW(run_experiment(width_clash), ConfigError);

  auto schedule_on_grover = byte_config(Algorithm::grover);
  schedule_on_grover.schedule = ScheduleKind::power2;
  EXPECT_THROW(run_experiment(schedule_on_grover), ConfigError);

  auto too_wide = byte_config(Algorithm::grover);
  too_wide.n = kMaxEnumerationWidth + 1;
  too_wide.omega = "1";
  EXPECT_THROW(run_experiment(too_wide), InvalidWidthError);
}

TEST(RunExperiment, CnfWidthInferred) {
  ExperimentConfig c;
  c.cnf_path = STATEOP_TEST_DATA "/unique10.cnf";
  c.algorithm = Algorithm::doubling;
  const auto r = run_experiment(c);
  EXPECT_EQ(r.config.n, 10u);
  EXPECT_EQ(r.final.solution, "1011001110");
  EXPECT_EQ(r.counts.oracle_calls, 1u);
}

TEST(RunExperiment, HistogramOnlyWithShots) {
  auto c = byte_config(Algorithm::doubling);
  c.shots = 500;
  c.seed = 9;
  const auto r = run_experiment(c);
  ASSERT_TRUE(r.histogram.has_value());
  std::uint64_t total = 0;
  for (const auto& [x, count] : *r.histogram) total += count;
  EXPECT_EQ(total, 500u);
}

TEST(RunExperiment, DeterministicApartFromWallTime) {
  for (auto algorithm : {Algorithm::grover, Algorithm::doubling}) {
    auto c = byte_config(algorithm);
    c.shots = 2000;
    c.seed = 31;
    auto a = run_experiment(c);
    auto b = run_experiment(c);
    a.wall_time_seconds = b.wall_time_seconds = 0.0;
    EXPECT_EQ(a, b);
  }
}

TEST(ReportJson, RoundTripsEveryField) {
  for (auto algorithm : {Algorithm::grover, Algorithm::doubling}) {
    auto c = byte_config(algorithm);
    c.shots = 300;
    c.seed = 4;
    const auto report = run_experiment(c);
    const auto text = nlohmann::json(report).dump();
    const auto back = nlohmann::json::parse(text).get<RunReport>();
    EXPECT_EQ(back, report);
  }
  ExperimentConfig c;
  c.cnf_path = STATEOP_TEST_DATA "/unique10.cnf";
  const auto report = run_experiment(c);
  EXPECT_EQ(nlohmann::json::parse(nlohmann::json(report).dump()).get<RunReport>(), report);
}

TEST(ReportJson, SchemaKeys) {
  auto c = byte_config(Algorithm::doubling);
  c.shots = 10;
  const auto j = nlohmann::json(run_experiment(c));
  for (const char* key : {"config", "params", "traces", "final", "counts", "histogram",
                          "wall_time_seconds", "peak_stored_states"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["params"]["t_opt"], 12);
  EXPECT_EQ(j["traces"][0]["op_kind"], "prepare");
  EXPECT_EQ(j["histogram"][0]["bits"].get<std::string>().size(), 8u);
}

TEST(ReportCsv, MatchesJsonTraces) {
  for (auto algorithm : {Algorithm::grover, Algorithm::doubling}) {
    const auto report = run_experiment(byte_config(algorithm));
    std::ostringstream csv;
    write_trace_csv(csv, report.traces);
    std::istringstream in(csv.str());
    std::string line;
    ASSERT_TRUE(std::getline(in, line));
    EXPECT_EQ(line, kTraceCsvHeader);

    const auto json_traces = nlohmann::json(report).at("traces");
    std::size_t row = 0;
    while (std::getline(in, line)) {
      const auto cells = split(line, ',');
      ASSERT_EQ(cells.size(), 6u) << line;
      const auto& j = json_traces.at(row);
      EXPECT_EQ(std::stoull(cells[0]), j["step_index"].get<std::uint64_t>());
      EXPECT_EQ(cells[1], j["op_kind"].get<std::string>());
      if (j["emulated_index"].is_null()) {
        EXPECT_TRUE(cells[2].empty());
      } else {
        EXPECT_EQ(std::stoll(cells[2]), j["emulated_index"].get<std::int64_t>());
      }
      EXPECT_EQ(std::stod(cells[3]), j["angle"].get<double>());
      EXPECT_EQ(std::stod(cells[4]), j["success_prob"].get<double>());
      EXPECT_EQ(std::stoull(cells[5]), j["cumulative_oracle_calls"].get<std::uint64_t>());
      ++row;
    }
    EXPECT_EQ(row, json_traces.size());
  }
}

TEST(CompareAlgorithms, ByteRegister) {
  const auto rows = compare_algorithms(byte_config(Algorithm::grover));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].algorithm, "classical");
  EXPECT_EQ(rows[0].queries, 0x2Au + 1);
  EXPECT_LE(rows[0].queries, 256u);
  EXPECT_EQ(rows[1].algorithm, "grover");
  EXPECT_EQ(rows[1].oracle_calls, 12u);
  EXPECT_EQ(rows[1].total_ops, 12u);
  EXPECT_EQ(rows[2].algorithm, "doubling");
  EXPECT_EQ(rows[2].oracle_calls, 1u);
  EXPECT_EQ(rows[2].reflections, 4u);
  EXPECT_EQ(rows[2].total_ops, 5u);
  EXPECT_NEAR(rows[1].success_prob, rows[2].success_prob, 1e-10);
}

TEST(CompareAlgorithms, TwoQubitsCoincide) {
  ExperimentConfig c;
  c.n = 2;
  c.omega = "0b10";
  const auto rows = compare_algorithms(c);
  EXPECT_EQ(rows[1].oracle_calls, 1u);
  EXPECT_EQ(rows[2].oracle_calls, 1u);
  EXPECT_EQ(rows[2].reflections, 0u);
  EXPECT_NEAR(rows[1].success_prob, 1.0, 1e-12);
  EXPECT_NEAR(rows[2].success_prob, 1.0, 1e-12);
}

TEST(CompareAlgorithms, TenQubits) {
  ExperimentConfig c;
  c.n = 10;
  c.omega = "0x155";
  const auto rows = compare_algorithms(c);
  EXPECT_EQ(rows[1].oracle_calls, 25u);
  EXPECT_EQ(rows[2].oracle_calls, 1u);
  EXPECT_LE(rows[2].reflections, 10u);
  // 1 -> 2 -> 4 -> 8 -> 16, then s_7 = 2*4 - 1 and s_25 = 2*16 - 7.
  EXPECT_EQ(rows[2].reflections, 6u);
}
