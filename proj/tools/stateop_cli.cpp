// stateop: run Grover and doubling-schedule searches from the command line.
//
// Exit codes: 0 success, 1 refusal or parse error, 2 usage error.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stateop/stateop.hpp"

namespace {

constexpr int kExitRefused = 1;
constexpr int kExitUsage = 2;

struct RawOptions {
  unsigned n = 0;
  std::string omega;
  std::string cnf;
  std::string algorithm = "grover";
  std::string schedule = "binary";
  std::uint64_t steps = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
};

void add_run_flags(CLI::App& cmd, RawOptions& o) {
  cmd.add_option("--n", o.n, "Register width in qubits");
  auto* omega = cmd.add_option("--omega", o.omega, "Marked string: 0b..., 0x... or decimal");
  auto* cnf = cmd.add_option("--cnf", o.cnf, "DIMACS CNF file defining the oracle");
  omega->excludes(cnf);
  cmd.add_option("--algorithm", o.algorithm, "grover | doubling")
      ->check(CLI::IsMember({"grover", "doubling"}));
  cmd.add_option("--schedule", o.schedule, "power2 | binary (doubling only)")
      ->check(CLI::IsMember({"power2", "binary"}));
  cmd.add_option("--steps", o.steps, "Grover iterations / doubling target (default t_opt)");
  cmd.add_option("--shots", o.shots, "Measurement samples (0 = none)");
  cmd.add_option("--seed", o.seed, "Sampling seed");
  cmd.add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  cmd.add_option("--output", o.output, "Output file (default stdout)");
}

stateop::ExperimentConfig to_config(const CLI::App& cmd, const RawOptions& o) {
  stateop::ExperimentConfig c;
  if (cmd.count("--n") > 0) c.n = o.n;
  if (cmd.count("--omega") > 0) c.omega = o.omega;
  if (cmd.count("--cnf") > 0) c.cnf_path = o.cnf;
  c.algorithm = stateop::algorithm_from_string(o.algorithm);
  c.schedule = stateop::schedule_kind_from_string(o.schedule);
  if (cmd.count("--steps") > 0) c.steps = o.steps;
  c.shots = o.shots;
  c.seed = o.seed;
  c.format = stateop::output_format_from_string(o.format);
  c.output = o.output;
  return c;
}

template <class Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw stateop::Error("cannot write '" + path + "'");
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"State-vector Grover search with stored-state reflections"};
  app.require_subcommand(1);

  RawOptions run_opts;
  auto* run = app.add_subcommand("run", "Run one search and report its trace");
  add_run_flags(*run, run_opts);

  RawOptions cmp_opts;
  auto* compare = app.add_subcommand("compare", "Compare classical, Grover and doubling search");
  add_run_flags(*compare, cmp_opts);

  std::string cnf_path;
  std::string cnf_output;
  auto* parse_cnf = app.add_subcommand("parse-cnf", "Validate a DIMACS file and count solutions");
  parse_cnf->add_option("--cnf", cnf_path, "DIMACS CNF file")->required();
  parse_cnf->add_option("--output", cnf_output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) {
      const auto config = to_config(*run, run_opts);
      const auto report = stateop::run_experiment(config);
      emit(config.output, [&](std::ostream& out) { stateop::write_report(out, report); });
    } else if (compare->parsed()) {
      const auto config = to_config(*compare, cmp_opts);
      const auto rows = stateop::compare_algorithms(config);
      emit(config.output,
           [&](std::ostream& out) { stateop::write_comparison(out, rows, config.format); });
    } else if (parse_cnf->parsed()) {
      const auto formula = stateop::load_dimacs(cnf_path);
      nlohmann::json summary = {{"num_vars", formula.num_vars},
                                {"num_clauses", formula.clauses.size()}};
      const auto oracle = stateop::Oracle::cnf(formula);
      auto solutions = nlohmann::json::array();
      for (const auto& x : stateop::brute_force_solutions(oracle)) {
        solutions.push_back(x.to_bitstring());
      }
      summary["solution_count"] = solutions.size();
      summary["solutions"] = std::move(solutions);
      emit(cnf_output, [&](std::ostream& out) { out << summary.dump(2) << '\n'; });
    }
  } catch (const stateop::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const stateop::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRefused;
  }
  return 0;
}
