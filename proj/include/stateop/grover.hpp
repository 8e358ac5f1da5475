// Standard Grover search: oracle forms, diffusion, iteration and runner.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "stateop/errors.hpp"
#include "stateop/oracles.hpp"
#include "stateop/statevec.hpp"
#include "stateop/trace.hpp"

namespace stateop {

/// U_w = 1 - 2|w><w|: negates every solution amplitude. Counts one oracle call.
inline QuantumState phase_oracle_apply(const Oracle& oracle, QuantumState psi) {
  if (psi.num_qubits() != oracle.width()) {
    throw DimensionError("phase oracle expects " + std::to_string(oracle.width()) +
                         " qubits, state has " + std::to_string(psi.num_qubits()));
  }
  auto amps = detail::StateAccess::amplitudes(psi);
  for (std::size_t x = 0; x < amps.size(); ++x) {
    if (oracle.predicate(x)) amps[x] = -amps[x];
  }
  oracle.record_call();
  return psi;
}

/// |x>|y> -> |x>|y xor f(x)> on n+1 qubits, ancilla last. Counts one oracle call.
inline QuantumState xor_oracle_apply(const Oracle& oracle, QuantumState extended) {
  if (extended.num_qubits() != oracle.width() + 1) {
    throw DimensionError("XOR oracle expects " + std::to_string(oracle.width() + 1) +
                         " qubits, state has " + std::to_string(extended.num_qubits()));
  }
  auto amps = detail::StateAccess::amplitudes(extended);
  const std::size_t dim = amps.size() / 2;
  for (std::size_t x = 0; x < dim; ++x) {
    if (oracle.predicate(x)) std::swap(amps[2 * x], amps[2 * x + 1]);
  }
  oracle.record_call();
  return extended;
}

/// U_s = 2|s><s| - 1 with |s> uniform: psi_i -> 2 mean(psi) - psi_i.
inline QuantumState diffusion_apply(QuantumState psi) {
  auto amps = detail::StateAccess::amplitudes(psi);
  Amplitude sum{};
  for (const auto& a : amps) sum += a;
  const Amplitude twice_mean = 2.0 * sum / static_cast<double>(amps.size());
  for (auto& a : amps) a = twice_mean - a;
  return psi;
}

/// U_grov = U_s U_w.
inline QuantumState grover_iteration(const Oracle& oracle, QuantumState psi) {
  return diffusion_apply(phase_oracle_apply(oracle, std::move(psi)));
}

struct GroverParams {
  unsigned n = 0;
  /// Half-angle of one Grover rotation, sin(theta) = 2^(-n/2).
  double theta = 0.0;
  /// floor(pi / (4 theta)).
  std::uint64_t t_opt = 0;
  /// The closed-form estimate pi * sqrt(2^n) / 4.
  double approx_iterations = 0.0;

  friend bool operator==(const GroverParams&, const GroverParams&) = default;
};

inline double grover_angle(unsigned n) {
  check_width(n);
  return std::asin(std::pow(2.0, -0.5 * static_cast<double>(n)));
}

/// Iteration count that lands closest to |w> without overshooting the quarter turn.
///
/// pi/(4 theta) is exactly 1 at n = 1; a 1e-9 slack keeps rounding from
/// flooring that to 0.
inline GroverParams optimal_iterations(unsigned n) {
  check_width(n);
  const double theta = grover_angle(n);
  const double ratio = std::numbers::pi / (4.0 * theta);
  return GroverParams{n, theta, static_cast<std::uint64_t>(std::floor(ratio + 1e-9)),
                      std::numbers::pi * std::sqrt(std::ldexp(1.0, static_cast<int>(n))) / 4.0};
}

struct GroverRun {
  QuantumState state;
  std::vector<StepTrace> traces;
};

/// `steps` Grover iterations from the uniform state, one trace per iteration.
inline GroverRun grover_run(const Oracle& oracle, std::uint64_t steps) {
  const BasisIndex omega = require_unique_solution(oracle);
  const std::uint64_t base_calls = oracle.call_count();
  GroverRun run{QuantumState::uniform(oracle.width()), {}};
  run.traces.reserve(steps);
  for (std::uint64_t k = 1; k <= steps; ++k) {
    run.state = grover_iteration(oracle, std::move(run.state));
    run.traces.push_back(record_step(k, OpKind::grover, static_cast<std::int64_t>(k), run.state,
                                     omega, oracle.call_count() - base_calls));
  }
  return run;
}

}  // namespace stateop
