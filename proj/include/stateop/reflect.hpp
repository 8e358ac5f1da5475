// Stored states used as reflection operators.
//
// In the state-as-operator model a state |m> held in one register may be
// applied to another register as 2|m><m| - 1. Inside the Grover plane, with
// s_i the state after i plain Grover iterations, reflecting s_j about s_k
// yields s_{2k-j}. One oracle call produces s_1; every later index is reached
// by reflections alone, so T iterations cost O(lg T) operations.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "stateop/errors.hpp"
#include "stateop/grover.hpp"
#include "stateop/oracles.hpp"
#include "stateop/statevec.hpp"
#include "stateop/trace.hpp"

namespace stateop {

/// 2<mirror|input> mirror - input. No oracle involvement.
inline QuantumState reflect_about(const QuantumState& mirror, QuantumState input) {
  check_same_width(mirror, input);
  const Amplitude twice_overlap = 2.0 * inner_product(mirror, input);
  auto amps = detail::StateAccess::amplitudes(input);
  const auto axis = mirror.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = twice_overlap * axis[i] - amps[i];
  return input;
}

enum class ScheduleKind {
  /// Only ever reflects the fresh |s> about the latest state: 1, 2, 4, 8, ...
  power2,
  /// Doubling followed by a short composition chain that hits the target exactly.
  binary,
};

inline std::string_view to_string(ScheduleKind kind) {
  return kind == ScheduleKind::power2 ? "power2" : "binary";
}

inline ScheduleKind schedule_kind_from_string(std::string_view s) {
  if (s == "power2") return ScheduleKind::power2;
  if (s == "binary") return ScheduleKind::binary;
  throw InvalidArgumentError("unknown schedule kind '" + std::string(s) + "'");
}

/// s_1 = U_grov s_0. The only step that touches the oracle.
struct GroverStep {
  friend bool operator==(const GroverStep&, const GroverStep&) = default;
};

/// s_result = reflection of s_input about s_mirror, with result = 2 mirror - input.
struct ReflectStep {
  std::int64_t mirror = 0;
  std::int64_t input = 0;
  std::int64_t result = 0;

  friend bool operator==(const ReflectStep&, const ReflectStep&) = default;
};

using ScheduleStep = std::variant<GroverStep, ReflectStep>;

struct ReflectionSchedule {
  ScheduleKind kind = ScheduleKind::binary;
  std::int64_t target_index = 1;
  std::vector<ScheduleStep> steps;

  /// Grover index of the state the last step produces.
  std::int64_t emulated_index() const {
    if (steps.empty()) return 0;
    if (const auto* r = std::get_if<ReflectStep>(&steps.back())) return r->result;
    return 1;
  }

  friend bool operator==(const ReflectionSchedule&, const ReflectionSchedule&) = default;
};

inline std::size_t reflection_count(const ReflectionSchedule& schedule) {
  std::size_t count = 0;
  for (const auto& step : schedule.steps) count += std::holds_alternative<ReflectStep>(step);
  return count;
}

namespace detail {

inline std::map<std::int64_t, std::size_t> last_uses(const ReflectionSchedule& schedule) {
  std::map<std::int64_t, std::size_t> last;
  for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
    if (const auto* r = std::get_if<ReflectStep>(&schedule.steps[i])) {
      last[r->mirror] = i;
      last[r->input] = i;
    }
  }
  return last;
}

struct StorePlan {
  /// Indices dropped after each step.
  std::vector<std::vector<std::int64_t>> evict;
  std::size_t peak = 1;
};

// Checks the structural rules and works out, per step, which stored indices
// die after it. s_0 is never evicted: it can always be prepared again.
inline StorePlan plan_store(const ReflectionSchedule& schedule) {
  if (schedule.steps.empty() || !std::holds_alternative<GroverStep>(schedule.steps.front())) {
    throw ScheduleError("schedule must start with its single Grover step");
  }
  const auto last = last_uses(schedule);
  const std::int64_t final_index = schedule.emulated_index();
  std::set<std::int64_t> stored{0};
  StorePlan plan;
  plan.evict.resize(schedule.steps.size());
  for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
    std::int64_t produced = 1;
    if (const auto* r = std::get_if<ReflectStep>(&schedule.steps[i])) {
      if (r->result != 2 * r->mirror - r->input) {
        throw ScheduleError("step " + std::to_string(i) + ": result " +
                            std::to_string(r->result) + " != 2*" + std::to_string(r->mirror) +
                            " - " + std::to_string(r->input));
      }
      for (std::int64_t idx : {r->mirror, r->input}) {
        if (!stored.contains(idx)) {
          throw ScheduleError("step " + std::to_string(i) + " uses s_" + std::to_string(idx) +
                              ", which is not stored");
        }
      }
      produced = r->result;
    } else if (i != 0) {
      throw ScheduleError("step " + std::to_string(i) + ": only one Grover step is allowed");
    }
    stored.insert(produced);
    for (auto it = stored.begin(); it != stored.end();) {
      const std::int64_t idx = *it;
      const auto use = last.find(idx);
      const bool needed_later = use != last.end() && use->second > i;
      if (idx != 0 && idx != final_index && !needed_later) {
        plan.evict[i].push_back(idx);
        it = stored.erase(it);
      } else {
        ++it;
      }
    }
    plan.peak = std::max(plan.peak, stored.size());
  }
  return plan;
}

inline void build_binary_chain(std::int64_t x, std::set<std::int64_t>& stored,
                               std::vector<ScheduleStep>& steps) {
  if (stored.contains(x)) return;
  // x = 2p - y with p the largest stored power of two below x and 0 < y < p.
  const auto p = static_cast<std::int64_t>(std::bit_floor(static_cast<std::uint64_t>(x)));
  const std::int64_t y = 2 * p - x;
  build_binary_chain(y, stored, steps);
  steps.push_back(ReflectStep{p, y, x});
  stored.insert(x);
}

}  // namespace detail

/// Most states held at once by doubling_run on this schedule, s_0 included.
inline std::size_t peak_stored_states(const ReflectionSchedule& schedule) {
  return detail::plan_store(schedule).peak;
}

/// Plans how to reach the Grover state at `target_index` with one oracle call.
///
/// binary: doubles 1 -> 2 -> ... -> 2^m <= target, then closes the gap with
/// x = 2p - y steps, recursing on y. Uses at most 2 floor(lg target) reflections.
///
/// power2: doubles only, ending at whichever power of two bracketing
/// `target_index` has success probability closest to 1 for an n-qubit
/// register (ties go to the smaller power).
inline ReflectionSchedule build_schedule(ScheduleKind kind, std::int64_t target_index,
                                         unsigned n) {
  if (target_index < 1) {
    throw InvalidArgumentError("target index must be >= 1, got " + std::to_string(target_index));
  }
  const auto target = static_cast<std::uint64_t>(target_index);
  ReflectionSchedule schedule{kind, target_index, {GroverStep{}}};

  std::uint64_t top = std::bit_floor(target);
  if (kind == ScheduleKind::power2) {
    const double theta = grover_angle(n);
    const auto miss = [theta](std::uint64_t k) {
      const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * theta);
      return std::abs(s * s - 1.0);
    };
    const std::uint64_t hi = std::bit_ceil(target);
    if (miss(hi) < miss(top)) top = hi;
  }

  std::set<std::int64_t> stored{0, 1};
  for (std::uint64_t k = 1; k < top; k *= 2) {
    const auto mirror = static_cast<std::int64_t>(k);
    schedule.steps.push_back(ReflectStep{mirror, 0, 2 * mirror});
    stored.insert(2 * mirror);
  }
  if (kind == ScheduleKind::binary) detail::build_binary_chain(target_index, stored, schedule.steps);
  return schedule;
}

struct DoublingRun {
  QuantumState state;
  std::vector<StepTrace> traces;
  std::int64_t emulated_index = 0;
  std::size_t peak_stored_states = 0;
};

/// Executes `schedule` against `oracle`.
///
/// s_0 = |s> is always available: it models preparing the uniform state on the
/// other register. Stored states are dropped after their last use. The oracle
/// is called exactly once, by the schedule's Grover step.
inline DoublingRun doubling_run(const Oracle& oracle, const ReflectionSchedule& schedule) {
  const BasisIndex omega = require_unique_solution(oracle);
  const auto evict = detail::plan_store(schedule).evict;
  const std::uint64_t base_calls = oracle.call_count();

  std::map<std::int64_t, QuantumState> store;
  store.emplace(0, QuantumState::uniform(oracle.width()));
  std::vector<StepTrace> traces;
  traces.reserve(schedule.steps.size() + 1);
  traces.push_back(record_step(0, OpKind::prepare, 0, store.at(0), omega, 0));

  std::size_t peak = store.size();
  for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
    std::int64_t produced = 1;
    OpKind kind = OpKind::grover;
    if (const auto* r = std::get_if<ReflectStep>(&schedule.steps[i])) {
      produced = r->result;
      kind = OpKind::reflect;
      store.insert_or_assign(produced, reflect_about(store.at(r->mirror), store.at(r->input)));
    } else {
      store.insert_or_assign(produced, grover_iteration(oracle, store.at(0)));
    }
    traces.push_back(record_step(i + 1, kind, produced, store.at(produced), omega,
                                 oracle.call_count() - base_calls));
    for (std::int64_t dead : evict[i]) store.erase(dead);
    peak = std::max(peak, store.size());
  }

  const std::int64_t final_index = schedule.emulated_index();
  return DoublingRun{store.at(final_index), std::move(traces), final_index, peak};
}

}  // namespace stateop
