// Plane geometry, Born-rule measurement and per-step run records.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "stateop/errors.hpp"
#include "stateop/statevec.hpp"

namespace stateop {

/// Non-solution amplitudes must agree this closely for angle_of to accept a state.
inline constexpr double kPlaneTolerance = 1e-8;

enum class OpKind { prepare, grover, reflect };

inline std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::prepare: return "prepare";
    case OpKind::grover: return "grover";
    case OpKind::reflect: return "reflect";
  }
  return "?";
}

inline OpKind op_kind_from_string(std::string_view s) {
  if (s == "prepare") return OpKind::prepare;
  if (s == "grover") return OpKind::grover;
  if (s == "reflect") return OpKind::reflect;
  throw InvalidArgumentError("unknown op kind '" + std::string(s) + "'");
}

struct StepTrace {
  std::uint64_t step_index = 0;
  OpKind op_kind = OpKind::grover;
  /// Number of plain Grover iterations that produce the same state.
  std::optional<std::int64_t> emulated_index;
  double angle = 0.0;
  double success_prob = 0.0;
  std::uint64_t cumulative_oracle_calls = 0;
  double max_imag = 0.0;

  friend bool operator==(const StepTrace&, const StepTrace&) = default;
};

inline void check_index_width(const QuantumState& psi, BasisIndex omega) {
  if (omega.width() != psi.num_qubits()) {
    throw DimensionError("state width " + std::to_string(psi.num_qubits()) +
                         ", index width " + std::to_string(omega.width()));
  }
}

/// |<omega|psi>|^2.
inline double success_probability(const QuantumState& psi, BasisIndex omega) {
  check_index_width(psi, omega);
  return std::norm(psi[omega.value()]);
}

inline double max_imag_part(const QuantumState& psi) {
  double worst = 0.0;
  for (const auto& a : psi.amplitudes()) worst = std::max(worst, std::abs(a.imag()));
  return worst;
}

/// Signed angle of psi from the non-solution axis toward |omega>, in (-pi, pi].
///
/// psi must be real and lie in span{|omega>, |r>}, where |r> is the uniform
/// superposition over the N-1 non-solutions. Anything else is a GeometryError.
inline double angle_of(const QuantumState& psi, BasisIndex omega) {
  check_index_width(psi, omega);
  if (max_imag_part(psi) > kPlaneTolerance) {
    throw GeometryError("state has imaginary amplitudes; plane angle undefined");
  }
  const auto amps = psi.amplitudes();
  const std::uint64_t w = omega.value();
  const std::size_t ref = (w == 0) ? 1 : 0;
  const double common = amps[ref].real();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i == w) continue;
    if (std::abs(amps[i].real() - common) > kPlaneTolerance) {
      throw GeometryError("non-solution amplitudes differ at index " + std::to_string(i) +
                          "; state is outside the Grover plane");
    }
  }
  const double sin_part = amps[w].real();
  const double cos_part = std::sqrt(static_cast<double>(amps.size() - 1)) * common;
  return std::atan2(sin_part, cos_part);
}

inline StepTrace record_step(std::uint64_t step_index, OpKind kind,
                             std::optional<std::int64_t> emulated_index, const QuantumState& psi,
                             BasisIndex omega, std::uint64_t cumulative_oracle_calls) {
  return StepTrace{step_index,
                   kind,
                   emulated_index,
                   angle_of(psi, omega),
                   success_probability(psi, omega),
                   cumulative_oracle_calls,
                   max_imag_part(psi)};
}

/// The library's random source.
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the two
/// 32-bit halves of the seed (low word first). Both are bit-exactly specified
/// by the C++ standard. Uniform doubles take the top 53 bits of one draw, so
/// no implementation-defined distribution is involved and sample streams are
/// identical across compilers and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Independent child stream; advances this generator by two draws.
  Rng split() {
    const std::uint64_t a = next();
    const std::uint64_t b = next();
    return Rng(a ^ (b * 0x9E3779B97F4A7C15ULL));
  }

 private:
  std::mt19937_64 engine_;
};

/// Outcome index -> number of shots that produced it. Zero counts are omitted.
using Histogram = std::map<std::uint64_t, std::uint64_t>;

/// `shots` independent Born-rule draws from psi, sequential for a fixed seed.
inline Histogram sample_measurement(const QuantumState& psi, std::uint64_t shots,
                                    std::uint64_t seed) {
  if (shots == 0) throw InvalidArgumentError("shots must be >= 1");
  const auto amps = psi.amplitudes();
  std::vector<double> cumulative(amps.size());
  double total = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    total += std::norm(amps[i]);
    cumulative[i] = total;
  }
  Rng rng(seed);
  Histogram hist;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform01() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    // u == total can only happen through rounding; clamp to the last outcome
    // with nonzero weight.
    if (it == cumulative.end()) --it;
    auto idx = static_cast<std::size_t>(it - cumulative.begin());
    while (idx > 0 && std::norm(amps[idx]) == 0.0) --idx;
    ++hist[idx];
  }
  return hist;
}

}  // namespace stateop
