// Dense state vectors over n qubits.
//
// Basis states are indexed by the integer value of their bit string with the
// first qubit as the most significant bit, so |x1 x2 ... xn> lives at index
// x1*2^(n-1) + ... + xn.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stateop/errors.hpp"

namespace stateop {

using Amplitude = std::complex<double>;

/// Largest register a QuantumState may hold (16M amplitudes).
inline constexpr unsigned kMaxQubits = 24;

/// Tolerance accepted when a caller hands in raw amplitudes.
inline constexpr double kInputNormTolerance = 1e-10;

inline void check_width(unsigned n, unsigned cap = kMaxQubits) {
  if (n == 0 || n > cap) {
    throw InvalidWidthError("register width " + std::to_string(n) +
                            " outside [1, " + std::to_string(cap) + "]");
  }
}

/// A concrete n-bit string x, stored as its integer value.
class BasisIndex {
 public:
  BasisIndex(std::uint64_t value, unsigned width) : value_(value), width_(width) {
    if (width == 0 || width > 63) {
      throw InvalidWidthError("basis index width " + std::to_string(width) +
                              " outside [1, 63]");
    }
    if (value >= (std::uint64_t{1} << width)) {
      throw InvalidArgumentError("basis index " + std::to_string(value) +
                                 " does not fit in " + std::to_string(width) +
                                 " bits");
    }
  }

  std::uint64_t value() const noexcept { return value_; }
  unsigned width() const noexcept { return width_; }

  /// Bit i (0-based, most significant first).
  bool bit(unsigned i) const noexcept { return (value_ >> (width_ - 1 - i)) & 1U; }

  std::string to_bitstring() const {
    std::string out(width_, '0');
    for (unsigned i = 0; i < width_; ++i) {
      if (bit(i)) out[i] = '1';
    }
    return out;
  }

  static BasisIndex from_bitstring(std::string_view bits) {
    if (bits.empty() || bits.size() > 63) {
      throw InvalidWidthError("bit string length " + std::to_string(bits.size()) +
                              " outside [1, 63]");
    }
    std::uint64_t value = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') {
        throw InvalidArgumentError("bit string contains '" + std::string(1, c) + "'");
      }
      value = (value << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return BasisIndex(value, static_cast<unsigned>(bits.size()));
  }

  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;

 private:
  std::uint64_t value_;
  unsigned width_;
};

class QuantumState;

namespace detail {
// Write access for the operator kernels in this library. Callers outside the
// library only ever see normalized states.
struct StateAccess {
  static std::span<Amplitude> amplitudes(QuantumState& psi);
  static QuantumState adopt(unsigned n, std::vector<Amplitude> amps);
};
}  // namespace detail

/// Normalized vector of 2^n complex amplitudes.
class QuantumState {
 public:
  /// H^n |0...0>: every amplitude equals 2^(-n/2).
  static QuantumState uniform(unsigned n) {
    check_width(n);
    const std::size_t dim = std::size_t{1} << n;
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    return QuantumState(n, std::vector<Amplitude>(dim, Amplitude(amp, 0.0)));
  }

  static QuantumState basis(BasisIndex x) {
    check_width(x.width());
    std::vector<Amplitude> amps(std::size_t{1} << x.width());
    amps[x.value()] = 1.0;
    return QuantumState(x.width(), std::move(amps));
  }

  /// Takes ownership of `amps`; the vector must already be normalized.
  static QuantumState from_amplitudes(std::vector<Amplitude> amps) {
    const unsigned n = width_for(amps.size());
    const double norm = l2_norm(amps);
    if (std::abs(norm - 1.0) > kInputNormTolerance) {
      throw InvalidArgumentError("amplitudes have norm " + std::to_string(norm));
    }
    return QuantumState(n, std::move(amps));
  }

  /// Rescales `amps` to unit norm. Throws on the zero vector.
  static QuantumState normalized(std::vector<Amplitude> amps) {
    const unsigned n = width_for(amps.size());
    const double norm = l2_norm(amps);
    if (norm == 0.0 || !std::isfinite(norm)) {
      throw InvalidArgumentError("cannot normalize a zero or non-finite vector");
    }
    for (auto& a : amps) a /= norm;
    return QuantumState(n, std::move(amps));
  }

  unsigned num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }
  double norm() const { return l2_norm(amps_); }

  friend bool operator==(const QuantumState&, const QuantumState&) = default;

 private:
  friend struct detail::StateAccess;

  QuantumState(unsigned n, std::vector<Amplitude> amps) : n_(n), amps_(std::move(amps)) {}

  static unsigned width_for(std::size_t size) {
    if (size < 2 || (size & (size - 1)) != 0) {
      throw DimensionError("amplitude count " + std::to_string(size) +
                           " is not a power of two >= 2");
    }
    const auto n = static_cast<unsigned>(std::countr_zero(size));
    check_width(n);
    return n;
  }

  static double l2_norm(std::span<const Amplitude> amps) {
    double sum = 0.0;
    for (const auto& a : amps) sum += std::norm(a);
    return std::sqrt(sum);
  }

  unsigned n_;
  std::vector<Amplitude> amps_;
};

namespace detail {
inline std::span<Amplitude> StateAccess::amplitudes(QuantumState& psi) { return psi.amps_; }
inline QuantumState StateAccess::adopt(unsigned n, std::vector<Amplitude> amps) {
  return QuantumState(n, std::move(amps));
}
}  // namespace detail

inline void check_same_width(const QuantumState& a, const QuantumState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("width mismatch: " + std::to_string(a.num_qubits()) + " vs " +
                         std::to_string(b.num_qubits()));
  }
}

/// <a|b> = sum_i conj(a_i) b_i.
inline Amplitude inner_product(const QuantumState& a, const QuantumState& b) {
  check_same_width(a, b);
  Amplitude sum{};
  const auto lhs = a.amplitudes();
  const auto rhs = b.amplitudes();
  for (std::size_t i = 0; i < lhs.size(); ++i) sum += std::conj(lhs[i]) * rhs[i];
  return sum;
}

/// ||a - b||, phase sensitive.
inline double state_distance(const QuantumState& a, const QuantumState& b) {
  check_same_width(a, b);
  double sum = 0.0;
  const auto lhs = a.amplitudes();
  const auto rhs = b.amplitudes();
  for (std::size_t i = 0; i < lhs.size(); ++i) sum += std::norm(lhs[i] - rhs[i]);
  return std::sqrt(sum);
}

/// |a> (x) |b>, with `a` occupying the high-order qubits.
inline QuantumState tensor_product(const QuantumState& a, const QuantumState& b) {
  const unsigned n = a.num_qubits() + b.num_qubits();
  check_width(n);
  std::vector<Amplitude> amps;
  amps.reserve(a.dimension() * b.dimension());
  for (const auto& x : a.amplitudes()) {
    for (const auto& y : b.amplitudes()) amps.push_back(x * y);
  }
  return detail::StateAccess::adopt(n, std::move(amps));
}

}  // namespace stateop
