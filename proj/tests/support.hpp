// Test-only reference implementations.
//
// Everything here builds operators as explicit 2^n x 2^n matrices straight
// from their definitions and applies them with a full matrix-vector product.
// None of it calls into the O(N) kernels under test.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "stateop/statevec.hpp"

namespace stateop::ref {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<cplx> data;  // row-major

  explicit DenseMatrix(std::size_t d) : dim(d), data(d * d) {}
  cplx& operator()(std::size_t r, std::size_t c) { return data[r * dim + c]; }
  cplx operator()(std::size_t r, std::size_t c) const { return data[r * dim + c]; }

  static DenseMatrix identity(std::size_t d) {
    DenseMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t k = 0; k < a.dim; ++k)
      for (std::size_t j = 0; j < a.dim; ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

inline Vec matvec(const DenseMatrix& m, const Vec& v) {
  Vec out(m.dim);
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.dim * b.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      for (std::size_t k = 0; k < b.dim; ++k)
        for (std::size_t l = 0; l < b.dim; ++l) out(i * b.dim + k, j * b.dim + l) = a(i, j) * b(k, l);
  return out;
}

/// H^(x)n as a Kronecker product of 2x2 Hadamards.
inline DenseMatrix hadamard_n(unsigned n) {
  DenseMatrix h(2);
  const double r = 1.0 / std::sqrt(2.0);
  h(0, 0) = r;
  h(0, 1) = r;
  h(1, 0) = r;
  h(1, 1) = -r;
  DenseMatrix out = DenseMatrix::identity(1);
  for (unsigned i = 0; i < n; ++i) out = kron(out, h);
  return out;
}

/// |s> = H^n |0...0>.
inline Vec uniform_vec(unsigned n) {
  Vec zero(std::size_t{1} << n);
  zero[0] = 1.0;
  return matvec(hadamard_n(n), zero);
}

/// 2|v><v| - 1.
inline DenseMatrix reflection_about(const Vec& v) {
  DenseMatrix m = DenseMatrix::identity(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = 2.0 * v[i] * std::conj(v[j]) - m(i, j);
  return m;
}

/// 1 - 2 sum_{x: f(x)=1} |x><x|, given the truth table of f.
inline DenseMatrix phase_oracle_matrix(const std::vector<bool>& truth) {
  DenseMatrix m = DenseMatrix::identity(truth.size());
  for (std::size_t x = 0; x < truth.size(); ++x) {
    if (truth[x]) m(x, x) -= 2.0;
  }
  return m;
}

/// Permutation |x>|y> -> |x>|y xor f(x)> on n+1 qubits, ancilla last.
inline DenseMatrix xor_oracle_matrix(const std::vector<bool>& truth) {
  DenseMatrix m(2 * truth.size());
  for (std::size_t x = 0; x < truth.size(); ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      const std::size_t from = 2 * x + y;
      const std::size_t to = 2 * x + (y ^ static_cast<std::size_t>(truth[x]));
      m(to, from) = 1.0;
    }
  }
  return m;
}

inline std::vector<bool> marked_truth(unsigned n, std::uint64_t omega) {
  std::vector<bool> t(std::size_t{1} << n, false);
  t[omega] = true;
  return t;
}

/// Clause-by-clause evaluation on an explicit bit string (variable i is the
/// i-th character from the left).
inline bool cnf_reference(const std::vector<std::vector<int>>& clauses, const std::string& bits) {
  for (const auto& clause : clauses) {
    bool any = false;
    for (int lit : clause) {
      const char c = bits.at(static_cast<std::size_t>(std::abs(lit)) - 1);
      any = any || ((c == '1') == (lit > 0));
    }
    if (!any) return false;
  }
  return true;
}

inline std::string to_bits(std::uint64_t x, unsigned n) {
  std::string s;
  for (unsigned i = 0; i < n; ++i) s.push_back(((x >> (n - 1 - i)) & 1U) ? '1' : '0');
  return s;
}

/// Final state of k plain Grover iterations, computed with dense matrices.
inline Vec dense_grover(unsigned n, std::uint64_t omega, unsigned k) {
  const Vec s = uniform_vec(n);
  const DenseMatrix g = multiply(reflection_about(s), phase_oracle_matrix(marked_truth(n, omega)));
  Vec v = s;
  for (unsigned i = 0; i < k; ++i) v = matvec(g, v);
  return v;
}

inline double distance(const Vec& a, std::span<const cplx> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i] - b[i]);
  return std::sqrt(sum);
}

inline Vec to_vec(const QuantumState& psi) {
  return Vec(psi.amplitudes().begin(), psi.amplitudes().end());
}

inline QuantumState random_state(unsigned n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Amplitude> amps(std::size_t{1} << n);
  for (auto& a : amps) a = {g(rng), g(rng)};
  return QuantumState::normalized(std::move(amps));
}

inline QuantumState random_real_state(unsigned n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Amplitude> amps(std::size_t{1} << n);
  for (auto& a : amps) a = {g(rng), 0.0};
  return QuantumState::normalized(std::move(amps));
}

/// sin^2((2k+1) theta) with sin theta = 2^(-n/2).
inline double grover_probability(unsigned n, double k) {
  const double theta = std::asin(1.0 / std::sqrt(std::ldexp(1.0, static_cast<int>(n))));
  const double s = std::sin((2.0 * k + 1.0) * theta);
  return s * s;
}

}  // namespace stateop::ref
