// Decision functions f : {0,1}^n -> {0,1} and the classical enumerator.
//
// CNF variable i (1-based) is bit i-1 of the basis string, most significant
// first, so variable 1 is the leftmost character of BasisIndex::to_bitstring().

#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "stateop/errors.hpp"
#include "stateop/statevec.hpp"

namespace stateop {

/// Widest oracle brute_force_solutions will scan (1M evaluations).
inline constexpr unsigned kMaxEnumerationWidth = 20;

struct CnfFormula {
  unsigned num_vars = 0;
  std::vector<std::vector<int>> clauses;

  /// Assignment `x` over `num_vars` bits satisfies every clause.
  bool satisfied_by(std::uint64_t x) const {
    for (const auto& clause : clauses) {
      bool sat = false;
      for (int lit : clause) {
        const auto var = static_cast<unsigned>(std::abs(lit));
        const bool value = (x >> (num_vars - var)) & 1U;
        if (value == (lit > 0)) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
    return true;
  }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

namespace detail {

inline bool parse_int(std::string_view token, long long& out) {
  if (token.empty()) return false;
  std::size_t pos = 0;
  if (token[0] == '-' || token[0] == '+') pos = 1;
  if (pos == token.size()) return false;
  long long value = 0;
  for (; pos < token.size(); ++pos) {
    const char c = token[pos];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
    if (value > (1LL << 40)) return false;
  }
  out = token[0] == '-' ? -value : value;
  return true;
}

}  // namespace detail

/// Parses DIMACS CNF. Clauses may span lines and several may share a line;
/// a '%' line (SATLIB convention) ends the input.
inline CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula formula;
  std::optional<std::size_t> declared_clauses;
  std::vector<int> current;
  std::size_t line_no = 0;
  std::size_t current_start = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string token;
    if (!(tokens >> token)) continue;
    if (token[0] == 'c') continue;
    if (token == "%") break;
    if (token == "p") {
      if (declared_clauses) throw ParseError(line_no, "duplicate problem line");
      std::string format, vars_tok, clauses_tok, extra;
      if (!(tokens >> format >> vars_tok >> clauses_tok) || format != "cnf") {
        throw ParseError(line_no, "malformed problem line, expected 'p cnf <vars> <clauses>'");
      }
      if (tokens >> extra) throw ParseError(line_no, "trailing tokens on problem line");
      long long vars = 0;
      long long count = 0;
      if (!detail::parse_int(vars_tok, vars) || !detail::parse_int(clauses_tok, count) ||
          vars <= 0 || count < 0 || vars > 63) {
        throw ParseError(line_no, "problem line needs 1 <= vars <= 63 and clauses >= 0");
      }
      formula.num_vars = static_cast<unsigned>(vars);
      declared_clauses = static_cast<std::size_t>(count);
      continue;
    }
    if (!declared_clauses) throw ParseError(line_no, "clause data before problem line");

    do {
      long long lit = 0;
      if (!detail::parse_int(token, lit)) {
        throw ParseError(line_no, "expected integer literal, got '" + token + "'");
      }
      if (lit == 0) {
        if (current.empty()) throw ParseError(line_no, "empty clause");
        formula.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (static_cast<unsigned long long>(std::llabs(lit)) > formula.num_vars) {
        throw ParseError(line_no, "literal " + token + " exceeds declared " +
                                      std::to_string(formula.num_vars) + " variables");
      }
      if (current.empty()) current_start = line_no;
      current.push_back(static_cast<int>(lit));
    } while (tokens >> token);
  }

  if (!declared_clauses) throw ParseError(line_no, "missing problem line");
  if (!current.empty()) throw ParseError(current_start, "clause not terminated by 0");
  if (formula.clauses.size() != *declared_clauses) {
    throw ParseError(line_no, "header declares " + std::to_string(*declared_clauses) +
                                  " clauses, found " + std::to_string(formula.clauses.size()));
  }
  return formula;
}

inline CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

inline CnfFormula load_dimacs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_dimacs(in);
}

/// Black-box decision function plus a count of state-level applications.
///
/// evaluate() is read-only and may be called from any thread. The call
/// counter is atomic, so concurrent record_call() is safe.
class Oracle {
 public:
  enum class Kind { marked, cnf };

  static Oracle marked(BasisIndex omega) { return Oracle(omega.width(), omega); }

  static Oracle cnf(CnfFormula formula) {
    const unsigned n = formula.num_vars;
    if (n == 0 || n > 63) throw InvalidWidthError("CNF must have 1..63 variables");
    return Oracle(n, std::move(formula));
  }

  Oracle(Oracle&& other) noexcept
      : n_(other.n_), payload_(std::move(other.payload_)), calls_(other.calls_.load()) {}
  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;
  Oracle& operator=(Oracle&&) = delete;

  unsigned width() const noexcept { return n_; }
  Kind kind() const noexcept {
    return std::holds_alternative<BasisIndex>(payload_) ? Kind::marked : Kind::cnf;
  }
  const BasisIndex* marked_string() const noexcept { return std::get_if<BasisIndex>(&payload_); }
  const CnfFormula* formula() const noexcept { return std::get_if<CnfFormula>(&payload_); }

  /// f(x). Does not touch the call counter.
  bool evaluate(BasisIndex x) const {
    if (x.width() != n_) {
      throw DimensionError("oracle width " + std::to_string(n_) + ", input width " +
                           std::to_string(x.width()));
    }
    return predicate(x.value());
  }

  /// f on a raw index already known to be in range.
  bool predicate(std::uint64_t x) const noexcept {
    if (const auto* omega = marked_string()) return x == omega->value();
    return std::get<CnfFormula>(payload_).satisfied_by(x);
  }

  std::uint64_t call_count() const noexcept { return calls_.load(); }
  void record_call() const noexcept { calls_.fetch_add(1); }

 private:
  Oracle(unsigned n, std::variant<BasisIndex, CnfFormula> payload)
      : n_(n), payload_(std::move(payload)) {}

  unsigned n_;
  std::variant<BasisIndex, CnfFormula> payload_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

/// Every x with f(x) = 1, ascending. Classical scan; the call counter is untouched.
inline std::vector<BasisIndex> brute_force_solutions(const Oracle& oracle) {
  check_width(oracle.width(), kMaxEnumerationWidth);
  std::vector<BasisIndex> out;
  const std::uint64_t dim = std::uint64_t{1} << oracle.width();
  for (std::uint64_t x = 0; x < dim; ++x) {
    if (oracle.predicate(x)) out.emplace_back(x, oracle.width());
  }
  return out;
}

/// The unique solution, or UniquenessError naming how many were found.
inline BasisIndex require_unique_solution(const Oracle& oracle) {
  auto solutions = brute_force_solutions(oracle);
  if (solutions.size() != 1) throw UniquenessError(solutions.size());
  return solutions.front();
}

}  // namespace stateop
