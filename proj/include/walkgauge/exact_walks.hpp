#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "walkgauge/error.hpp"
#include "walkgauge/graph.hpp"

namespace walkgauge {

using BigInt = boost::multiprecision::cpp_int;

/// Dense square matrix of big integers, row-major.
class IntMatrix {
 public:
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::vector<BigInt> diagonal() const {
    std::vector<BigInt> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
    return d;
  }

  BigInt trace() const {
    BigInt t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  std::size_t n_;
  std::vector<BigInt> data_;
};

/// Returns A·m where A is the adjacency matrix of g. Since A is 0/1, each
/// entry is a sum over neighbours and no multiplications are needed.
inline IntMatrix adjacency_times(const Graph& g, const IntMatrix& m) {
  const std::size_t n = g.vertex_count();
  IntMatrix out(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex l : g.neighbors(i))
      for (std::size_t j = 0; j < n; ++j) out(i, j) += m(l, j);
  return out;
}

/// diag(A^k) for k = 0..max_power, exactly. rows[k][i] counts closed walks
/// of length k at vertex i.
struct DiagonalSequence {
  std::size_t n = 0;
  std::vector<std::vector<BigInt>> rows;

  std::size_t max_power() const noexcept { return rows.empty() ? 0 : rows.size() - 1; }
  const std::vector<BigInt>& operator[](std::size_t k) const { return rows.at(k); }
};

inline DiagonalSequence diagonal_sequence(const Graph& g, std::size_t max_power) {
  const std::size_t n = g.vertex_count();
  require_dense_size(n);
  DiagonalSequence seq;
  seq.n = n;
  seq.rows.reserve(max_power + 1);
  IntMatrix power = IntMatrix::identity(n);
  seq.rows.push_back(power.diagonal());
  for (std::size_t k = 1; k <= max_power; ++k) {
    power = adjacency_times(g, power);
    seq.rows.push_back(power.diagonal());
  }
  return seq;
}

/// Outcome of the exact walk-regularity decision.
struct WalkRegularity {
  bool walk_regular = false;
  /// Smallest k with non-constant diag(A^k).
  std::optional<std::size_t> witness_k;
  /// Vertex 0 and the first vertex whose entry differs from it.
  std::optional<std::pair<Vertex, Vertex>> witness_vertices;
  /// Closed-walk counts of the two witness vertices at witness_k.
  std::optional<std::pair<BigInt, BigInt>> witness_counts;
  /// Highest power examined.
  std::size_t powers_checked = 0;
  /// The equivalence with constant exp-diagonals is stated for connected
  /// graphs; this is false when the caller should attach a warning.
  bool connected = true;
};

/// Decides walk-regularity exactly: diag(A^k) constant for k = 0..n-1.
/// Powers beyond n-1 are integer combinations of lower ones (Cayley–Hamilton),
/// so this bound is complete. Stops at the first non-constant diagonal.
inline WalkRegularity is_walk_regular_exact(const Graph& g) {
  const std::size_t n = g.vertex_count();
  require_dense_size(n);
  WalkRegularity result;
  result.connected = is_connected(g);

  IntMatrix power = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n - 1; ++k) {
    power = adjacency_times(g, power);
    result.powers_checked = k;
    for (Vertex i = 1; i < n; ++i) {
      if (power(i, i) != power(0, 0)) {
        result.walk_regular = false;
        result.witness_k = k;
        result.witness_vertices = std::pair<Vertex, Vertex>{0, i};
        result.witness_counts = std::pair<BigInt, BigInt>{power(0, 0), power(i, i)};
        return result;
      }
    }
  }
  result.walk_regular = true;
  return result;
}

/// Characteristic polynomial det(T·I − A) as coefficients p[0..n] with
/// p[n] = 1, via Faddeev–LeVerrier in exact integer arithmetic. Every
/// division in the recurrence is exact for integer matrices; a remainder
/// means an arithmetic bug and raises DiagnosticFailure.
inline std::vector<BigInt> characteristic_polynomial(const Graph& g) {
  const std::size_t n = g.vertex_count();
  require_dense_size(n);
  std::vector<BigInt> coeff(n + 1);
  coeff[n] = 1;
  IntMatrix am(n);  // A·M_{k-1}, with M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + p_{n-k+1} I
    IntMatrix m = std::move(am);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += coeff[n - k + 1];
    am = adjacency_times(g, m);
    const BigInt t = am.trace();
    if (t % k != 0)
      throw DiagnosticFailure("Faddeev-LeVerrier division not exact at step " + std::to_string(k));
    coeff[n - k] = -(t / k);
  }
  return coeff;
}

/// Verifies diag(A^n) = −Σ_{k<n} p_k diag(A^k) with p the characteristic
/// polynomial. This is a theorem, so a mismatch raises DiagnosticFailure
/// rather than returning false.
inline bool hamilton_reduction_check(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const std::vector<BigInt> p = characteristic_polynomial(g);
  const DiagonalSequence seq = diagonal_sequence(g, n);
  for (Vertex i = 0; i < n; ++i) {
    BigInt predicted = 0;
    for (std::size_t k = 0; k < n; ++k) predicted -= p[k] * seq[k][i];
    if (predicted != seq[n][i])
      throw DiagnosticFailure("Cayley-Hamilton reduction mismatch at vertex " + std::to_string(i) + ": " +
                              predicted.str() + " vs " + seq[n][i].str());
  }
  return true;
}

}  // namespace walkgauge
