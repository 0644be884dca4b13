#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "walkgauge/error.hpp"
#include "walkgauge/graph.hpp"

namespace walkgauge {

/// Eigenpairs of a real symmetric matrix. Column j of `vectors` (stored
/// contiguously at offset j*n) pairs with values[j]; values are descending.
template <std::floating_point T>
struct SymmetricEigen {
  std::size_t n = 0;
  std::vector<T> values;
  std::vector<T> vectors;
  int sweeps = 0;
};

struct JacobiOptions {
  /// Stop when ‖offdiag‖_F < tolerance·‖A‖_F.
  double tolerance = 1e-13;
  int max_sweeps = 50;
};

/// Cyclic Jacobi eigensolver for a symmetric row-major matrix. Sweeps visit
/// (p, q) pairs in fixed row order, so results are deterministic.
template <std::floating_point T>
SymmetricEigen<T> jacobi_eigen(std::vector<T> a, std::size_t n, const JacobiOptions& opts = {}) {
  if (a.size() != n * n) throw InvalidArgument("matrix storage does not match n");
  auto at = [&](std::size_t i, std::size_t j) -> T& { return a[i * n + j]; };

  // v is stored row-major here and transposed into columns at the end.
  std::vector<T> v(n * n, T(0));
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = T(1);

  T frob = 0;
  for (T x : a) frob += x * x;
  frob = std::sqrt(frob);
  const T threshold = static_cast<T>(opts.tolerance) * frob;

  auto off_norm = [&] {
    T s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += at(i, j) * at(i, j);
    return std::sqrt(s);
  };

  SymmetricEigen<T> out;
  out.n = n;
  T off = off_norm();
  int sweep = 0;
  while (off >= threshold && frob > 0) {
    if (sweep == opts.max_sweeps)
      throw ConvergenceError("Jacobi did not converge after " + std::to_string(opts.max_sweeps) +
                             " sweeps; off-diagonal norm " + std::to_string(static_cast<double>(off)));
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = at(p, q);
        if (apq == T(0)) continue;
        const T theta = (at(q, q) - at(p, p)) / (2 * apq);
        T t;
        if (std::abs(theta) > T(1e150)) {
          t = T(1) / (2 * theta);
        } else {
          t = (theta >= 0 ? T(1) : T(-1)) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        }
        const T c = T(1) / std::sqrt(t * t + 1);
        const T s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const T akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = at(q, p) = T(0);
        for (std::size_t k = 0; k < n; ++k) {
          const T vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
    off = off_norm();
  }
  out.sweeps = sweep;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return at(x, x) > at(y, y); });
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = at(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors[j * n + i] = v[i * n + order[j]];
  }
  return out;
}

/// Eigenvalues tied to λ₁ within this relative tolerance form the top
/// eigenspace.
inline constexpr double kEigenClusterTolerance = 1e-9;

/// Above this β the exponential diagonal is replaced by its β→∞ limit.
inline constexpr double kBetaCap = 1e4;

/// Adjacency spectrum with a canonical Perron column.
struct Spectrum {
  std::size_t n = 0;
  /// Descending.
  std::vector<double> eigenvalues;
  /// Column-major: column j is eigenvectors[j*n .. j*n+n).
  std::vector<double> eigenvectors;
  bool connected = true;
  /// Number of eigenvalues tied with λ₁.
  std::size_t top_multiplicity = 1;
  /// True when λ₁ is repeated and column 0 was chosen by convention (the
  /// normalized projection of the all-ones vector onto the top eigenspace).
  bool perron_ambiguous = false;
  int sweeps = 0;

  double vector_entry(std::size_t i, std::size_t j) const { return eigenvectors[j * n + i]; }
  std::span<const double> column(std::size_t j) const { return {eigenvectors.data() + j * n, n}; }
  std::span<const double> perron() const { return column(0); }
  double top() const { return eigenvalues.front(); }

  /// λ₁ minus the largest eigenvalue outside the top cluster; 0 when every
  /// eigenvalue is tied with λ₁.
  double spectral_gap() const {
    return top_multiplicity < n ? eigenvalues[0] - eigenvalues[top_multiplicity] : 0.0;
  }
};

namespace detail {

inline bool tied_with_top(double lambda, double top) {
  return top - lambda <= kEigenClusterTolerance * std::max(1.0, std::abs(top));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool matrix_connected(const AdjacencyMatrix& a) {
  const std::size_t n = a.size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < n; ++w)
      if (a(v, w) && !seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == n;
}

/// Picks column 0 inside a repeated top eigenspace: the projection of the
/// all-ones vector, then re-orthonormalizes the rest of the eigenspace.
inline void canonicalize_top_eigenspace(Spectrum& s) {
  const std::size_t n = s.n, m = s.top_multiplicity;
  std::vector<double> u(n, 0.0);
  std::vector<double> weight(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto q = s.column(j);
    weight[j] = std::accumulate(q.begin(), q.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) u[i] += weight[j] * q[i];
  }
  const double norm = std::sqrt(dot(u, u));
  if (norm < 1e-8) return;
  for (double& x : u) x /= norm;

  // Drop the column most aligned with u; the remaining m-1 together with u
  // span the eigenspace with a well-conditioned change of basis.
  std::size_t drop = 0;
  for (std::size_t j = 1; j < m; ++j)
    if (std::abs(weight[j]) > std::abs(weight[drop])) drop = j;

  std::vector<std::vector<double>> basis{u};
  for (std::size_t j = 0; j < m; ++j) {
    if (j == drop) continue;
    const auto q = s.column(j);
    std::vector<double> r(q.begin(), q.end());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const double c = dot(r, b);
        for (std::size_t i = 0; i < n; ++i) r[i] -= c * b[i];
      }
    const double rn = std::sqrt(dot(r, r));
    for (double& x : r) x /= rn;
    basis.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < m; ++j)
    std::copy(basis[j].begin(), basis[j].end(), s.eigenvectors.begin() + static_cast<std::ptrdiff_t>(j * n));
}

}  // namespace detail

/// Eigendecomposition of an adjacency matrix by cyclic Jacobi.
///
/// Column 0 is the Perron vector, signed so its largest-magnitude entry is
/// positive and clamped to be non-negative. When λ₁ is repeated the column
/// is canonicalized (see Spectrum::perron_ambiguous).
inline Spectrum eigendecompose(const AdjacencyMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) throw InvalidArgument("graph must have >= 1 vertex");
  require_dense_size(n);
  std::vector<double> dense(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dense[i * n + j] = a(i, j);

  auto eig = jacobi_eigen<double>(std::move(dense), n);
  Spectrum s;
  s.n = n;
  s.eigenvalues = std::move(eig.values);
  s.eigenvectors = std::move(eig.vectors);
  s.sweeps = eig.sweeps;
  s.connected = detail::matrix_connected(a);
  s.top_multiplicity = 1;
  while (s.top_multiplicity < n && detail::tied_with_top(s.eigenvalues[s.top_multiplicity], s.eigenvalues[0]))
    ++s.top_multiplicity;
  // Tied eigenvalues are set exactly equal so downstream shifts see no
  // spurious splitting.
  for (std::size_t j = 1; j < s.top_multiplicity; ++j) s.eigenvalues[j] = s.eigenvalues[0];

  if (s.top_multiplicity > 1) {
    s.perron_ambiguous = true;
    detail::canonicalize_top_eigenspace(s);
  }

  auto perron = std::span<double>(s.eigenvectors.data(), n);
  std::size_t largest = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(perron[i]) > std::abs(perron[largest])) largest = i;
  if (perron[largest] < 0)
    for (double& x : perron) x = -x;
  for (double& x : perron) {
    if (x < -1e-10)
      throw DiagnosticFailure("Perron vector has a negative entry " + std::to_string(x));
    if (x < 0) x = 0;
  }
  return s;
}

inline Spectrum eigendecompose(const Graph& g) { return eigendecompose(g.adjacency_matrix()); }

/// Whether exp-diagonal values are carried relative to e^{βλ₁}.
enum class Shift { top_eigenvalue, none };

/// Diagonal of e^{βA}. Values are stored scaled: y_i = e^{log_scale}·scaled[i].
struct ExpDiagonal {
  double beta = 0;
  double log_scale = 0;
  std::vector<double> scaled;
  /// z_i = ln y_i, computed per vertex by log-sum-exp so it stays finite
  /// for any β.
  std::vector<double> z;
  /// β exceeded kBetaCap and the limit form was used for `scaled`.
  bool limit_substituted = false;

  /// Unscaled values; overflow to +inf once βλ₁ passes ~709.
  std::vector<double> y() const {
    std::vector<double> out(scaled.size());
    const double f = std::exp(log_scale);
    for (std::size_t i = 0; i < scaled.size(); ++i) out[i] = f * scaled[i];
    return out;
  }
};

inline ExpDiagonal exp_diagonal(const Spectrum& s, double beta, Shift shift = Shift::top_eigenvalue) {
  if (!(beta >= 0)) throw InvalidArgument("beta must be >= 0");
  const std::size_t n = s.n;
  ExpDiagonal out;
  out.beta = beta;
  out.log_scale = shift == Shift::top_eigenvalue ? beta * s.top() : 0.0;
  out.scaled.assign(n, 0.0);
  out.z.assign(n, 0.0);

  std::vector<double> weight(n);
  if (beta > kBetaCap) {
    out.limit_substituted = true;
    for (std::size_t j = 0; j < n; ++j) weight[j] = j < s.top_multiplicity ? 1.0 : 0.0;
  } else {
    for (std::size_t j = 0; j < n; ++j) weight[j] = std::exp(beta * s.eigenvalues[j] - out.log_scale);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (weight[j] == 0) continue;
    const auto q = s.column(j);
    for (std::size_t i = 0; i < n; ++i) out.scaled[i] += q[i] * q[i] * weight[j];
  }

  for (std::size_t i = 0; i < n; ++i) {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      const double q = s.vector_entry(i, j);
      if (q != 0) peak = std::max(peak, beta * s.eigenvalues[j] + 2 * std::log(std::abs(q)));
    }
    double acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double q = s.vector_entry(i, j);
      if (q != 0) acc += std::exp(beta * s.eigenvalues[j] + 2 * std::log(std::abs(q)) - peak);
    }
    out.z[i] = peak + std::log(acc);
  }
  return out;
}

/// Z = tr(e^{βA}) = Σ_j e^{βλ_j}, carried as e^{log_scale}·scaled_sum.
struct PartitionFunction {
  double log_scale = 0;
  double scaled_sum = 0;

  double ln_value() const { return log_scale + std::log(scaled_sum); }
  double value() const { return std::exp(ln_value()); }
};

inline PartitionFunction partition_function(const Spectrum& s, double beta, Shift shift = Shift::top_eigenvalue) {
  if (!(beta >= 0)) throw InvalidArgument("beta must be >= 0");
  PartitionFunction z;
  z.log_scale = shift == Shift::top_eigenvalue ? beta * s.top() : 0.0;
  for (double lambda : s.eigenvalues) z.scaled_sum += std::exp(beta * lambda - z.log_scale);
  return z;
}

/// SC(i) = (e^A)_ii.
inline std::vector<double> subgraph_centrality(const Spectrum& s) { return exp_diagonal(s, 1.0).y(); }

/// Diagonal of the orthogonal projector onto the top eigenspace. Equals
/// φ₁² when λ₁ is simple.
inline std::vector<double> top_eigenspace_diagonal(const Spectrum& s) {
  std::vector<double> d(s.n, 0.0);
  for (std::size_t j = 0; j < s.top_multiplicity; ++j) {
    const auto q = s.column(j);
    for (std::size_t i = 0; i < s.n; ++i) d[i] += q[i] * q[i];
  }
  return d;
}

}  // namespace walkgauge
