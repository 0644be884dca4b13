#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "walkgauge/error.hpp"
#include "walkgauge/exact_walks.hpp"
#include "walkgauge/graph.hpp"
#include "walkgauge/spectral.hpp"

namespace walkgauge {

/// "S equals ln n" means a deficit at most this, in nats.
inline constexpr double kMaxEntropyTolerance = 1e-9;
/// Agreement between the direct and z-based entropy formulas.
inline constexpr double kIdentityTolerance = 1e-9;
/// Allowed negative slack in the Hadamard and Borwein–Girgensohn bounds.
inline constexpr double kInequalityTolerance = 1e-8;

/// x ln x with the 0 ln 0 = 0 convention.
inline double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

inline double shannon_entropy(std::span<const double> p) {
  double s = 0;
  for (double x : p) s -= xlogx(x);
  return s;
}

/// Population variance, dividing by the count.
inline double population_variance(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double acc = 0;
  for (double v : x) acc += (v - mean) * (v - mean);
  return acc / static_cast<double>(x.size());
}

/// σ_d²(M) = σ²(M₁₁..Mₙₙ) / Σ|Mᵢᵢ|. Throws on an all-zero diagonal.
inline double diagonal_variance(std::span<const double> diag) {
  double abs_sum = 0;
  for (double v : diag) abs_sum += std::abs(v);
  if (abs_sum == 0) throw InvalidArgument("diagonal variance needs a diagonal that is not all zero");
  return population_variance(diag) / abs_sum;
}

/// Borwein–Girgensohn constant: 2 for n ≤ 4, e(1 − 1/n) for n ≥ 5.
inline double bg_constant(std::size_t n) {
  if (n <= 4) return 2.0;
  return std::numbers::e * (1.0 - 1.0 / static_cast<double>(n));
}

struct BgCheck {
  double c_n = 0;
  /// Σ zᵢ e^{zᵢ}
  double lhs = 0;
  /// (c_n / n) Σ zᵢ²
  double rhs = 0;
  double slack = 0;
  /// Σ zᵢ ≥ −kInequalityTolerance; the bound is only asserted when true.
  bool hypothesis_met = false;

  bool holds() const { return !hypothesis_met || slack >= -kInequalityTolerance; }
};

inline BgCheck bg_bound_check(std::span<const double> z, std::size_t n) {
  BgCheck c;
  c.c_n = bg_constant(n);
  double sum = 0, sq = 0;
  for (double v : z) {
    sum += v;
    sq += v * v;
    c.lhs += v * std::exp(v);
  }
  c.rhs = c.c_n / static_cast<double>(n) * sq;
  c.slack = c.lhs - c.rhs;
  c.hypothesis_met = sum >= -kInequalityTolerance;
  return c;
}

/// Everything evaluated at one β.
struct EntropyPoint {
  double beta = 0;
  std::vector<double> p;
  /// −Σ pᵢ ln pᵢ
  double entropy = 0;
  /// ln Z − (1/Z) Σ zᵢ e^{zᵢ}, the second route to the same value.
  double entropy_via_z = 0;
  double ln_z = 0;
  /// σ_d²(e^{βA}) with the literal normalization Σ yᵢ. Grows without bound
  /// as β → ∞ unless the diagonal is constant; +inf past double range.
  double diag_variance = 0;
  /// σ_d² of the probability vector p = y / Z, i.e. σ²(p).
  double normalized_diag_variance = 0;
  /// Σ zᵢ
  double hadamard_slack = 0;
  double bg_slack = 0;
  bool bg_hypothesis_met = true;
  /// ln n − entropy
  double deficit = 0;
  bool limit_substituted = false;
};

namespace detail {

inline double z_route_entropy(const ExpDiagonal& d, const PartitionFunction& z) {
  const double ln_z = z.ln_value();
  double acc = 0;
  for (double zi : d.z) acc += zi * std::exp(zi - ln_z);
  return ln_z - acc;
}

/// Variance of diag(e^{βA}) scaled by e^{-2·log_scale}, assembled one
/// eigenspace at a time: yᵢ − ȳ = Σ_θ (P_θ(i,i) − m_θ/n) e^{βθ}. Eigenspaces
/// whose projector diagonal is constant to 1e-9 relative contribute exactly
/// zero, so walk-regular graphs give exactly zero at every β.
inline double scaled_diagonal_variance(const Spectrum& s, const ExpDiagonal& d) {
  const std::size_t n = s.n;
  std::vector<double> dev(n, 0.0), proj(n);
  const double scale = std::max(1.0, std::abs(s.top()));
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && std::abs(s.eigenvalues[end] - s.eigenvalues[start]) <= kEigenClusterTolerance * scale) ++end;
    double w;
    if (d.limit_substituted)
      w = start == 0 ? 1.0 : 0.0;
    else
      w = std::exp(d.beta * s.eigenvalues[start] - d.log_scale);
    if (w > 0) {
      std::fill(proj.begin(), proj.end(), 0.0);
      for (std::size_t j = start; j < end; ++j) {
        const auto q = s.column(j);
        for (std::size_t i = 0; i < n; ++i) proj[i] += q[i] * q[i];
      }
      const double mean = static_cast<double>(end - start) / static_cast<double>(n);
      double spread = 0;
      for (double x : proj) spread = std::max(spread, std::abs(x - mean));
      if (spread > kEigenClusterTolerance * mean)
        for (std::size_t i = 0; i < n; ++i) dev[i] += (proj[i] - mean) * w;
    }
    start = end;
  }
  double acc = 0;
  for (double x : dev) acc += x * x;
  return acc / static_cast<double>(n);
}

inline void require_beta(double beta) {
  if (!(beta >= 0) || std::isinf(beta)) throw InvalidArgument("beta must be a finite value >= 0");
}

}  // namespace detail

/// S^V(G, β) = ln Z − (1/Z) Σ zᵢ e^{zᵢ}, computed from z and ln Z only.
inline double entropy_via_z(const Spectrum& s, double beta) {
  detail::require_beta(beta);
  return detail::z_route_entropy(exp_diagonal(s, beta), partition_function(s, beta));
}

inline double entropy_via_z(const Graph& g, double beta) { return entropy_via_z(eigendecompose(g), beta); }

/// Walk entropy and its companion quantities at one β. The direct value is
/// cross-checked against entropy_via_z; disagreement beyond
/// kIdentityTolerance raises DiagnosticFailure.
inline EntropyPoint walk_entropy(const Spectrum& s, double beta) {
  detail::require_beta(beta);
  const std::size_t n = s.n;
  const ExpDiagonal d = exp_diagonal(s, beta);
  const PartitionFunction z = partition_function(s, beta);

  EntropyPoint pt;
  pt.beta = beta;
  pt.limit_substituted = d.limit_substituted;
  double total = 0;
  for (double v : d.scaled) total += v;
  pt.p.resize(n);
  for (std::size_t i = 0; i < n; ++i) pt.p[i] = d.scaled[i] / total;
  pt.entropy = shannon_entropy(pt.p);
  pt.deficit = std::log(static_cast<double>(n)) - pt.entropy;
  pt.ln_z = z.ln_value();
  pt.entropy_via_z = d.limit_substituted ? pt.entropy : detail::z_route_entropy(d, z);

  const double var_scaled = detail::scaled_diagonal_variance(s, d);
  pt.diag_variance = var_scaled > 0 ? std::exp(d.log_scale + std::log(var_scaled / total)) : 0.0;
  pt.normalized_diag_variance = var_scaled / (total * total);

  for (double zi : d.z) pt.hadamard_slack += zi;
  const BgCheck bg = bg_bound_check(d.z, n);
  pt.bg_slack = bg.slack;
  pt.bg_hypothesis_met = bg.hypothesis_met;

  if (std::abs(pt.entropy - pt.entropy_via_z) > kIdentityTolerance)
    throw DiagnosticFailure("entropy formulas disagree at beta=" + std::to_string(beta) + ": " +
                            std::to_string(pt.entropy) + " vs " + std::to_string(pt.entropy_via_z));
  return pt;
}

inline EntropyPoint walk_entropy(const Graph& g, double beta) { return walk_entropy(eigendecompose(g), beta); }

/// S^V(G, β→∞) = −Σ φ₁(i)² ln φ₁(i)² using the spectrum's Perron column.
/// For a repeated λ₁ the column is the canonical choice described on
/// Spectrum, which is uniform whenever the graph is regular.
inline double limit_infinity_entropy(const Spectrum& s) {
  double acc = 0;
  for (double x : s.perron()) acc -= xlogx(x * x);
  return acc;
}

/// The actual β→∞ limit of S^V: entropy of the top-eigenspace projector
/// diagonal divided by the multiplicity. Matches limit_infinity_entropy
/// whenever λ₁ is simple.
inline double limit_infinity_entropy_projector(const Spectrum& s) {
  std::vector<double> d = top_eigenspace_diagonal(s);
  for (double& x : d) x /= static_cast<double>(s.top_multiplicity);
  return shannon_entropy(d);
}

/// β values for a sweep.
inline std::vector<double> log_spaced_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0) || !(hi >= lo) || count == 0) throw InvalidArgument("log grid needs 0 < min <= max and count >= 1");
  if (count == 1) return {lo};
  std::vector<double> g(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < count; ++k)
    g[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

inline std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (!(hi >= lo) || count == 0) throw InvalidArgument("linear grid needs min <= max and count >= 1");
  if (count == 1) return {lo};
  std::vector<double> g(count);
  for (std::size_t k = 0; k < count; ++k)
    g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
  g.back() = hi;
  return g;
}

/// 41 log-spaced points on [1e-3, 40].
inline std::vector<double> default_grid() { return log_spaced_grid(1e-3, 40.0, 41); }

struct ProfileOptions {
  /// Trisection rounds around the grid argmax; 0 disables refinement.
  int refine_rounds = 0;
};

struct EntropyProfile {
  std::size_t n = 0;
  double ln_n = 0;
  std::vector<EntropyPoint> points;
  /// Extra (β, S) evaluations from refinement; not part of the grid.
  std::vector<std::pair<double, double>> refined;
  /// lim_{β→0} S^V = ln n.
  double limit_zero = 0;
  /// Perron-formula β→∞ limit.
  double limit_infinity = 0;
  /// Projector-based β→∞ limit; differs from limit_infinity only when λ₁
  /// is repeated.
  double limit_infinity_projector = 0;
  bool limit_ambiguous = false;
  bool connected = true;
  double grid_sup = 0;
  /// max(grid_sup, limit_zero, limit_infinity)
  double sup_estimate = 0;
  /// ln n − sup_estimate. A numeric estimate of the entropy gap, not a
  /// certified bound.
  double gap_estimate = 0;

  std::vector<double> grid() const {
    std::vector<double> g;
    g.reserve(points.size());
    for (const auto& p : points) g.push_back(p.beta);
    return g;
  }
  double max_deficit() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& p : points) m = std::max(m, p.deficit);
    return m;
  }
  double min_deficit() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : points) m = std::min(m, p.deficit);
    return m;
  }
  double limit_infinity_deficit() const { return ln_n - limit_infinity; }
};

inline void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw InvalidArgument("beta grid is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0) || std::isinf(grid[k])) throw InvalidArgument("beta grid values must be finite and > 0");
    if (k > 0 && !(grid[k] > grid[k - 1])) throw InvalidArgument("beta grid must be strictly increasing");
  }
}

inline EntropyProfile entropy_profile(const Spectrum& s, std::span<const double> grid, const ProfileOptions& opts = {}) {
  validate_grid(grid);
  EntropyProfile prof;
  prof.n = s.n;
  prof.ln_n = std::log(static_cast<double>(s.n));
  prof.connected = s.connected;
  prof.points.reserve(grid.size());
  for (double beta : grid) prof.points.push_back(walk_entropy(s, beta));

  prof.limit_zero = prof.ln_n;
  prof.limit_infinity = limit_infinity_entropy(s);
  prof.limit_infinity_projector = limit_infinity_entropy_projector(s);
  prof.limit_ambiguous = s.perron_ambiguous;

  std::size_t best = 0;
  for (std::size_t k = 1; k < prof.points.size(); ++k)
    if (prof.points[k].entropy > prof.points[best].entropy) best = k;
  prof.grid_sup = prof.points[best].entropy;

  if (opts.refine_rounds > 0 && grid.size() > 1) {
    double lo = grid[best == 0 ? 0 : best - 1];
    double hi = grid[best + 1 == grid.size() ? best : best + 1];
    double best_beta = grid[best];
    for (int round = 0; round < opts.refine_rounds; ++round) {
      const double a = std::log(lo), b = std::log(hi);
      for (double frac : {1.0 / 3.0, 2.0 / 3.0}) {
        const double beta = std::exp(a + (b - a) * frac);
        const double e = walk_entropy(s, beta).entropy;
        prof.refined.emplace_back(beta, e);
        if (e > prof.grid_sup) {
          prof.grid_sup = e;
          best_beta = beta;
        }
      }
      const double third = (b - a) / 3.0;
      const double c = std::log(best_beta);
      lo = std::exp(std::max(a, c - third));
      hi = std::exp(std::min(b, c + third));
    }
  }

  prof.sup_estimate = std::max({prof.grid_sup, prof.limit_zero, prof.limit_infinity});
  prof.gap_estimate = prof.ln_n - prof.sup_estimate;
  return prof;
}

inline EntropyProfile entropy_profile(const Graph& g, std::span<const double> grid, const ProfileOptions& opts = {}) {
  return entropy_profile(eigendecompose(g), grid, opts);
}

/// Three-way label: exactly one holds for every graph.
enum class WalkClass { walk_regular, regular_not_walk_regular, non_regular };

inline std::string_view to_string(WalkClass c) {
  switch (c) {
    case WalkClass::walk_regular: return "WalkRegular";
    case WalkClass::regular_not_walk_regular: return "RegularNotWalkRegular";
    case WalkClass::non_regular: return "NonRegular";
  }
  return "?";
}

struct Classification {
  WalkClass label = WalkClass::non_regular;
  bool regular = false;
  WalkRegularity exact;
  EntropyProfile profile;
  double deficit_at_one = 0;
  std::vector<std::string> warnings;
};

/// Integers decide the label, numerics corroborate it:
///   WalkRegular: every grid deficit ≤ kMaxEntropyTolerance.
///   RegularNotWalkRegular: deficits ≥ −1e-12, some grid deficit above
///     kMaxEntropyTolerance, deficit at the smallest grid β below 1e-3 and
///     the β→∞ limit deficit below 1e-3.
///   NonRegular: β→∞ limit deficit > 1e-12.
/// A contradiction raises DiagnosticFailure.
inline Classification classify(const Graph& g, std::span<const double> grid) {
  Classification c;
  c.regular = is_regular(g);
  c.exact = is_walk_regular_exact(g);
  if (!c.regular)
    c.label = WalkClass::non_regular;
  else
    c.label = c.exact.walk_regular ? WalkClass::walk_regular : WalkClass::regular_not_walk_regular;

  const Spectrum s = eigendecompose(g);
  c.profile = entropy_profile(s, grid, ProfileOptions{.refine_rounds = 3});
  c.deficit_at_one = walk_entropy(s, 1.0).deficit;
  if (!c.exact.connected) c.warnings.emplace_back("graph is disconnected; walk-regularity equivalences assume connectivity");
  if (c.profile.limit_ambiguous)
    c.warnings.emplace_back("top eigenvalue is repeated; beta->infinity limit uses the canonical Perron choice");

  const auto& prof = c.profile;
  auto fail = [&](const std::string& why) {
    throw DiagnosticFailure(std::string("classification ") + std::string(to_string(c.label)) +
                            " contradicted by entropy profile: " + why);
  };
  switch (c.label) {
    case WalkClass::walk_regular:
      if (prof.max_deficit() > kMaxEntropyTolerance)
        fail("max deficit " + std::to_string(prof.max_deficit()) + " > 1e-9");
      break;
    case WalkClass::regular_not_walk_regular:
      if (prof.min_deficit() < -1e-12) fail("negative deficit " + std::to_string(prof.min_deficit()));
      if (prof.max_deficit() <= kMaxEntropyTolerance) fail("entropy is maximal on the whole grid");
      if (prof.points.front().deficit >= 1e-3) fail("deficit at smallest beta is not small");
      if (prof.limit_infinity_deficit() >= 1e-3) fail("beta->infinity limit deficit is not small");
      break;
    case WalkClass::non_regular:
      if (prof.limit_infinity_deficit() <= 1e-12) fail("beta->infinity limit reaches ln n");
      break;
  }
  return c;
}

inline Classification classify(const Graph& g) { return classify(g, default_grid()); }

/// Both sides of: walk-regular ⇔ S^V(G, 1) = ln n.
struct EquivalenceReport {
  bool exact_walk_regular = false;
  std::optional<std::size_t> witness_k;
  double deficit_at_one = 0;
  bool numeric_max_entropy = false;
  bool agree = false;
  bool connected = true;
};

inline EquivalenceReport equivalence_report(const Graph& g) {
  EquivalenceReport r;
  const WalkRegularity exact = is_walk_regular_exact(g);
  r.exact_walk_regular = exact.walk_regular;
  r.witness_k = exact.witness_k;
  r.connected = exact.connected;
  r.deficit_at_one = walk_entropy(g, 1.0).deficit;
  r.numeric_max_entropy = r.deficit_at_one <= kMaxEntropyTolerance;
  r.agree = r.exact_walk_regular == r.numeric_max_entropy;
  return r;
}

/// As equivalence_report, but a disagreement raises DiagnosticFailure.
inline EquivalenceReport equivalence_check(const Graph& g) {
  EquivalenceReport r = equivalence_report(g);
  if (!r.agree)
    throw DiagnosticFailure("walk-regularity (" + std::string(r.exact_walk_regular ? "true" : "false") +
                            ") disagrees with max entropy at beta=1 (deficit " + std::to_string(r.deficit_at_one) + ")");
  return r;
}

struct SigmaDPoint {
  double beta = 0;
  double sigma_d2 = 0;
  double normalized = 0;
};

struct SigmaDProfile {
  std::vector<SigmaDPoint> points;
  /// Smallest normalized σ_d² on the grid, reported for non-regular graphs.
  std::optional<double> floor;
};

/// σ_d² of the exponential diagonal across a grid, with the corroborating
/// assertions for the regular-but-not-walk-regular and non-regular cases.
/// The decay check uses the Z-normalized variance, whose β→∞ limit is the
/// variance of φ₁²; the literal σ_d² diverges for any non-constant diagonal.
inline SigmaDProfile sigma_d_profile(const Graph& g, std::span<const double> grid) {
  validate_grid(grid);
  const Spectrum s = eigendecompose(g);
  SigmaDProfile out;
  for (double beta : grid) {
    const EntropyPoint pt = walk_entropy(s, beta);
    out.points.push_back({beta, pt.diag_variance, pt.normalized_diag_variance});
  }
  if (g.edge_count() == 0) return out;

  const bool regular = is_regular(g);
  if (regular && !is_walk_regular_exact(g).walk_regular) {
    for (const auto& p : out.points)
      if (!(p.sigma_d2 > 0))
        throw DiagnosticFailure("sigma_d^2 vanished at beta=" + std::to_string(p.beta) + " for a non-walk-regular graph");
    if (s.connected && grid.back() >= 40.0) {
      auto peak = std::max_element(out.points.begin(), out.points.end(),
                                   [](const auto& a, const auto& b) { return a.normalized < b.normalized; });
      if (!(out.points.back().normalized < peak->normalized * 1e-2))
        throw DiagnosticFailure("normalized sigma_d^2 does not decay at large beta");
    }
  } else if (!regular) {
    double floor = std::numeric_limits<double>::infinity();
    for (const auto& p : out.points) floor = std::min(floor, p.normalized);
    out.floor = floor;
    if (s.connected && !(floor > 0)) throw DiagnosticFailure("normalized sigma_d^2 vanished for a non-regular graph");
  }
  return out;
}

}  // namespace walkgauge
