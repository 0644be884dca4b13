#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "walkgauge/entropy.hpp"
#include "walkgauge/exact_walks.hpp"
#include "walkgauge/graph.hpp"
#include "walkgauge/report.hpp"
#include "walkgauge/spectral.hpp"

namespace walkgauge {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

/// Runs the invariant battery on one graph over a β grid. Never throws for
/// a failed check; each failure is reported in its CheckResult.
inline std::vector<CheckResult> verify_invariants(const Graph& g, std::span<const double> grid) {
  validate_grid(grid);
  std::vector<CheckResult> out;
  const Spectrum s = eigendecompose(g);
  const double ln_n = std::log(static_cast<double>(g.vertex_count()));

  CheckResult identity{"two_formula_identity", true, {}}, bound{"max_entropy_bound", true, {}}, probs{"probability_vector", true, {}},
      hadamard{"hadamard", true, {}}, bg{"borwein_girgensohn", true, {}};
  double worst_identity = 0, min_p = INFINITY, worst_hadamard = INFINITY, worst_bg = INFINITY, worst_bound = -INFINITY;
  for (double beta : grid) {
    const ExpDiagonal d = exp_diagonal(s, beta);
    double total = 0;
    for (double v : d.scaled) total += v;
    std::vector<double> p(d.scaled.size());
    double psum = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = d.scaled[i] / total;
      psum += p[i];
      min_p = std::min(min_p, p[i]);
      if (!(p[i] > 0) && probs.passed) {
        probs.passed = false;
        probs.detail = "p_" + std::to_string(i) + " = 0 at beta=" + format_number(beta, 6);
      }
    }
    if (std::abs(psum - 1) > 1e-12 && probs.passed) {
      probs.passed = false;
      probs.detail = "sum p = " + format_number(psum) + " at beta=" + format_number(beta, 6);
    }
    const double direct = shannon_entropy(p);
    if (!d.limit_substituted) {
      const double via_z = entropy_via_z(s, beta);
      const double diff = std::abs(direct - via_z);
      worst_identity = std::max(worst_identity, diff);
      if (diff > kIdentityTolerance && identity.passed) {
        identity.passed = false;
        identity.detail = "|S - S_z| = " + format_number(diff, 6) + " at beta=" + format_number(beta, 6);
      }
    }
    worst_bound = std::max(worst_bound, direct - ln_n);
    if (direct > ln_n + 1e-12 && bound.passed) {
      bound.passed = false;
      bound.detail = "S exceeds ln n by " + format_number(direct - ln_n, 6) + " at beta=" + format_number(beta, 6);
    }
    double zsum = 0;
    for (double zi : d.z) zsum += zi;
    worst_hadamard = std::min(worst_hadamard, zsum);
    if (zsum < -kInequalityTolerance && hadamard.passed) {
      hadamard.passed = false;
      hadamard.detail = "sum z = " + format_number(zsum, 6) + " at beta=" + format_number(beta, 6);
    }
    const BgCheck c = bg_bound_check(d.z, g.vertex_count());
    if (c.hypothesis_met) {
      worst_bg = std::min(worst_bg, c.slack);
      if (!c.holds() && bg.passed) {
        bg.passed = false;
        bg.detail = "slack " + format_number(c.slack, 6) + " at beta=" + format_number(beta, 6);
      }
    }
  }
  if (identity.passed) identity.detail = "max |S - S_z| = " + format_number(worst_identity, 3);
  if (bound.passed) bound.detail = "max S - ln n = " + format_number(worst_bound, 3);
  if (probs.passed) probs.detail = "min p = " + format_number(min_p, 6);
  if (hadamard.passed) hadamard.detail = "min sum z = " + format_number(worst_hadamard, 6);
  if (bg.passed) bg.detail = "min slack = " + format_number(worst_bg, 6);
  out.push_back(identity);
  out.push_back(bound);
  out.push_back(probs);
  out.push_back(hadamard);
  out.push_back(bg);

  const EquivalenceReport eq = equivalence_report(g);
  CheckResult bicond{"walk_regular_iff_max_entropy", eq.agree,
                     std::string("(exact=") + (eq.exact_walk_regular ? "true" : "false") +
                         ", max_entropy_at_beta_1=" + (eq.numeric_max_entropy ? "true" : "false") +
                         ", deficit=" + format_number(eq.deficit_at_one, 6) + ")"};
  if (!eq.connected) bicond.detail += " [warning: disconnected graph]";
  out.push_back(bicond);

  const EntropyPoint at_one = walk_entropy(s, 1.0);
  const bool sigma_zero = at_one.diag_variance <= 1e-12;
  out.push_back({"sigma_d_consistency", sigma_zero == eq.exact_walk_regular,
                 "sigma_d2(beta=1) = " + format_number(at_one.diag_variance, 6)});

  CheckResult ch{"cayley_hamilton_reduction", true, {}};
  try {
    hamilton_reduction_check(g);
    ch.detail = "diag(A^n) matches characteristic-polynomial combination";
  } catch (const DiagnosticFailure& e) {
    ch.passed = false;
    ch.detail = e.what();
  }
  out.push_back(ch);

  CheckResult cls{"classification_corroboration", true, {}};
  try {
    cls.detail = std::string(to_string(classify(g, grid).label));
  } catch (const DiagnosticFailure& e) {
    cls.passed = false;
    cls.detail = e.what();
  }
  out.push_back(cls);
  return out;
}

}  // namespace walkgauge
