#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "walkgauge/entropy.hpp"
#include "walkgauge/exact_walks.hpp"

namespace walkgauge {

/// Fixed decimal formatting: %.{digits}g, with "inf", "-inf" and "nan"
/// spelled out.
inline std::string format_number(double x, int digits = 17) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline constexpr const char* kProfileCsvHeader = "beta,entropy,deficit,ln_Z,sigma_d2,hadamard_slack,bg_slack";

/// EntropyProfile as CSV: header, one row per grid point, then the β→0 and
/// β→∞ limit rows (beta = 0 and beta = inf). Quantities undefined at a
/// limit are written as nan.
inline std::string profile_to_csv(const EntropyProfile& prof, int digits = 17) {
  std::ostringstream out;
  auto f = [digits](double x) { return format_number(x, digits); };
  out << kProfileCsvHeader << '\n';
  for (const auto& p : prof.points)
    out << f(p.beta) << ',' << f(p.entropy) << ',' << f(p.deficit) << ',' << f(p.ln_z) << ',' << f(p.diag_variance)
        << ',' << f(p.hadamard_slack) << ',' << f(p.bg_slack) << '\n';
  // β→0: e^{βA} → I, so y = 1, z = 0 and every slack vanishes.
  out << "0," << f(prof.limit_zero) << ',' << f(0.0) << ',' << f(prof.ln_n) << ',' << f(0.0) << ',' << f(0.0) << ','
      << f(0.0) << '\n';
  out << "inf," << f(prof.limit_infinity) << ',' << f(prof.limit_infinity_deficit()) << ",inf,nan,nan,nan\n";
  return out.str();
}

inline nlohmann::json to_json(const EntropyPoint& p) {
  return {{"beta", p.beta},
          {"entropy", p.entropy},
          {"entropy_via_z", p.entropy_via_z},
          {"deficit", p.deficit},
          {"ln_Z", p.ln_z},
          {"sigma_d2", std::isfinite(p.diag_variance) ? nlohmann::json(p.diag_variance) : nlohmann::json(nullptr)},
          {"sigma_d2_normalized", p.normalized_diag_variance},
          {"hadamard_slack", p.hadamard_slack},
          {"bg_slack", std::isfinite(p.bg_slack) ? nlohmann::json(p.bg_slack) : nlohmann::json(nullptr)},
          {"bg_hypothesis_met", p.bg_hypothesis_met},
          {"p", p.p}};
}

inline nlohmann::json to_json(const EntropyProfile& prof) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : prof.points) points.push_back(to_json(p));
  return {{"n", prof.n},
          {"ln_n", prof.ln_n},
          {"connected", prof.connected},
          {"points", points},
          {"limit_zero", prof.limit_zero},
          {"limit_infinity", prof.limit_infinity},
          {"limit_infinity_projector", prof.limit_infinity_projector},
          {"limit_ambiguous", prof.limit_ambiguous},
          {"grid_sup", prof.grid_sup},
          {"sup_estimate", prof.sup_estimate},
          {"gap_estimate", prof.gap_estimate},
          {"gap_estimate_note", "numeric estimate over the evaluated grid and both limits, not a certified bound"}};
}

inline nlohmann::json to_json(const WalkRegularity& w) {
  nlohmann::json j = {{"walk_regular", w.walk_regular},
                      {"powers_checked", w.powers_checked},
                      {"connected", w.connected},
                      {"witness_k", nullptr},
                      {"witness_vertices", nullptr}};
  if (w.witness_k) j["witness_k"] = *w.witness_k;
  if (w.witness_vertices) j["witness_vertices"] = {w.witness_vertices->first, w.witness_vertices->second};
  if (w.witness_counts) j["witness_counts"] = {w.witness_counts->first.str(), w.witness_counts->second.str()};
  if (!w.connected) j["warning"] = "graph is disconnected; walk-regularity equivalences assume connectivity";
  return j;
}

inline nlohmann::json to_json(const Classification& c) {
  return {{"class", std::string(to_string(c.label))},
          {"regular", c.regular},
          {"exact", to_json(c.exact)},
          {"deficit_at_beta_1", c.deficit_at_one},
          {"gap_estimate", c.profile.gap_estimate},
          {"limit_infinity_deficit", c.profile.limit_infinity_deficit()},
          {"warnings", c.warnings}};
}

inline nlohmann::json to_json(const EquivalenceReport& r) {
  nlohmann::json j = {{"exact_walk_regular", r.exact_walk_regular},
                      {"deficit_at_beta_1", r.deficit_at_one},
                      {"numeric_max_entropy", r.numeric_max_entropy},
                      {"agree", r.agree},
                      {"connected", r.connected}};
  if (r.witness_k) j["witness_k"] = *r.witness_k;
  return j;
}

}  // namespace walkgauge
