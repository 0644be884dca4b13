#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "walkgauge/entropy.hpp"
#include "walkgauge/error.hpp"
#include "walkgauge/exact_walks.hpp"
#include "walkgauge/graph.hpp"
#include "walkgauge/io.hpp"

namespace walkgauge {

enum class Family {
  complete,
  cycle,
  path,
  star,
  complete_bipartite,
  circulant,
  hypercube,
  petersen,
  twin_k4e,
  edgeless,
};

inline constexpr std::size_t kMaxHypercubeDimension = 7;

/// A named graph family with its parameters. `n` is the vertex count for
/// complete, cycle, path, star (center plus n−1 leaves), circulant and
/// edgeless; `parts` holds the two side sizes of complete_bipartite;
/// `dimension` is for hypercube; `connections` is the circulant jump set.
struct FamilySpec {
  Family family = Family::complete;
  std::size_t n = 0;
  std::pair<std::size_t, std::size_t> parts{0, 0};
  std::size_t dimension = 0;
  std::vector<std::size_t> connections;

  static FamilySpec of(Family f, std::size_t n = 0) {
    FamilySpec s;
    s.family = f;
    s.n = n;
    return s;
  }
  static FamilySpec complete(std::size_t n) { return of(Family::complete, n); }
  static FamilySpec cycle(std::size_t n) { return of(Family::cycle, n); }
  static FamilySpec path(std::size_t n) { return of(Family::path, n); }
  static FamilySpec star(std::size_t n) { return of(Family::star, n); }
  static FamilySpec edgeless(std::size_t n) { return of(Family::edgeless, n); }
  static FamilySpec complete_bipartite(std::size_t m, std::size_t k) {
    FamilySpec s = of(Family::complete_bipartite);
    s.parts = {m, k};
    return s;
  }
  static FamilySpec circulant(std::size_t n, std::vector<std::size_t> jumps) {
    FamilySpec s = of(Family::circulant, n);
    s.connections = std::move(jumps);
    return s;
  }
  static FamilySpec hypercube(std::size_t d) {
    FamilySpec s = of(Family::hypercube);
    s.dimension = d;
    return s;
  }
  static FamilySpec petersen() { return of(Family::petersen); }
  static FamilySpec twin_k4e() { return of(Family::twin_k4e); }
};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::complete: return "complete";
    case Family::cycle: return "cycle";
    case Family::path: return "path";
    case Family::star: return "star";
    case Family::complete_bipartite: return "complete_bipartite";
    case Family::circulant: return "circulant";
    case Family::hypercube: return "hypercube";
    case Family::petersen: return "petersen";
    case Family::twin_k4e: return "twin_k4e";
    case Family::edgeless: return "edgeless";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::complete, Family::cycle, Family::path, Family::star, Family::complete_bipartite,
                   Family::circulant, Family::hypercube, Family::petersen, Family::twin_k4e, Family::edgeless})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

/// Short human-readable tag such as "cycle(6)" or "circulant(8,{1,2})".
inline std::string describe(const FamilySpec& s) {
  std::string out(family_name(s.family));
  switch (s.family) {
    case Family::complete_bipartite:
      return out + "(" + std::to_string(s.parts.first) + "," + std::to_string(s.parts.second) + ")";
    case Family::hypercube: return out + "(" + std::to_string(s.dimension) + ")";
    case Family::petersen:
    case Family::twin_k4e: return out;
    case Family::circulant: {
      out += "(" + std::to_string(s.n) + ",{";
      for (std::size_t k = 0; k < s.connections.size(); ++k)
        out += (k ? "," : "") + std::to_string(s.connections[k]);
      return out + "})";
    }
    default: return out + "(" + std::to_string(s.n) + ")";
  }
}

inline void validate(const FamilySpec& s) {
  auto need = [](bool ok, const std::string& why) {
    if (!ok) throw InvalidArgument(why);
  };
  switch (s.family) {
    case Family::complete:
    case Family::path:
    case Family::star:
    case Family::edgeless: need(s.n >= 1, std::string(family_name(s.family)) + " needs n >= 1"); break;
    case Family::cycle: need(s.n >= 3, "cycle needs n >= 3"); break;
    case Family::complete_bipartite:
      need(s.parts.first >= 1 && s.parts.second >= 1, "complete_bipartite needs both sides >= 1");
      break;
    case Family::circulant: {
      need(s.n >= 1, "circulant needs n >= 1");
      std::set<std::size_t> seen;
      for (std::size_t c : s.connections) {
        need(c >= 1 && c <= s.n / 2, "circulant connection " + std::to_string(c) + " outside {1..floor(n/2)}");
        need(seen.insert(c).second, "circulant connection " + std::to_string(c) + " repeated");
      }
      break;
    }
    case Family::hypercube:
      need(s.dimension <= kMaxHypercubeDimension, "hypercube dimension is capped at 7");
      break;
    case Family::petersen:
    case Family::twin_k4e: break;
  }
}

namespace detail {

inline Graph petersen_kneser() {
  // Vertices are the 2-subsets of {0..4} in lexicographic order; disjoint
  // subsets are adjacent.
  std::vector<std::pair<int, int>> subsets;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) subsets.emplace_back(a, b);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (std::size_t j = i + 1; j < subsets.size(); ++j) {
      const auto [a, b] = subsets[i];
      const auto [c, d] = subsets[j];
      if (a != c && a != d && b != c && b != d) edges.emplace_back(i, j);
    }
  return Graph(subsets.size(), std::move(edges));
}

inline Graph twin_k4_minus_edge() {
  // Copy t has a = 4t, b = 4t+1 (the non-adjacent pair) and c = 4t+2,
  // d = 4t+3 (the pair sharing both triangles). Bridges a₀–a₁ and b₀–b₁.
  std::vector<Edge> edges;
  for (std::size_t o : {0u, 4u}) {
    const std::size_t a = o, b = o + 1, c = o + 2, d = o + 3;
    edges.insert(edges.end(), {{a, c}, {a, d}, {b, c}, {b, d}, {c, d}});
  }
  edges.emplace_back(0, 4);
  edges.emplace_back(1, 5);
  return Graph(8, std::move(edges));
}

}  // namespace detail

/// Deterministic labeled member of a family.
inline Graph generate(const FamilySpec& s) {
  validate(s);
  std::vector<Edge> edges;
  switch (s.family) {
    case Family::complete:
      for (Vertex i = 0; i < s.n; ++i)
        for (Vertex j = i + 1; j < s.n; ++j) edges.emplace_back(i, j);
      return Graph(s.n, std::move(edges));
    case Family::cycle:
      for (Vertex i = 0; i < s.n; ++i) edges.emplace_back(i, (i + 1) % s.n);
      return Graph(s.n, std::move(edges));
    case Family::path:
      for (Vertex i = 0; i + 1 < s.n; ++i) edges.emplace_back(i, i + 1);
      return Graph(s.n, std::move(edges));
    case Family::star:
      for (Vertex i = 1; i < s.n; ++i) edges.emplace_back(0, i);
      return Graph(s.n, std::move(edges));
    case Family::edgeless: return Graph::edgeless(s.n);
    case Family::complete_bipartite: {
      const auto [m, k] = s.parts;
      for (Vertex i = 0; i < m; ++i)
        for (Vertex j = 0; j < k; ++j) edges.emplace_back(i, m + j);
      return Graph(m + k, std::move(edges));
    }
    case Family::circulant:
      for (Vertex i = 0; i < s.n; ++i)
        for (std::size_t c : s.connections) edges.emplace_back(i, (i + c) % s.n);
      return Graph(s.n, std::move(edges));
    case Family::hypercube: {
      const std::size_t n = std::size_t{1} << s.dimension;
      for (Vertex i = 0; i < n; ++i)
        for (std::size_t b = 0; b < s.dimension; ++b) {
          const Vertex j = i ^ (std::size_t{1} << b);
          if (i < j) edges.emplace_back(i, j);
        }
      return Graph(n, std::move(edges));
    }
    case Family::petersen: return detail::petersen_kneser();
    case Family::twin_k4e: return detail::twin_k4_minus_edge();
  }
  throw InvalidArgument("unknown family");
}

/// Ground-truth class of a family member, known from its symmetry.
inline WalkClass expected_class(const FamilySpec& s) {
  validate(s);
  switch (s.family) {
    case Family::complete:
    case Family::cycle:
    case Family::circulant:
    case Family::hypercube:
    case Family::petersen:
    case Family::edgeless: return WalkClass::walk_regular;
    case Family::complete_bipartite:
      return s.parts.first == s.parts.second ? WalkClass::walk_regular : WalkClass::non_regular;
    case Family::path:
    case Family::star: return s.n >= 3 ? WalkClass::non_regular : WalkClass::walk_regular;
    case Family::twin_k4e: return WalkClass::regular_not_walk_regular;
  }
  return WalkClass::non_regular;
}

inline constexpr std::size_t kMaxSearchN = 12;
inline constexpr std::size_t kMaxEnumerationN = 8;

/// Calls `visit` on every labeled regular graph on n vertices (of the given
/// degree, if set). This is exactly the regular subset of the upper-triangle
/// bitmask enumeration, produced by backtracking over pairs (i, j) in
/// graph6 bit order with degree pruning.
inline void for_each_regular_graph(std::size_t n, std::optional<std::size_t> degree,
                                   const std::function<void(const Graph&)>& visit) {
  if (n == 0) return;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) pairs.emplace_back(i, j);

  // Once a vertex's last pair has been decided its degree is final.
  std::vector<std::size_t> last_pair(n, 0);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    last_pair[pairs[k].first] = k;
    last_pair[pairs[k].second] = k;
  }

  const std::size_t lo = degree.value_or(0);
  const std::size_t hi = degree.value_or(n - 1);
  for (std::size_t d = lo; d <= hi && d < n; ++d) {
    if ((n * d) % 2 != 0) continue;
    std::vector<std::size_t> deg(n, 0);
    std::vector<std::size_t> remaining(n, n - 1);  // undecided pairs per vertex
    std::vector<Edge> chosen;

    std::function<void(std::size_t)> recurse = [&](std::size_t k) {
      if (k == pairs.size()) {
        visit(Graph(n, chosen));
        return;
      }
      const auto [i, j] = pairs[k];
      --remaining[i];
      --remaining[j];
      // Edge absent.
      if (deg[i] + remaining[i] >= d && deg[j] + remaining[j] >= d) recurse(k + 1);
      // Edge present.
      if (deg[i] < d && deg[j] < d) {
        ++deg[i];
        ++deg[j];
        chosen.emplace_back(i, j);
        recurse(k + 1);
        chosen.pop_back();
        --deg[i];
        --deg[j];
      }
      ++remaining[i];
      ++remaining[j];
    };
    if (n == 1) {
      if (d == 0) visit(Graph(1, {}));
      continue;
    }
    recurse(0);
  }
}

struct SearchResult {
  /// graph6 strings, sorted and deduplicated.
  std::vector<std::string> witnesses;
  std::size_t candidates = 0;
  std::size_t regular_candidates = 0;
};

/// Regular but not walk-regular graphs among the candidates. With no stream
/// every labeled graph on 1..max_n vertices is enumerated (max_n ≤ 8);
/// a stream is filtered to n ≤ max_n. Deduplication is by graph6 string,
/// not by isomorphism.
inline SearchResult search_regular_not_walk_regular(std::size_t max_n, std::optional<std::size_t> degree,
                                                    const std::vector<Graph>* stream = nullptr) {
  if (max_n > kMaxSearchN) throw InvalidArgument("search is limited to max_n <= 12");
  if (!stream && max_n > kMaxEnumerationN)
    throw InvalidArgument("built-in enumeration is limited to n <= 8; supply a candidate stream");

  SearchResult result;
  std::set<std::string> found;
  auto consider = [&](const Graph& g) {
    ++result.candidates;
    if (g.vertex_count() > max_n || !is_regular(g)) return;
    if (degree && g.degree(0) != *degree) return;
    ++result.regular_candidates;
    if (!is_walk_regular_exact(g).walk_regular) found.insert(emit_graph6(g));
  };
  if (stream) {
    for (const Graph& g : *stream) consider(g);
  } else {
    for (std::size_t n = 1; n <= max_n; ++n) for_each_regular_graph(n, degree, consider);
  }
  result.witnesses.assign(found.begin(), found.end());
  return result;
}

}  // namespace walkgauge
