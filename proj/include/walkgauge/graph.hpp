#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "walkgauge/error.hpp"

namespace walkgauge {

using Vertex = std::size_t;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Dense n×n 0/1 adjacency matrix, row-major.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint8_t value) { entries_[i * n_ + j] = value; }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  std::size_t trace() const {
    std::size_t t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> entries_;
};

/// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  /// Builds a graph from an edge collection. Duplicate pairs collapse.
  /// Throws InvalidArgument on n == 0, self-loops, or out-of-range endpoints.
  Graph(std::size_t n, std::vector<Edge> edges, std::vector<std::string> labels = {})
      : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (n_ == 0) throw InvalidArgument("graph must have >= 1 vertex");
    if (!labels_.empty() && labels_.size() != n_)
      throw InvalidArgument("label map size does not match vertex count");
    for (const Edge& e : edges_) {
      if (e.u == e.v) throw InvalidArgument("self-loop at vertex " + std::to_string(e.u));
      if (e.v >= n_) throw InvalidArgument("edge endpoint " + std::to_string(e.v) + " out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    neighbors_.assign(n_, {});
    for (const Edge& e : edges_) {
      neighbors_[e.u].push_back(e.v);
      neighbors_[e.v].push_back(e.u);
    }
    degrees_.resize(n_);
    for (Vertex i = 0; i < n_; ++i) {
      std::sort(neighbors_[i].begin(), neighbors_[i].end());
      degrees_[i] = neighbors_[i].size();
    }
  }

  /// Edgeless graph on n vertices.
  static Graph edgeless(std::size_t n) { return Graph(n, {}); }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
  std::size_t degree(Vertex i) const { return degrees_.at(i); }
  std::span<const Vertex> neighbors(Vertex i) const { return neighbors_.at(i); }

  bool has_edge(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_ || a == b) return false;
    const auto& nb = neighbors_[a];
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  /// Original input labels, empty when the graph was built from indices.
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::string label(Vertex i) const {
    return labels_.empty() ? std::to_string(i) : labels_.at(i);
  }

  AdjacencyMatrix adjacency_matrix() const {
    AdjacencyMatrix a(n_);
    for (const Edge& e : edges_) {
      a.set(e.u, e.v, 1);
      a.set(e.v, e.u, 1);
    }
    return a;
  }

  /// Structural equality; labels are ignored.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Vertex>> neighbors_;
  std::vector<std::size_t> degrees_;
};

inline bool is_regular(const Graph& g) {
  const auto& d = g.degrees();
  return std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) == d.end();
}

/// Vertex sets of the connected components, each sorted, ordered by smallest
/// member.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> comp(n, n);
  std::vector<std::vector<Vertex>> parts;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    const std::size_t id = parts.size();
    parts.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      parts[id].push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (comp[w] == n) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(parts[id].begin(), parts[id].end());
  }
  return parts;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() == 1; }

/// Vertices of `b` are shifted by a.vertex_count().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  const std::size_t shift = a.vertex_count();
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : b.edges()) edges.emplace_back(e.u + shift, e.v + shift);
  return Graph(shift + b.vertex_count(), std::move(edges));
}

inline constexpr std::size_t kDefaultMaxDenseN = 2048;

/// Ceiling on n for dense operations; WALKGAUGE_MAX_N overrides the default.
inline std::size_t max_dense_n() {
  if (const char* env = std::getenv("WALKGAUGE_MAX_N")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxDenseN;
}

inline void require_dense_size(std::size_t n) {
  if (n > max_dense_n())
    throw InvalidArgument("graph has " + std::to_string(n) + " vertices; dense ceiling is " +
                          std::to_string(max_dense_n()) + " (set WALKGAUGE_MAX_N)");
}

}  // namespace walkgauge
