#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "walkgauge/error.hpp"
#include "walkgauge/graph.hpp"

namespace walkgauge {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::optional<std::size_t> parse_index(std::string_view token) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

}  // namespace detail

/// Parses a line-oriented edge list.
///
/// Lines starting with `#` are comments, except `# n=<count>` which fixes the
/// vertex count (so isolated vertices survive a round trip). Each remaining
/// non-blank line holds exactly two labels. When every label is a
/// non-negative integer the labels are used as indices and n = max + 1;
/// otherwise all labels are interned in first-appearance order and the
/// original spellings are kept as the graph's label map.
inline Graph parse_edge_list(std::string_view text) {
  struct RawEdge {
    std::string_view a, b;
    std::size_t line;
  };
  std::vector<RawEdge> raw;
  std::optional<std::size_t> declared_n;
  bool all_numeric = true;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = detail::trim(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = detail::trim(line.substr(1));
      if (body.starts_with("n=")) {
        const auto count = detail::parse_index(detail::trim(body.substr(2)));
        if (!count) throw ParseError("malformed vertex-count comment", line_no);
        declared_n = *count;
      }
      continue;
    }
    const auto fields = detail::split_ws(line);
    if (fields.size() != 2) throw ParseError("expected two vertex labels", line_no);
    if (fields[0] == fields[1]) throw ParseError("self-loop", line_no);
    if (!detail::parse_index(fields[0]) || !detail::parse_index(fields[1])) all_numeric = false;
    raw.push_back({fields[0], fields[1], line_no});
  }

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  if (all_numeric) {
    std::size_t n = declared_n.value_or(0);
    for (const auto& r : raw) {
      const std::size_t a = *detail::parse_index(r.a);
      const std::size_t b = *detail::parse_index(r.b);
      if (a == b) throw ParseError("self-loop", r.line);
      if (declared_n && (a >= *declared_n || b >= *declared_n))
        throw ParseError("vertex index exceeds declared n", r.line);
      n = std::max({n, a + 1, b + 1});
      edges.emplace_back(a, b);
    }
    if (n == 0) throw ParseError("graph must have >= 1 vertex");
    return Graph(n, std::move(edges));
  }

  std::unordered_map<std::string_view, std::size_t> index;
  std::vector<std::string> labels;
  auto intern = [&](std::string_view label) {
    auto [it, inserted] = index.try_emplace(label, labels.size());
    if (inserted) labels.emplace_back(label);
    return it->second;
  };
  for (const auto& r : raw) {
    const std::size_t a = intern(r.a);
    const std::size_t b = intern(r.b);
    edges.emplace_back(a, b);
  }
  if (declared_n && *declared_n < labels.size())
    throw ParseError("more distinct labels than declared n");
  while (declared_n && labels.size() < *declared_n) labels.push_back("_" + std::to_string(labels.size()));
  const std::size_t n = labels.size();
  return Graph(n, std::move(edges), std::move(labels));
}

/// Edge list with a `# n=` header; parse_edge_list inverts it.
inline std::string emit_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# n=" << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

namespace detail {

inline void append_graph6_size(std::string& out, std::size_t n) {
  auto put = [&](std::size_t value, int bytes) {
    for (int k = bytes - 1; k >= 0; --k) out.push_back(static_cast<char>(((value >> (6 * k)) & 63) + 63));
  };
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    put(n, 3);
  } else {
    out.append("~~");
    put(n, 6);
  }
}

}  // namespace detail

/// graph6 encoding without a trailing newline.
inline std::string emit_graph6(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::string out;
  detail::append_graph6_size(out, n);
  int filled = 0;
  unsigned acc = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1u : 0u);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

/// Decodes one graph6 line. An optional `>>graph6<<` prefix and trailing
/// whitespace are accepted.
inline Graph parse_graph6(std::string_view line, std::size_t line_no = 0) {
  line = detail::trim(line);
  if (line.starts_with(">>graph6<<")) line.remove_prefix(10);
  if (line.empty()) throw ParseError("empty graph6 record", line_no);
  for (char c : line) {
    const auto b = static_cast<unsigned char>(c);
    if (b < 63 || b > 126) throw ParseError("graph6 byte outside [63,126]", line_no);
  }

  auto take = [&](std::size_t count) {
    if (line.size() < count) throw ParseError("truncated graph6 size field", line_no);
    std::size_t value = 0;
    for (std::size_t k = 0; k < count; ++k) value = (value << 6) | static_cast<std::size_t>(line[k] - 63);
    line.remove_prefix(count);
    return value;
  };
  std::size_t n = 0;
  if (line[0] != '~') {
    n = take(1);
  } else if (line.size() >= 2 && line[1] == '~') {
    line.remove_prefix(2);
    n = take(6);
  } else {
    line.remove_prefix(1);
    n = take(3);
  }
  if (n == 0) throw ParseError("graph must have >= 1 vertex", line_no);
  if (n > (std::size_t{1} << 24)) throw ParseError("graph6 size beyond supported range", line_no);

  const std::size_t bits = n * (n - 1) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (line.size() != bytes) throw ParseError("graph6 body length does not match n", line_no);

  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++bit) {
      const unsigned byte = static_cast<unsigned>(line[bit / 6] - 63);
      if ((byte >> (5 - bit % 6)) & 1u) edges.emplace_back(i, j);
    }
  }
  if (bits % 6 != 0) {
    const unsigned last = static_cast<unsigned>(line.back() - 63);
    const unsigned pad_mask = (1u << (6 - bits % 6)) - 1u;
    if (last & pad_mask) throw ParseError("graph6 padding bits are nonzero", line_no);
  }
  return Graph(n, std::move(edges));
}

/// One graph per non-blank line.
inline std::vector<Graph> read_graph6_stream(std::istream& in) {
  std::vector<Graph> graphs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    graphs.push_back(parse_graph6(line, line_no));
  }
  return graphs;
}

}  // namespace walkgauge
