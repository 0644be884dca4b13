// walkgauge command-line front end.
//
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 diagnostic
// failure (numerics contradicted the exact result).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "walkgauge/walkgauge.hpp"

namespace wg = walkgauge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitDiagnostic = 3;

struct InputOptions {
  std::string input;
  std::string format = "auto";
  std::string family;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> connections;
};

struct GridOptions {
  std::string spec;
};

struct OutputOptions {
  std::string format = "text";
  std::string path;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  auto* input = cmd->add_option("--input", in.input, "Graph file (edge list or graph6)");
  auto* family = cmd->add_option("--family", in.family,
                                 "Generated family: complete, cycle, path, star, complete_bipartite, circulant, "
                                 "hypercube, petersen, twin_k4e, edgeless");
  input->excludes(family);
  cmd->add_option("--format", in.format, "Input format for --input: auto, edgelist, graph6")
      ->check(CLI::IsMember({"auto", "edgelist", "graph6"}));
  cmd->add_option("--n", in.n, "Vertex count for the family");
  cmd->add_option("--m", in.m, "First side of complete_bipartite");
  cmd->add_option("--k", in.k, "Second side of complete_bipartite");
  cmd->add_option("--dim", in.dim, "Hypercube dimension");
  cmd->add_option("--connections", in.connections, "Circulant jump set, e.g. --connections 1,2")->delimiter(',');
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw wg::ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool looks_like_graph6(const std::string& path) {
  for (const char* ext : {".g6", ".graph6"}) {
    const std::string e(ext);
    if (path.size() >= e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0) return true;
  }
  return false;
}

wg::FamilySpec family_spec(const InputOptions& in) {
  const auto fam = wg::parse_family(in.family);
  if (!fam) throw wg::InvalidArgument("unknown family '" + in.family + "'");
  switch (*fam) {
    case wg::Family::complete_bipartite: return wg::FamilySpec::complete_bipartite(in.m, in.k);
    case wg::Family::circulant: return wg::FamilySpec::circulant(in.n, in.connections);
    case wg::Family::hypercube: return wg::FamilySpec::hypercube(in.dim);
    case wg::Family::petersen: return wg::FamilySpec::petersen();
    case wg::Family::twin_k4e: return wg::FamilySpec::twin_k4e();
    default: return wg::FamilySpec::of(*fam, in.n);
  }
}

struct LoadedGraph {
  wg::Graph graph;
  std::string name;
};

LoadedGraph load_graph(const InputOptions& in) {
  if (!in.family.empty()) {
    const auto spec = family_spec(in);
    return {wg::generate(spec), wg::describe(spec)};
  }
  if (in.input.empty()) throw wg::InvalidArgument("one of --input or --family is required");
  const std::string text = read_file(in.input);
  const bool g6 = in.format == "graph6" || (in.format == "auto" && looks_like_graph6(in.input));
  if (g6) {
    std::istringstream ss(text);
    auto graphs = wg::read_graph6_stream(ss);
    if (graphs.size() != 1)
      throw wg::ParseError("expected exactly one graph6 record in " + in.input + ", found " +
                           std::to_string(graphs.size()));
    return {std::move(graphs.front()), in.input};
  }
  return {wg::parse_edge_list(text), in.input};
}

/// Parses min:max:count[:log|linear].
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3 && parts.size() != 4) throw wg::ParseError("grid must be min:max:count[:log|linear]");
  double lo = 0, hi = 0;
  std::size_t count = 0;
  try {
    std::size_t used = 0;
    lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("min");
    hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("max");
    const long long c = std::stoll(parts[2], &used);
    if (used != parts[2].size() || c <= 0) throw std::invalid_argument("count");
    count = static_cast<std::size_t>(c);
  } catch (const std::exception&) {
    throw wg::ParseError("malformed grid '" + spec + "'");
  }
  const std::string scale = parts.size() == 4 ? parts[3] : "log";
  if (!(lo > 0)) throw wg::ParseError("grid min must be > 0");
  std::vector<double> grid;
  if (scale == "log")
    grid = wg::log_spaced_grid(lo, hi, count);
  else if (scale == "linear")
    grid = wg::linear_grid(lo, hi, count);
  else
    throw wg::ParseError("grid scale must be log or linear");
  wg::validate_grid(grid);
  return grid;
}

std::vector<double> grid_or_default(const GridOptions& g) {
  return g.spec.empty() ? wg::default_grid() : parse_grid(g.spec);
}

void emit(const OutputOptions& out, const std::string& body) {
  if (out.path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw wg::ParseError("cannot write " + out.path);
  f << body;
}

std::string r6(double x) { return wg::format_number(x, 6); }

int run_classify(const InputOptions& in, const GridOptions& grid_opts, const OutputOptions& out) {
  const auto loaded = load_graph(in);
  const auto grid = grid_or_default(grid_opts);
  const wg::Classification c = wg::classify(loaded.graph, grid);
  if (out.format == "json") {
    auto j = wg::to_json(c);
    j["graph"] = loaded.name;
    j["n"] = loaded.graph.vertex_count();
    emit(out, j.dump(2) + "\n");
    return kExitOk;
  }
  std::ostringstream s;
  s << wg::to_string(c.label);
  if (c.exact.witness_k) s << ", witness k=" << *c.exact.witness_k;
  if (c.exact.witness_vertices)
    s << " vertices (" << loaded.graph.label(c.exact.witness_vertices->first) << ","
      << loaded.graph.label(c.exact.witness_vertices->second) << ")";
  s << '\n';
  s << "graph: " << loaded.name << " (n=" << loaded.graph.vertex_count() << ", m=" << loaded.graph.edge_count()
    << ")\n";
  s << "deficit at beta=1: " << r6(c.deficit_at_one) << '\n';
  s << "beta->inf limit deficit: " << r6(c.profile.limit_infinity_deficit()) << '\n';
  s << "gap_estimate: " << r6(c.profile.gap_estimate) << " (numeric estimate, not a certified bound)\n";
  for (const auto& w : c.warnings) s << "warning: " << w << '\n';
  emit(out, s.str());
  return kExitOk;
}

int run_sweep(const InputOptions& in, const GridOptions& grid_opts, const OutputOptions& out) {
  const auto loaded = load_graph(in);
  const auto grid = grid_or_default(grid_opts);
  const wg::EntropyProfile prof = wg::entropy_profile(loaded.graph, grid);
  if (out.format == "json") {
    auto j = wg::to_json(prof);
    j["graph"] = loaded.name;
    emit(out, j.dump(2) + "\n");
  } else if (out.format == "text") {
    emit(out, wg::profile_to_csv(prof, 6));
  } else {
    emit(out, wg::profile_to_csv(prof));
  }
  return kExitOk;
}

int run_verify(const InputOptions& in, const GridOptions& grid_opts, const OutputOptions& out) {
  const auto loaded = load_graph(in);
  const auto grid = grid_or_default(grid_opts);
  const auto checks = wg::verify_invariants(loaded.graph, grid);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.passed;
  if (out.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) arr.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    emit(out, nlohmann::json{{"graph", loaded.name}, {"passed", ok}, {"checks", arr}}.dump(2) + "\n");
  } else {
    std::ostringstream s;
    for (const auto& c : checks) s << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    s << (ok ? "all checks passed" : "verification FAILED") << '\n';
    emit(out, s.str());
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int run_search(std::size_t max_n, std::optional<std::size_t> degree, const std::string& stream_path,
               const OutputOptions& out) {
  std::vector<wg::Graph> stream;
  const bool has_stream = !stream_path.empty();
  if (has_stream) {
    std::ifstream f(stream_path);
    if (!f) throw wg::ParseError("cannot open " + stream_path);
    stream = wg::read_graph6_stream(f);
  }
  const auto result = wg::search_regular_not_walk_regular(max_n, degree, has_stream ? &stream : nullptr);
  std::ostringstream s;
  for (const auto& w : result.witnesses) s << w << '\n';
  emit(out, s.str());
  std::cerr << "# candidates=" << result.candidates << " regular=" << result.regular_candidates
            << " witnesses=" << result.witnesses.size() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"walkgauge: walk entropy and walk-regularity analysis of simple graphs"};
  app.require_subcommand(1);

  InputOptions in;
  GridOptions grid;
  OutputOptions out;

  auto* classify = app.add_subcommand("classify", "Walk-regular / regular-not-walk-regular / non-regular label");
  auto* sweep = app.add_subcommand("sweep", "Entropy profile over a beta grid (CSV or JSON)");
  auto* verify = app.add_subcommand("verify", "Run the invariant battery");
  auto* search = app.add_subcommand("search", "Find regular graphs that are not walk-regular");
  out.format = "text";
  for (auto* cmd : {classify, sweep, verify}) {
    add_input_options(cmd, in);
    cmd->add_option("--grid", grid.spec, "Beta grid min:max:count[:log|linear]");
    cmd->add_option("--output", out.path, "Write output to this file");
  }
  classify->add_option("--output-format", out.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--output-format", out.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sweep->add_option("--output-format", out.format, "csv, json or text")
      ->check(CLI::IsMember({"csv", "json", "text"}))
      ->default_str("csv");

  std::size_t max_n = 0;
  std::optional<std::size_t> degree;
  std::string stream_path;
  search->add_option("--max-n", max_n, "Largest vertex count")->required();
  search->add_option("--degree", degree, "Only graphs of this degree");
  search->add_option("--stream", stream_path, "graph6 file of candidate graphs");
  search->add_option("--output", out.path, "Write graph6 lines to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }
  if (sweep->parsed() && sweep->count("--output-format") == 0) out.format = "csv";

  try {
    if (classify->parsed()) return run_classify(in, grid, out);
    if (sweep->parsed()) return run_sweep(in, grid, out);
    if (verify->parsed()) return run_verify(in, grid, out);
    if (search->parsed()) return run_search(max_n, degree, stream_path, out);
  } catch (const wg::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const wg::InvalidArgument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const wg::DiagnosticFailure& e) {
    std::cerr << "diagnostic failure: " << e.what() << '\n';
    return kExitDiagnostic;
  } catch (const wg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDiagnostic;
  }
  return kExitInput;
}
