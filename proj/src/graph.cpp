#include "adiamix/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "adiamix/errors.hpp"
#include "adiamix/rng.hpp"

namespace adiamix {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), adjacency_(static_cast<std::size_t>(std::max(n, 0)), 0) {
  if (n < 1 || n > kMaxVertices) {
    throw InvalidArgument("vertex count " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxVertices) + "]");
  }
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw InvalidArgument("duplicate edge (" + std::to_string(dup->first) + "," +
                          std::to_string(dup->second) + ")");
  }
  for (const auto& [u, v] : edges) {
    adjacency_[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    adjacency_[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
  }
  edges_ = std::move(edges);
}

bool Graph::is_complete() const {
  return static_cast<std::uint64_t>(edges_.size()) == max_edges(n_);
}

std::uint64_t max_edges(int n) {
  const auto nn = static_cast<std::uint64_t>(n);
  return nn * (nn - 1) / 2;
}

Edge edge_from_index(int n, std::uint64_t index) {
  int u = 0;
  auto row = static_cast<std::uint64_t>(n - 1);
  while (index >= row) {
    index -= row;
    --row;
    ++u;
  }
  return {u, u + 1 + static_cast<int>(index)};
}

Graph generate_random_graph(int n, int m, std::uint64_t seed) {
  if (n < 1 || n > kMaxVertices) {
    throw InvalidArgument("vertex count " + std::to_string(n) + " out of range");
  }
  const std::uint64_t total = max_edges(n);
  if (m < 0 || static_cast<std::uint64_t>(m) > total) {
    throw InvalidArgument("edge count " + std::to_string(m) + " outside [0, " + std::to_string(total) + "]");
  }
  Pcg32 rng(seed);
  // Floyd: for j = total-m .. total-1 draw t in [0, j]; take t unless already taken, else j.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(m) * 2);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::uint64_t j = total - static_cast<std::uint64_t>(m); j < total; ++j) {
    const std::uint64_t t = rng.bounded(j + 1);
    const std::uint64_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    edges.push_back(edge_from_index(n, pick));
  }
  return Graph(n, std::move(edges));
}

bool is_independent(const Graph& g, VertexSet s) {
  for (std::uint64_t rest = s.bits; rest != 0; rest &= rest - 1) {
    const int v = __builtin_ctzll(rest);
    if (v >= g.n()) return false;
    if (g.neighbors(v) & s.bits) return false;
  }
  return true;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits a line into exactly two non-negative integers.
bool parse_pair(std::string_view line, long long& a, long long& b) {
  const char* p = line.data();
  const char* end = p + line.size();
  auto skip_ws = [&] {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
  };
  skip_ws();
  auto r1 = std::from_chars(p, end, a);
  if (r1.ec != std::errc{} || r1.ptr == p) return false;
  p = r1.ptr;
  if (p == end || (*p != ' ' && *p != '\t')) return false;
  skip_ws();
  auto r2 = std::from_chars(p, end, b);
  if (r2.ec != std::errc{} || r2.ptr == p) return false;
  p = r2.ptr;
  skip_ws();
  return p == end;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  long long n = 0;
  long long m = 0;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  std::size_t header_line = 0;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    long long a = 0;
    long long b = 0;
    if (!parse_pair(line, a, b) || a < 0 || b < 0) {
      throw ParseError(line_no, "expected two non-negative integers, got '" + std::string(line) + "'");
    }
    if (!have_header) {
      if (a < 1 || a > kMaxVertices) {
        throw ParseError(line_no, "vertex count " + std::to_string(a) + " outside [1, " +
                                      std::to_string(kMaxVertices) + "]");
      }
      if (static_cast<std::uint64_t>(b) > max_edges(static_cast<int>(a))) {
        throw ParseError(line_no, "edge count " + std::to_string(b) + " exceeds n(n-1)/2");
      }
      n = a;
      m = b;
      have_header = true;
      header_line = line_no;
      continue;
    }
    if (a >= n || b >= n) throw ParseError(line_no, "vertex index out of range (n = " + std::to_string(n) + ")");
    if (a == b) throw ParseError(line_no, "self-loop at vertex " + std::to_string(a));
    const auto u = static_cast<int>(std::min(a, b));
    const auto v = static_cast<int>(std::max(a, b));
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32U) | static_cast<std::uint64_t>(v);
    if (!seen.insert(key).second) {
      throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    if (static_cast<long long>(edges.size()) == m) {
      throw ParseError(line_no, "more edges than declared in header (" + std::to_string(m) + ")");
    }
    edges.emplace_back(u, v);
  }
  if (!have_header) throw ParseError(line_no, "missing 'n m' header");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(header_line, "header declares " + std::to_string(m) + " edges but " +
                                      std::to_string(edges.size()) + " were given");
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.m() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write graph file '" + path + "'");
  out << serialize_graph(g);
}

}  // namespace adiamix
