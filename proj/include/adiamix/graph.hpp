#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adiamix {

/// Vertex bitmasks are 64-bit; one bit is kept spare so counts up to 2^63 fit.
inline constexpr int kMaxVertices = 63;

/// Subset of vertices; bit j set means vertex j is in the set (x_j = 1).
struct VertexSet {
  std::uint64_t bits = 0;

  bool contains(int v) const { return (bits >> v) & 1U; }
  int size() const { return __builtin_popcountll(bits); }
  friend bool operator==(VertexSet, VertexSet) = default;
  friend auto operator<=>(VertexSet, VertexSet) = default;
};

using Edge = std::pair<int, int>;

/// Simple undirected graph on vertices 0..n-1. Edges are stored canonically
/// (u < v, lexicographically sorted) and the graph is immutable once built.
class Graph {
 public:
  /// Throws InvalidArgument on self-loops, duplicates or out-of-range endpoints.
  Graph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Neighbourhood of v as a bitmask.
  std::uint64_t neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return __builtin_popcountll(neighbors(v)); }
  bool adjacent(int u, int v) const { return (neighbors(u) >> v) & 1U; }
  bool is_complete() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> adjacency_;
};

/// Number of candidate edges n(n-1)/2.
std::uint64_t max_edges(int n);

/// Maps an index in [0, n(n-1)/2) to the pair (u, v), u < v, in row-major
/// upper-triangular order: 0 -> (0,1), 1 -> (0,2), ..., n-2 -> (0,n-1), n-1 -> (1,2), ...
Edge edge_from_index(int n, std::uint64_t index);

/// Uniformly random m-subset of all candidate edges (Floyd's sampling over
/// edge indices, PCG32 seeded with `seed`).
Graph generate_random_graph(int n, int m, std::uint64_t seed);

/// True iff no edge has both endpoints in s.
bool is_independent(const Graph& g, VertexSet s);

/// Edge-list text: "n m" header then one "u v" per line. Blank lines and
/// lines starting with '#' are skipped. Throws ParseError with a line number.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

Graph read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const Graph& g);

}  // namespace adiamix
