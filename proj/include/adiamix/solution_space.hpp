#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <utility>
#include <vector>

#include "adiamix/graph.hpp"

namespace adiamix {

struct EnumerationLimits {
  int max_vertices = 30;
  std::size_t max_solutions = std::size_t{1} << 24;
};

/// All independent sets of a graph, i.e. the degenerate ground manifold.
/// Canonical order: ascending popcount, then ascending bitmask. The n+1
/// trivial solutions therefore occupy indices 0..n.
class SolutionBasis {
 public:
  SolutionBasis(int n, std::vector<VertexSet> solutions);

  int n() const { return n_; }
  std::size_t size() const { return solutions_.size(); }
  const std::vector<VertexSet>& solutions() const { return solutions_; }
  VertexSet operator[](std::size_t i) const { return solutions_[i]; }
  int cardinality(std::size_t i) const { return solutions_[i].size(); }
  /// Position of s, or npos when s is not a solution.
  std::size_t index_of(VertexSet s) const;
  bool contains(VertexSet s) const { return index_of(s) != npos; }
  /// N_k for k = 0..n.
  const std::vector<std::size_t>& cardinality_histogram() const { return histogram_; }
  int max_cardinality() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  int n_;
  std::vector<VertexSet> solutions_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<std::size_t> histogram_;
};

/// Median-graph edges (alpha < beta) between solutions differing in one vertex,
/// sorted lexicographically.
struct MedianAdjacency {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Backtracking enumeration with adjacency bitmasks. Throws CapacityError when
/// n exceeds limits.max_vertices or the basis would exceed limits.max_solutions.
SolutionBasis enumerate_independent_sets(const Graph& g, const EnumerationLimits& limits = {});

/// One removal probe per (solution, member vertex).
MedianAdjacency median_adjacency(const SolutionBasis& b);

/// Indices of the empty set and the singletons (popcount <= 1).
std::vector<std::size_t> trivial_indices(const SolutionBasis& b);

/// Exact N_s by counting-only search; valid for any n up to kMaxVertices.
std::uint64_t count_independent_sets(const Graph& g);

/// CSV "index,bitmask,popcount".
void write_basis_csv(std::ostream& out, const SolutionBasis& b);
/// CSV "alpha,beta".
void write_median_csv(std::ostream& out, const MedianAdjacency& adj);

}  // namespace adiamix
