#include "adiamix/solution_space.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "adiamix/errors.hpp"

namespace adiamix {

SolutionBasis::SolutionBasis(int n, std::vector<VertexSet> solutions)
    : n_(n), solutions_(std::move(solutions)), histogram_(static_cast<std::size_t>(n) + 1, 0) {
  std::sort(solutions_.begin(), solutions_.end(), [](VertexSet a, VertexSet b) {
    const int ka = a.size();
    const int kb = b.size();
    return ka != kb ? ka < kb : a.bits < b.bits;
  });
  index_.reserve(solutions_.size());
  for (std::size_t i = 0; i < solutions_.size(); ++i) {
    if (!index_.emplace(solutions_[i].bits, i).second) {
      throw InvalidArgument("duplicate solution in basis");
    }
    ++histogram_[static_cast<std::size_t>(solutions_[i].size())];
  }
}

std::size_t SolutionBasis::index_of(VertexSet s) const {
  const auto it = index_.find(s.bits);
  return it == index_.end() ? npos : it->second;
}

int SolutionBasis::max_cardinality() const {
  return solutions_.empty() ? 0 : solutions_.back().size();
}

namespace {

struct Enumerator {
  const Graph& g;
  std::size_t max_solutions;
  std::vector<VertexSet> out;

  // Extend `current` with vertices >= v that are not blocked.
  void recurse(int v, std::uint64_t current, std::uint64_t blocked) {
    for (; v < g.n(); ++v) {
      if ((blocked >> v) & 1U) continue;
      const std::uint64_t next = current | (std::uint64_t{1} << v);
      push(next);
      recurse(v + 1, next, blocked | g.neighbors(v));
    }
  }

  void push(std::uint64_t bits) {
    if (out.size() >= max_solutions) {
      throw CapacityError("independent-set basis exceeds " + std::to_string(max_solutions) + " solutions");
    }
    out.push_back(VertexSet{bits});
  }
};

std::uint64_t count_rec(const Graph& g, std::uint64_t candidates) {
  if (candidates == 0) return 1;
  int best = -1;
  int best_deg = 0;
  for (std::uint64_t rest = candidates; rest != 0; rest &= rest - 1) {
    const int v = __builtin_ctzll(rest);
    const int d = __builtin_popcountll(g.neighbors(v) & candidates);
    if (d > best_deg) {
      best_deg = d;
      best = v;
    }
  }
  if (best < 0) return std::uint64_t{1} << __builtin_popcountll(candidates);
  const std::uint64_t without = candidates & ~(std::uint64_t{1} << best);
  return count_rec(g, without) + count_rec(g, without & ~g.neighbors(best));
}

}  // namespace

SolutionBasis enumerate_independent_sets(const Graph& g, const EnumerationLimits& limits) {
  if (g.n() > limits.max_vertices) {
    throw CapacityError("n = " + std::to_string(g.n()) + " exceeds basis vertex limit " +
                        std::to_string(limits.max_vertices));
  }
  Enumerator e{g, limits.max_solutions, {}};
  e.push(0);
  e.recurse(0, 0, 0);
  return SolutionBasis(g.n(), std::move(e.out));
}

MedianAdjacency median_adjacency(const SolutionBasis& b) {
  MedianAdjacency adj;
  for (std::size_t beta = 0; beta < b.size(); ++beta) {
    const std::uint64_t bits = b[beta].bits;
    for (std::uint64_t rest = bits; rest != 0; rest &= rest - 1) {
      const std::uint64_t smaller = bits & ~(rest & (0 - rest));
      const std::size_t alpha = b.index_of(VertexSet{smaller});
      // Downward closure guarantees alpha exists for a genuine basis.
      if (alpha != SolutionBasis::npos) adj.pairs.emplace_back(alpha, beta);
    }
  }
  std::sort(adj.pairs.begin(), adj.pairs.end());
  return adj;
}

std::vector<std::size_t> trivial_indices(const SolutionBasis& b) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < b.size() && b.cardinality(i) <= 1; ++i) idx.push_back(i);
  return idx;
}

std::uint64_t count_independent_sets(const Graph& g) {
  const std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n()) - 1;
  return count_rec(g, all);
}

void write_basis_csv(std::ostream& out, const SolutionBasis& b) {
  out << "index,bitmask,popcount\n";
  for (std::size_t i = 0; i < b.size(); ++i) out << i << ',' << b[i].bits << ',' << b.cardinality(i) << '\n';
}

void write_median_csv(std::ostream& out, const MedianAdjacency& adj) {
  out << "alpha,beta\n";
  for (const auto& [a, c] : adj.pairs) out << a << ',' << c << '\n';
}

}  // namespace adiamix
