#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "adiamix/graph.hpp"

namespace adiamix {

struct Literal {
  int var = 0;
  bool negated = false;
  friend bool operator==(Literal, Literal) = default;
};

struct Clause {
  Literal a;
  Literal b;
};

/// 2-CNF over n boolean variables.
struct ClauseSet {
  int n = 0;
  std::vector<Clause> clauses;
};

/// One (!x_u | !x_v) per edge.
ClauseSet graph_to_clauses(const Graph& g);

/// Per-variable forced value; std::nullopt leaves the variable free.
using PartialAssignment = std::vector<std::optional<bool>>;
using Assignment = std::vector<bool>;

/// Implication-graph 2-SAT (Tarjan SCC), linear in n + |clauses|. Forced literals
/// enter as implications (!l -> l). Returns std::nullopt when unsatisfiable.
/// An empty `forced` means nothing is forced.
std::optional<Assignment> solve_2sat(const ClauseSet& c, const PartialAssignment& forced = {});

bool satisfies(const ClauseSet& c, const Assignment& x);

/// Independent set with at least two vertices, or std::nullopt iff g is complete.
/// Vertices are tried in ascending (degree, index) order and paired with the
/// first non-neighbour in the same order.
std::optional<VertexSet> find_nontrivial_classical(const Graph& g);

/// Same contract, but each candidate pair is checked by forcing both variables
/// true in solve_2sat. The returned set is the solver's full assignment.
std::optional<VertexSet> find_nontrivial_via_2sat(const Graph& g);

struct BaselineResult {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double rate = 0.0;
  /// Exact failure probability (2m / n(n-1) for pairs); NaN when unknown.
  double expected = 0.0;
  /// Binomial standard deviation of `rate` around `expected`.
  double sigma = 0.0;
};

/// Pick two distinct vertices uniformly and call it an independent set.
BaselineResult random_pair_baseline(const Graph& g, std::uint64_t trials, std::uint64_t seed);

/// Same with three vertices; no closed form is asserted, `expected` is the
/// exact fraction of non-independent triples.
BaselineResult random_triple_baseline(const Graph& g, std::uint64_t trials, std::uint64_t seed);

/// DIMACS CNF ("p cnf n m", literals 1-based, negative for negation, 0-terminated).
void write_dimacs(std::ostream& out, const ClauseSet& c);
ClauseSet parse_dimacs(std::string_view text);

}  // namespace adiamix
