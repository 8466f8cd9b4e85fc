#include "adiamix/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "adiamix/errors.hpp"
#include "adiamix/rng.hpp"

namespace adiamix {

namespace {

// Literal node: 2*var for x, 2*var+1 for !x.
int node(Literal l) { return 2 * l.var + (l.negated ? 1 : 0); }
int negate(int v) { return v ^ 1; }

struct ImplicationGraph {
  std::vector<std::vector<int>> out;
  explicit ImplicationGraph(int n) : out(static_cast<std::size_t>(2 * n)) {}
  void add(int from, int to) { out[static_cast<std::size_t>(from)].push_back(to); }
};

// Iterative Tarjan. Components are numbered in reverse topological order.
std::vector<int> strongly_connected_components(const ImplicationGraph& g) {
  const auto size = static_cast<int>(g.out.size());
  std::vector<int> index(static_cast<std::size_t>(size), -1);
  std::vector<int> low(static_cast<std::size_t>(size), 0);
  std::vector<int> comp(static_cast<std::size_t>(size), -1);
  std::vector<char> on_stack(static_cast<std::size_t>(size), 0);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;  // (vertex, next edge)
  int counter = 0;
  int components = 0;

  for (int root = 0; root < size; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      const auto vi = static_cast<std::size_t>(v);
      if (edge == 0 && index[vi] < 0) {
        index[vi] = low[vi] = counter++;
        stack.push_back(v);
        on_stack[vi] = 1;
      }
      const auto& adj = g.out[vi];
      if (edge < adj.size()) {
        const int w = adj[edge++];
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] < 0) {
          call.emplace_back(w, 0);
        } else if (on_stack[wi]) {
          low[vi] = std::min(low[vi], index[wi]);
        }
        continue;
      }
      if (low[vi] == index[vi]) {
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp[static_cast<std::size_t>(w)] = components;
        } while (w != v);
        ++components;
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) {
        const auto parent = static_cast<std::size_t>(call.back().first);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
      }
    }
  }
  return comp;
}

std::vector<int> degree_order(const Graph& g) {
  std::vector<int> order(static_cast<std::size_t>(g.n()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });
  return order;
}

template <typename Pick>
BaselineResult run_baseline(std::uint64_t trials, double expected, Pick&& pick_fails) {
  BaselineResult r;
  r.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (pick_fails()) ++r.failures;
  }
  r.rate = static_cast<double>(r.failures) / static_cast<double>(trials);
  r.expected = expected;
  r.sigma = std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
  return r;
}

}  // namespace

ClauseSet graph_to_clauses(const Graph& g) {
  ClauseSet c;
  c.n = g.n();
  for (const auto& [u, v] : g.edges()) c.clauses.push_back({{u, true}, {v, true}});
  return c;
}

std::optional<Assignment> solve_2sat(const ClauseSet& c, const PartialAssignment& forced) {
  if (!forced.empty() && static_cast<int>(forced.size()) != c.n) {
    throw InvalidArgument("forced assignment has " + std::to_string(forced.size()) + " entries, expected " +
                          std::to_string(c.n));
  }
  ImplicationGraph g(c.n);
  for (const auto& cl : c.clauses) {
    if (cl.a.var < 0 || cl.a.var >= c.n || cl.b.var < 0 || cl.b.var >= c.n) {
      throw InvalidArgument("clause variable out of range");
    }
    const int a = node(cl.a);
    const int b = node(cl.b);
    g.add(negate(a), b);
    g.add(negate(b), a);
  }
  for (std::size_t v = 0; v < forced.size(); ++v) {
    if (!forced[v]) continue;
    const int lit = node({static_cast<int>(v), !*forced[v]});
    g.add(negate(lit), lit);
  }
  const std::vector<int> comp = strongly_connected_components(g);
  Assignment x(static_cast<std::size_t>(c.n));
  for (int v = 0; v < c.n; ++v) {
    const int pos = comp[static_cast<std::size_t>(2 * v)];
    const int neg = comp[static_cast<std::size_t>(2 * v + 1)];
    if (pos == neg) return std::nullopt;
    // Reverse topological numbering: the literal whose component comes later
    // in topological order (smaller id) is set true.
    x[static_cast<std::size_t>(v)] = pos < neg;
  }
  return x;
}

bool satisfies(const ClauseSet& c, const Assignment& x) {
  auto value = [&](Literal l) { return x[static_cast<std::size_t>(l.var)] != l.negated; };
  return std::all_of(c.clauses.begin(), c.clauses.end(),
                     [&](const Clause& cl) { return value(cl.a) || value(cl.b); });
}

std::optional<VertexSet> find_nontrivial_classical(const Graph& g) {
  const std::vector<int> order = degree_order(g);
  for (const int u : order) {
    for (const int v : order) {
      if (v != u && !g.adjacent(u, v)) {
        return VertexSet{(std::uint64_t{1} << u) | (std::uint64_t{1} << v)};
      }
    }
  }
  return std::nullopt;
}

std::optional<VertexSet> find_nontrivial_via_2sat(const Graph& g) {
  const ClauseSet clauses = graph_to_clauses(g);
  const std::vector<int> order = degree_order(g);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      PartialAssignment forced(static_cast<std::size_t>(g.n()));
      forced[static_cast<std::size_t>(order[i])] = true;
      forced[static_cast<std::size_t>(order[j])] = true;
      if (const auto x = solve_2sat(clauses, forced)) {
        VertexSet s;
        for (int v = 0; v < g.n(); ++v) {
          if ((*x)[static_cast<std::size_t>(v)]) s.bits |= std::uint64_t{1} << v;
        }
        return s;
      }
    }
  }
  return std::nullopt;
}

BaselineResult random_pair_baseline(const Graph& g, std::uint64_t trials, std::uint64_t seed) {
  if (g.n() < 2) throw InvalidArgument("random pair baseline needs n >= 2");
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  Pcg32 rng(seed);
  const auto n = static_cast<std::uint64_t>(g.n());
  const double expected = static_cast<double>(g.m()) / static_cast<double>(max_edges(g.n()));
  return run_baseline(trials, expected, [&] {
    const auto u = static_cast<int>(rng.bounded(n));
    auto v = static_cast<int>(rng.bounded(n - 1));
    if (v >= u) ++v;
    return g.adjacent(u, v);
  });
}

BaselineResult random_triple_baseline(const Graph& g, std::uint64_t trials, std::uint64_t seed) {
  if (g.n() < 3) throw InvalidArgument("random triple baseline needs n >= 3");
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  std::uint64_t bad = 0;
  std::uint64_t total = 0;
  for (int a = 0; a < g.n(); ++a) {
    for (int b = a + 1; b < g.n(); ++b) {
      for (int c = b + 1; c < g.n(); ++c) {
        ++total;
        if (g.adjacent(a, b) || g.adjacent(a, c) || g.adjacent(b, c)) ++bad;
      }
    }
  }
  Pcg32 rng(seed);
  const auto n = static_cast<std::uint64_t>(g.n());
  const double expected = static_cast<double>(bad) / static_cast<double>(total);
  return run_baseline(trials, expected, [&] {
    std::uint64_t picked = 0;
    while (__builtin_popcountll(picked) < 3) picked |= std::uint64_t{1} << rng.bounded(n);
    return !is_independent(g, VertexSet{picked});
  });
}

void write_dimacs(std::ostream& out, const ClauseSet& c) {
  out << "p cnf " << c.n << ' ' << c.clauses.size() << '\n';
  auto lit = [](Literal l) { return (l.negated ? -1 : 1) * (l.var + 1); };
  for (const auto& cl : c.clauses) out << lit(cl.a) << ' ' << lit(cl.b) << " 0\n";
}

ClauseSet parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  ClauseSet c;
  bool header = false;
  std::size_t declared = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c") continue;
    if (first == "p") {
      std::string fmt;
      long long n = 0;
      long long m = 0;
      if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0) throw ParseError(line_no, "bad DIMACS header");
      c.n = static_cast<int>(n);
      declared = static_cast<std::size_t>(m);
      header = true;
      continue;
    }
    if (!header) throw ParseError(line_no, "clause before 'p cnf' header");
    std::vector<long long> lits;
    std::istringstream cs(line);
    long long v = 0;
    while (cs >> v && v != 0) lits.push_back(v);
    if (v != 0 || lits.size() != 2) throw ParseError(line_no, "expected exactly two literals terminated by 0");
    Clause cl;
    Literal* slots[2] = {&cl.a, &cl.b};
    for (std::size_t i = 0; i < 2; ++i) {
      const long long var = std::llabs(lits[i]) - 1;
      if (var >= c.n) throw ParseError(line_no, "literal variable out of range");
      *slots[i] = {static_cast<int>(var), lits[i] < 0};
    }
    c.clauses.push_back(cl);
  }
  if (!header) throw ParseError(line_no, "missing 'p cnf' header");
  if (c.clauses.size() != declared) throw ParseError(line_no, "clause count does not match header");
  return c;
}

}  // namespace adiamix
