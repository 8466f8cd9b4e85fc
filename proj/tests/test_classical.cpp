#include <doctest.h>

#include <cmath>
#include <sstream>

#include "adiamix/classical.hpp"
#include "adiamix/errors.hpp"
#include "adiamix/rng.hpp"
#include "oracles.hpp"

using namespace adiamix;

namespace {

const Graph kK2(2, {{0, 1}});
const Graph kP3(3, {{0, 1}, {1, 2}});

Graph complete(int n) {
  return generate_random_graph(n, static_cast<int>(max_edges(n)), 0);
}

ClauseSet random_clauses(Pcg32& rng, int n, int m) {
  ClauseSet c;
  c.n = n;
  for (int i = 0; i < m; ++i) {
    Literal a{static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n))), rng.bounded(2) == 1};
    Literal b{static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n))), rng.bounded(2) == 1};
    c.clauses.push_back({a, b});
  }
  return c;
}

}  // namespace

TEST_CASE("graph to clauses") {
  const ClauseSet k2 = graph_to_clauses(kK2);
  REQUIRE(k2.clauses.size() == 1);
  CHECK(k2.clauses[0].a == Literal{0, true});
  CHECK(k2.clauses[0].b == Literal{1, true});
  const ClauseSet p3 = graph_to_clauses(kP3);
  REQUIRE(p3.clauses.size() == 2);
  CHECK(p3.clauses[1].a == Literal{1, true});
  CHECK(p3.clauses[1].b == Literal{2, true});
  CHECK(graph_to_clauses(Graph(4, {})).clauses.empty());
}

TEST_CASE("2-SAT examples") {
  const auto k2 = solve_2sat(graph_to_clauses(kK2));
  REQUIRE(k2);
  CHECK(satisfies(graph_to_clauses(kK2), *k2));

  ClauseSet contradiction;
  contradiction.n = 1;
  contradiction.clauses = {{{0, false}, {0, false}}, {{0, true}, {0, true}}};
  CHECK_FALSE(solve_2sat(contradiction));

  PartialAssignment forced(3);
  forced[0] = true;
  forced[2] = true;
  const auto p3 = solve_2sat(graph_to_clauses(kP3), forced);
  REQUIRE(p3);
  CHECK(*p3 == std::vector<bool>{true, false, true});
  CHECK(oracle::brute_force_2sat(graph_to_clauses(kP3), forced) == p3);

  forced[1] = true;
  CHECK_FALSE(solve_2sat(graph_to_clauses(kP3), forced));
  CHECK_THROWS_AS(solve_2sat(graph_to_clauses(kP3), PartialAssignment(2)), InvalidArgument);
}

TEST_CASE("2-SAT agrees with exhaustive search") {
  Pcg32 rng(31337);
  int unsat = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.bounded(15));
    const int m = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(3 * n + 1)));
    const ClauseSet c = random_clauses(rng, n, m);
    PartialAssignment forced(static_cast<std::size_t>(n));
    for (auto& f : forced) {
      const auto r = rng.bounded(6);
      if (r == 0) f = true;
      if (r == 1) f = false;
    }
    const auto fast = solve_2sat(c, forced);
    const auto slow = oracle::brute_force_2sat(c, forced);
    REQUIRE(fast.has_value() == slow.has_value());
    if (!fast) {
      ++unsat;
      continue;
    }
    CHECK(satisfies(c, *fast));
    for (std::size_t v = 0; v < forced.size(); ++v) {
      if (forced[v]) CHECK((*fast)[v] == *forced[v]);
    }
  }
  // Both outcomes are exercised.
  CHECK(unsat > 20);
  CHECK(unsat < 480);
}

TEST_CASE("non-trivial classical solutions") {
  CHECK(find_nontrivial_classical(kP3) == VertexSet{0b101});
  CHECK_FALSE(find_nontrivial_classical(complete(3)));
  const auto e5 = find_nontrivial_classical(Graph(5, {}));
  REQUIRE(e5);
  CHECK(e5->size() == 2);

  Pcg32 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.bounded(9));
    const auto total = max_edges(n);
    // Bias towards dense and complete graphs.
    const int m = static_cast<int>(total - rng.bounded(std::min<std::uint64_t>(total + 1, 4)));
    const Graph g = generate_random_graph(n, m, rng.next_u64());
    const auto fast = find_nontrivial_classical(g);
    const auto via_sat = find_nontrivial_via_2sat(g);
    CHECK(fast.has_value() == !g.is_complete());
    CHECK(via_sat.has_value() == !g.is_complete());
    for (const auto& s : {fast, via_sat}) {
      if (!s) continue;
      CHECK(s->size() >= 2);
      CHECK(is_independent(g, *s));
    }
  }
}

TEST_CASE("random pair baseline") {
  const BaselineResult p3 = random_pair_baseline(kP3, 10000, 1);
  CHECK(p3.expected == doctest::Approx(2.0 / 3.0));
  CHECK(std::abs(p3.rate - p3.expected) <= 3 * p3.sigma);
  CHECK(random_pair_baseline(Graph(6, {}), 1000, 2).rate == 0.0);
  CHECK(random_pair_baseline(complete(6), 1000, 3).rate == 1.0);
  CHECK_THROWS_AS(random_pair_baseline(Graph(1, {}), 10, 1), InvalidArgument);

  const Graph g = generate_random_graph(12, 12, 4);
  const BaselineResult r = random_pair_baseline(g, 10000, 5);
  CHECK(r.expected == doctest::Approx(2.0 * 12 / (12.0 * 11.0)));
  CHECK(std::abs(r.rate - r.expected) <= 3 * r.sigma);
}

TEST_CASE("random triple baseline uses the exact triple fraction") {
  const BaselineResult p3 = random_triple_baseline(kP3, 100, 1);
  CHECK(p3.expected == 1.0);
  CHECK(p3.rate == 1.0);
  const Graph g = generate_random_graph(10, 10, 6);
  const BaselineResult r = random_triple_baseline(g, 20000, 7);
  CHECK(std::abs(r.rate - r.expected) <= 4 * r.sigma);
  CHECK(r.expected > random_pair_baseline(g, 10, 1).expected);
}

TEST_CASE("DIMACS round trip") {
  const ClauseSet c = graph_to_clauses(kP3);
  std::ostringstream out;
  write_dimacs(out, c);
  CHECK(out.str() == "p cnf 3 2\n-1 -2 0\n-2 -3 0\n");
  const ClauseSet back = parse_dimacs("c comment\n" + out.str());
  REQUIRE(back.clauses.size() == 2);
  CHECK(back.n == 3);
  CHECK(back.clauses[1].b == Literal{2, true});
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 3 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);
}
