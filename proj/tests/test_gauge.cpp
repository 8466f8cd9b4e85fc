#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "adiamix/errors.hpp"
#include "adiamix/gauge.hpp"
#include "adiamix/rng.hpp"
#include "oracles.hpp"

using namespace adiamix;
using std::numbers::pi;

namespace {

struct Instance {
  SolutionBasis basis;
  MedianAdjacency adjacency;
  explicit Instance(const Graph& g) : basis(enumerate_independent_sets(g)), adjacency(median_adjacency(basis)) {}
  GaugeMatrix gauge(double theta) const { return GaugeMatrix(basis, adjacency, theta); }
};

const Graph kK2(2, {{0, 1}});
const Graph kP3(3, {{0, 1}, {1, 2}});

// Closed form for K2 at theta = pi/2: the median graph is the 3-node path
// centred on the empty set, with hopping 1/2 and eigenvalues 0, +-1/sqrt(2).
const double kK2Empty = std::pow(std::cos(pi * std::sqrt(2.0)), 2);
const double kK2Single = std::pow(std::sin(pi * std::sqrt(2.0)), 2) / 2.0;

Instance random_instance(Pcg32& rng, int max_n) {
  const int n = 2 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(max_n - 1)));
  const int m = static_cast<int>(rng.bounded(max_edges(n) + 1));
  return Instance(generate_random_graph(n, m, rng.next_u64()));
}

}  // namespace

TEST_CASE("K2 gauge matrix at theta = pi/2") {
  const Instance k2(kK2);
  const Eigen::MatrixXd a = k2.gauge(pi / 2).dense();
  Eigen::MatrixXd expected(3, 3);
  expected << -1.0, 0.5, 0.5,
              0.5, -1.0, 0.0,
              0.5, 0.0, -1.0;
  CHECK((a - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("theta = 0 leaves only the integer diagonal") {
  const Instance p3(kP3);
  const GaugeMatrix g = p3.gauge(0.0);
  const Eigen::MatrixXd a = g.dense();
  for (std::size_t i = 0; i < p3.basis.size(); ++i) {
    CHECK(a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) == -(3 - p3.basis.cardinality(i)));
  }
  CHECK((a - Eigen::MatrixXd(a.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(p3.gauge(pi).hopping()) < 1e-16);
}

TEST_CASE("P3 at theta = pi/2 is -(3/2) I + adjacency / 2") {
  const Instance p3(kP3);
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(5, 5);
  for (const auto& [a, b] : p3.adjacency.pairs) {
    adj(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = 1.0;
    adj(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = 1.0;
  }
  const Eigen::MatrixXd expected = -1.5 * Eigen::MatrixXd::Identity(5, 5) + 0.5 * adj;
  CHECK((p3.gauge(pi / 2).dense() - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("gauge matrix structure on random bases") {
  Pcg32 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = random_instance(rng, 10);
    const double theta = pi * rng.uniform();
    const Eigen::MatrixXd a = inst.gauge(theta).dense();
    CHECK(a == a.transpose());
    const Eigen::MatrixXd half = inst.gauge(pi / 2).dense();
    for (Eigen::Index i = 0; i < half.rows(); ++i) CHECK(half(i, i) == doctest::Approx(-inst.basis.n() / 2.0));
    const auto [lo, hi] = inst.gauge(theta).spectral_bounds();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    CHECK(es.eigenvalues().minCoeff() >= lo - 1e-12);
    CHECK(es.eigenvalues().maxCoeff() <= hi + 1e-12);
  }
  CHECK_THROWS_AS(Instance(kK2).gauge(-0.1), InvalidArgument);
  CHECK_THROWS_AS(Instance(kK2).gauge(3.2), InvalidArgument);
}

TEST_CASE("K2 holonomy matches the closed form") {
  const Instance k2(kK2);
  for (const auto method : {PropagationMethod::Dense, PropagationMethod::Chebyshev}) {
    PropagationOptions opt;
    opt.method = method;
    const AmplitudeVector psi = holonomy_apply(k2.gauge(pi / 2), basis_state(3, 0), opt);
    CHECK(std::norm(psi[0]) == doctest::Approx(kK2Empty).epsilon(1e-12));
    CHECK(std::norm(psi[1]) == doctest::Approx(kK2Single).epsilon(1e-12));
    CHECK(std::norm(psi[2]) == doctest::Approx(kK2Single).epsilon(1e-12));
    CHECK(trivial_probability(psi, k2.basis).d_n == doctest::Approx(1.0));
  }
  // Oracle: Pade matrix exponential.
  const Eigen::MatrixXcd w = oracle::expm_i(k2.gauge(pi / 2).dense(), 2 * pi);
  CHECK((holonomy_matrix(k2.gauge(pi / 2)) - w).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("integer spectra give identity holonomy up to a phase") {
  SUBCASE("theta = 0 on random bases") {
    Pcg32 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const Instance inst = random_instance(rng, 8);
      const AmplitudeVector psi0 = uniform_state(inst.basis.size());
      const AmplitudeVector psi = holonomy_apply(inst.gauge(0.0), psi0);
      CHECK(std::abs(std::abs(psi0.dot(psi)) - 1.0) < 1e-10);
    }
  }
  SUBCASE("edgeless graphs at theta = pi/2") {
    for (int n = 1; n <= 4; ++n) {
      const Instance cube(Graph(n, {}));
      const GaugeMatrix a = cube.gauge(pi / 2);
      const Eigen::MatrixXcd w = oracle::expm_i(a.dense(), 2 * pi);
      const std::complex<double> phase = w(0, 0);
      CHECK(std::abs(std::abs(phase) - 1.0) < 1e-10);
      CHECK((w - phase * Eigen::MatrixXcd::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff() < 1e-9);
      const AmplitudeVector psi = holonomy_apply(a, basis_state(cube.basis.size(), 1));
      CHECK(std::norm(psi[1]) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("diffusion") {
  const Instance inst(generate_random_graph(9, 9, 21));
  const GaugeMatrix a = inst.gauge(1.2);
  const AmplitudeVector psi0 = basis_state(inst.basis.size(), 0);

  CHECK(diffuse(a, psi0, 0.0) == psi0);
  const AmplitudeVector loop = holonomy_apply(a, psi0);
  CHECK((diffuse(a, psi0, 2 * pi) - loop).cwiseAbs().maxCoeff() < 1e-9);

  AmplitudeVector three = psi0;
  for (int i = 0; i < 3; ++i) three = holonomy_apply(a, three);
  CHECK((diffuse(a, psi0, 6 * pi) - three).cwiseAbs().maxCoeff() < 1e-9);

  PropagationOptions cheb;
  cheb.method = PropagationMethod::Chebyshev;
  const AmplitudeVector fwd = diffuse(a, psi0, 7.3, cheb);
  CHECK((diffuse(a, fwd, -7.3, cheb) - psi0).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(diffuse(a, psi0, std::nan("")), InvalidArgument);
  CHECK_THROWS_AS(diffuse(a, basis_state(3, 0), 1.0), InvalidArgument);
}

TEST_CASE("unitarity and norm conservation") {
  Pcg32 rng(99);
  for (int trial = 0; trial < 12; ++trial) {
    const Instance inst = random_instance(rng, 12);
    if (inst.basis.size() > 500) continue;
    const GaugeMatrix a = inst.gauge(pi * rng.uniform());
    const Eigen::MatrixXcd w = holonomy_matrix(a);
    const auto dim = static_cast<Eigen::Index>(inst.basis.size());
    CHECK((w.adjoint() * w - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);

    PropagationOptions cheb;
    cheb.method = PropagationMethod::Chebyshev;
    const AmplitudeVector psi = diffuse(a, uniform_state(inst.basis.size()), 20 * pi, cheb);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-8);
  }
}

TEST_CASE("theta = 0 and pi act as the identity on probabilities") {
  Pcg32 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const Instance inst = random_instance(rng, 9);
    for (const double theta : {0.0, pi}) {
      const Eigen::MatrixXcd w = holonomy_matrix(inst.gauge(theta));
      const Eigen::MatrixXd prob = w.cwiseAbs2();
      CHECK((prob - Eigen::MatrixXd::Identity(prob.rows(), prob.cols())).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("dense and Chebyshev propagation agree with the Pade oracle") {
  Pcg32 rng(123);
  PropagationOptions dense;
  dense.method = PropagationMethod::Dense;
  PropagationOptions cheb;
  cheb.method = PropagationMethod::Chebyshev;
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = random_instance(rng, 11);
    if (inst.basis.size() > 500) continue;
    const GaugeMatrix a = inst.gauge(pi * rng.uniform());
    const AmplitudeVector psi0 = basis_state(inst.basis.size(), 0);
    for (const double t : {0.7, 2 * pi, 13.0}) {
      const AmplitudeVector d = diffuse(a, psi0, t, dense);
      const AmplitudeVector c = diffuse(a, psi0, t, cheb);
      const AmplitudeVector o = oracle::expm_i(a.dense(), t) * psi0;
      CHECK((d - c).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((d - o).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("diagonal shifts only change a global phase") {
  const Instance inst(generate_random_graph(10, 10, 8));
  const GaugeMatrix a = inst.gauge(pi / 2);
  const AmplitudeVector psi0 = basis_state(inst.basis.size(), 0);
  const Eigen::VectorXd p = holonomy_apply(a, psi0).cwiseAbs2();
  for (const double c : {-3.7, 0.25, 11.0}) {
    const Eigen::VectorXd q = holonomy_apply(a.shifted(c), psi0).cwiseAbs2();
    CHECK((p - q).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("trivial probability, entropy and cardinality distribution") {
  const Instance p3(kP3);
  const AmplitudeVector empty = basis_state(5, 0);
  const TrivialProbability t0 = trivial_probability(empty, p3.basis);
  CHECK(t0.d_n == 1.0);
  CHECK(t0.c_n == doctest::Approx(0.25));
  CHECK(entropy(empty) == 0.0);
  CHECK(cardinality_probability(empty, p3.basis) == std::vector<double>{1.0, 0.0, 0.0, 0.0});

  const AmplitudeVector flat = uniform_state(5);
  const TrivialProbability tu = trivial_probability(flat, p3.basis);
  CHECK(tu.d_n == doctest::Approx(4.0 / 5.0));
  CHECK(tu.c_n == doctest::Approx(1.0 / 5.0));
  CHECK(entropy(flat) == doctest::Approx(std::log(5.0)));
  CHECK(normalized_entropy(flat, 5) == doctest::Approx(1.0));
  const auto pk = cardinality_probability(flat, p3.basis);
  CHECK(pk[0] == doctest::Approx(0.2));
  CHECK(pk[1] == doctest::Approx(0.6));
  CHECK(pk[2] == doctest::Approx(0.2));

  const Instance k2(kK2);
  const AmplitudeVector loop = holonomy_apply(k2.gauge(pi / 2), basis_state(3, 0));
  const double s_exact = -(kK2Empty * std::log(kK2Empty) + 2 * kK2Single * std::log(kK2Single));
  CHECK(entropy(loop) == doctest::Approx(s_exact).epsilon(1e-10));
  CHECK(normalized_entropy(loop, 3) == doctest::Approx(s_exact / std::log(3.0)).epsilon(1e-10));
  CHECK(normalized_entropy(loop, 3) == doctest::Approx(0.81917).epsilon(1e-5));
  CHECK_THROWS_AS(normalized_entropy(empty, 1), InvalidArgument);
}

TEST_CASE("probability CSV") {
  const Instance k2(kK2);
  std::ostringstream out;
  write_probability_csv(out, basis_state(3, 2), k2.basis);
  CHECK(out.str() == "index,bitmask,probability\n0,0,0\n1,1,0\n2,2,1\n");
}
