#include "adiamix/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "adiamix/errors.hpp"

namespace adiamix {

namespace {

using cd = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kProbabilityFloor = 1e-30;

void check_dim(const GaugeMatrix& a, const AmplitudeVector& psi) {
  if (static_cast<std::size_t>(psi.size()) != a.dim()) {
    throw InvalidArgument("amplitude vector has dimension " + std::to_string(psi.size()) +
                          ", gauge matrix has " + std::to_string(a.dim()));
  }
}

void check_norm(const AmplitudeVector& in, const AmplitudeVector& out, double tol, const char* where) {
  const double n_in = in.norm();
  const double n_out = out.norm();
  const double drift = std::abs(n_out - n_in) / std::max(n_in, 1e-300);
  if (!std::isfinite(n_out) || drift > tol) {
    std::ostringstream msg;
    msg << where << ": norm drift " << std::scientific << drift << " exceeds " << tol
        << " (|in| = " << n_in << ", |out| = " << n_out << ")";
    throw NumericalError(msg.str());
  }
}

// J_0..J_kmax at x >= 0 by Miller's backward recurrence, normalised with
// J_0 + 2 sum J_{2k} = 1.
std::vector<double> bessel_j_sequence(int kmax, double x) {
  std::vector<double> j(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  const int start = kmax + 40 + static_cast<int>(std::sqrt(40.0 * kmax));
  double above = 0.0;  // J_{k+1}
  double cur = 1.0;    // J_k
  double norm = 0.0;
  for (int k = start; k > 0; --k) {
    const double below = 2.0 * k / x * cur - above;
    above = cur;
    cur = below;
    const int idx = k - 1;
    if (idx <= kmax) j[static_cast<std::size_t>(idx)] = cur;
    if (idx > 0 && idx % 2 == 0) norm += 2.0 * cur;
    if (std::abs(cur) > 1e200) {
      cur *= 1e-200;
      above *= 1e-200;
      norm *= 1e-200;
      for (int i = std::max(idx, 0); i <= kmax; ++i) j[static_cast<std::size_t>(i)] *= 1e-200;
    }
  }
  norm += cur;
  for (double& v : j) v /= norm;
  return j;
}

}  // namespace

GaugeMatrix::GaugeMatrix(const SolutionBasis& basis, const MedianAdjacency& adjacency, double theta)
    : n_(basis.n()),
      theta_(theta),
      hopping_(std::sin(theta) / 2.0),
      diagonal_(static_cast<Eigen::Index>(basis.size())),
      edges_(adjacency.pairs),
      degree_(basis.size(), 0) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw InvalidArgument("theta must lie in [0, pi]");
  }
  const double s2 = std::pow(std::sin(theta / 2.0), 2);
  const double c2 = std::pow(std::cos(theta / 2.0), 2);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int k = basis.cardinality(i);
    diagonal_[static_cast<Eigen::Index>(i)] = -(k * s2 + (n_ - k) * c2);
  }
  for (const auto& [a, b] : edges_) {
    if (a >= basis.size() || b >= basis.size() || a == b) {
      throw InvalidArgument("median edge outside basis");
    }
    ++degree_[a];
    ++degree_[b];
  }
}

AmplitudeVector GaugeMatrix::apply(const AmplitudeVector& x) const {
  AmplitudeVector y = diagonal_.cwiseProduct(x);
  for (const auto& [a, b] : edges_) {
    const auto ia = static_cast<Eigen::Index>(a);
    const auto ib = static_cast<Eigen::Index>(b);
    y[ia] += hopping_ * x[ib];
    y[ib] += hopping_ * x[ia];
  }
  return y;
}

Eigen::MatrixXd GaugeMatrix::dense() const {
  Eigen::MatrixXd m = diagonal_.asDiagonal();
  for (const auto& [a, b] : edges_) {
    m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = hopping_;
    m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = hopping_;
  }
  return m;
}

std::pair<double, double> GaugeMatrix::spectral_bounds() const {
  double lo = 0.0;
  double hi = 0.0;
  const double h = std::abs(hopping_);
  for (std::size_t i = 0; i < dim(); ++i) {
    const double d = diagonal_[static_cast<Eigen::Index>(i)];
    const double r = h * degree_[i];
    lo = i == 0 ? d - r : std::min(lo, d - r);
    hi = i == 0 ? d + r : std::max(hi, d + r);
  }
  return {lo, hi};
}

GaugeMatrix GaugeMatrix::shifted(double c) const {
  GaugeMatrix copy = *this;
  copy.diagonal_.array() += c;
  return copy;
}

GaugeMatrix build_gauge_matrix(const SolutionBasis& basis, const MedianAdjacency& adjacency, double theta) {
  return GaugeMatrix(basis, adjacency, theta);
}

SpectralPropagator::SpectralPropagator(const GaugeMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.dense());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver failed to converge (dim " + std::to_string(a.dim()) + ")");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

AmplitudeVector SpectralPropagator::apply(const AmplitudeVector& psi, double t) const {
  const Eigen::VectorXcd phases = (cd(0.0, t) * eigenvalues_.cast<cd>()).array().exp();
  const Eigen::VectorXcd coeffs = eigenvectors_.transpose().cast<cd>() * psi;
  return eigenvectors_.cast<cd>() * phases.cwiseProduct(coeffs);
}

Eigen::MatrixXcd SpectralPropagator::unitary(double t) const {
  const Eigen::VectorXcd phases = (cd(0.0, t) * eigenvalues_.cast<cd>()).array().exp();
  const Eigen::MatrixXcd v = eigenvectors_.cast<cd>();
  return v * phases.asDiagonal() * v.transpose();
}

AmplitudeVector chebyshev_propagate(const GaugeMatrix& a, const AmplitudeVector& psi, double t,
                                    double series_tolerance) {
  check_dim(a, psi);
  const auto [lo, hi] = a.spectral_bounds();
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const cd global = std::exp(cd(0.0, t * center));
  if (half <= 0.0 || t == 0.0) return global * psi;

  // exp(i z X) = J_0(z) + 2 sum_k i^k J_k(z) T_k(X), z = t*half, X = (A - center)/half.
  const double z = std::abs(t) * half;
  const cd unit = t > 0 ? cd(0.0, 1.0) : cd(0.0, -1.0);
  const int kmax = static_cast<int>(std::ceil(z + 30.0 + 20.0 * std::cbrt(z)));
  const std::vector<double> bessel = bessel_j_sequence(kmax, z);

  auto apply_x = [&](const AmplitudeVector& v) -> AmplitudeVector {
    return (a.apply(v) - center * v) / half;
  };

  AmplitudeVector t_prev = psi;
  AmplitudeVector t_cur = apply_x(psi);
  AmplitudeVector result = bessel[0] * psi + 2.0 * unit * bessel[1] * t_cur;
  cd phase = unit;
  for (int k = 2; k <= kmax; ++k) {
    AmplitudeVector t_next = 2.0 * apply_x(t_cur) - t_prev;
    phase *= unit;
    const double jk = bessel[static_cast<std::size_t>(k)];
    result += 2.0 * phase * jk * t_next;
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
    if (k > z && std::abs(jk) < series_tolerance &&
        (k + 1 > kmax || std::abs(bessel[static_cast<std::size_t>(k + 1)]) < series_tolerance)) {
      break;
    }
  }
  return global * result;
}

AmplitudeVector diffuse(const GaugeMatrix& a, const AmplitudeVector& psi, double t,
                        const PropagationOptions& options) {
  check_dim(a, psi);
  if (!std::isfinite(t)) throw InvalidArgument("diffusion time must be finite");
  if (t == 0.0) return psi;
  const bool dense = options.method == PropagationMethod::Dense ||
                     (options.method == PropagationMethod::Automatic && a.dim() <= options.dense_limit);
  AmplitudeVector out = dense ? SpectralPropagator(a).apply(psi, t)
                              : chebyshev_propagate(a, psi, t, options.series_tolerance);
  check_norm(psi, out, options.norm_tolerance, dense ? "dense propagation" : "Chebyshev propagation");
  return out;
}

AmplitudeVector holonomy_apply(const GaugeMatrix& a, const AmplitudeVector& psi,
                               const PropagationOptions& options) {
  return diffuse(a, psi, kTwoPi, options);
}

Eigen::MatrixXcd holonomy_matrix(const GaugeMatrix& a) {
  return SpectralPropagator(a).unitary(kTwoPi);
}

AmplitudeVector basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InvalidArgument("basis index out of range");
  AmplitudeVector v = AmplitudeVector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return v;
}

AmplitudeVector uniform_state(std::size_t dim) {
  if (dim == 0) throw InvalidArgument("empty basis");
  return AmplitudeVector::Constant(static_cast<Eigen::Index>(dim), cd(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

TrivialProbability trivial_probability(const AmplitudeVector& psi, const SolutionBasis& basis) {
  if (static_cast<std::size_t>(psi.size()) != basis.size()) throw InvalidArgument("dimension mismatch");
  TrivialProbability out;
  for (std::size_t i = 0; i < basis.size() && basis.cardinality(i) <= 1; ++i) {
    out.d_n += std::norm(psi[static_cast<Eigen::Index>(i)]);
  }
  out.c_n = out.d_n / (basis.n() + 1);
  return out;
}

double entropy(const AmplitudeVector& psi) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const double p = std::norm(psi[i]);
    if (p > kProbabilityFloor) s -= p * std::log(p);
  }
  return s;
}

double normalized_entropy(const AmplitudeVector& psi, std::size_t num_solutions) {
  if (num_solutions < 2) throw InvalidArgument("normalized entropy needs at least two solutions");
  return entropy(psi) / std::log(static_cast<double>(num_solutions));
}

std::vector<double> cardinality_probability(const AmplitudeVector& psi, const SolutionBasis& basis) {
  if (static_cast<std::size_t>(psi.size()) != basis.size()) throw InvalidArgument("dimension mismatch");
  std::vector<double> p(static_cast<std::size_t>(basis.n()) + 1, 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    p[static_cast<std::size_t>(basis.cardinality(i))] += std::norm(psi[static_cast<Eigen::Index>(i)]);
  }
  return p;
}

void write_probability_csv(std::ostream& out, const AmplitudeVector& psi, const SolutionBasis& basis) {
  if (static_cast<std::size_t>(psi.size()) != basis.size()) throw InvalidArgument("dimension mismatch");
  out << "index,bitmask,probability\n" << std::setprecision(17);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out << i << ',' << basis[i].bits << ',' << std::norm(psi[static_cast<Eigen::Index>(i)]) << '\n';
  }
}

}  // namespace adiamix
