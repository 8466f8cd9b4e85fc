#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "adiamix/solution_space.hpp"

namespace adiamix {

/// Complex amplitudes a_j over the solution basis.
using AmplitudeVector = Eigen::VectorXcd;

/// Real symmetric gauge matrix on the median graph of solutions:
///   diagonal  -(k sin^2(theta/2) + (n-k) cos^2(theta/2)),  k = |solution|
///   hopping   sin(theta)/2 on every median edge.
/// Stored sparse (diagonal vector + sorted edge list). Immutable.
class GaugeMatrix {
 public:
  GaugeMatrix(const SolutionBasis& basis, const MedianAdjacency& adjacency, double theta);

  std::size_t dim() const { return static_cast<std::size_t>(diagonal_.size()); }
  int n() const { return n_; }
  double theta() const { return theta_; }
  const Eigen::VectorXd& diagonal() const { return diagonal_; }
  double hopping() const { return hopping_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  /// y = A x
  AmplitudeVector apply(const AmplitudeVector& x) const;
  Eigen::MatrixXd dense() const;
  /// Gershgorin interval containing the spectrum.
  std::pair<double, double> spectral_bounds() const;
  /// Copy with c added to every diagonal entry.
  GaugeMatrix shifted(double c) const;

 private:
  int n_ = 0;
  double theta_ = 0.0;
  double hopping_ = 0.0;
  Eigen::VectorXd diagonal_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<int> degree_;
};

GaugeMatrix build_gauge_matrix(const SolutionBasis& basis, const MedianAdjacency& adjacency, double theta);

enum class PropagationMethod { Automatic, Dense, Chebyshev };

struct PropagationOptions {
  PropagationMethod method = PropagationMethod::Automatic;
  /// Automatic uses dense eigendecomposition up to this dimension.
  std::size_t dense_limit = 512;
  /// Chebyshev series truncation threshold on |J_k|.
  double series_tolerance = 1e-14;
  /// Allowed relative norm drift before a NumericalError is raised.
  double norm_tolerance = 1e-8;
};

/// Cached eigendecomposition A = V diag(lambda) V^T for repeated propagation.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const GaugeMatrix& a);

  /// exp(i t A) psi
  AmplitudeVector apply(const AmplitudeVector& psi, double t) const;
  /// exp(i t A) as a dense matrix.
  Eigen::MatrixXcd unitary(double t) const;
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// exp(i t A) psi by a Chebyshev expansion in A rescaled to [-1, 1], with Bessel
/// coefficients from Miller's backward recurrence. Only needs matrix-vector products.
AmplitudeVector chebyshev_propagate(const GaugeMatrix& a, const AmplitudeVector& psi, double t,
                                    double series_tolerance = 1e-14);

/// Quantum diffusion on the median graph: exp(i t A) psi.
AmplitudeVector diffuse(const GaugeMatrix& a, const AmplitudeVector& psi, double t,
                        const PropagationOptions& options = {});

/// One adiabatic loop: W psi with W = exp(2 pi i A).
AmplitudeVector holonomy_apply(const GaugeMatrix& a, const AmplitudeVector& psi,
                               const PropagationOptions& options = {});

/// Dense W = exp(2 pi i A).
Eigen::MatrixXcd holonomy_matrix(const GaugeMatrix& a);

AmplitudeVector basis_state(std::size_t dim, std::size_t index);
AmplitudeVector uniform_state(std::size_t dim);

struct TrivialProbability {
  double d_n = 0.0;  ///< total weight on the n+1 trivial solutions
  double c_n = 0.0;  ///< d_n / (n+1)
};

TrivialProbability trivial_probability(const AmplitudeVector& psi, const SolutionBasis& basis);

/// S = -sum p ln p over |a_j|^2; probabilities below 1e-30 contribute nothing.
double entropy(const AmplitudeVector& psi);
/// S / ln(N_s). Requires N_s >= 2.
double normalized_entropy(const AmplitudeVector& psi, std::size_t num_solutions);

/// P_k: total probability on solutions of cardinality k, k = 0..n.
std::vector<double> cardinality_probability(const AmplitudeVector& psi, const SolutionBasis& basis);

/// CSV "index,bitmask,probability".
void write_probability_csv(std::ostream& out, const AmplitudeVector& psi, const SolutionBasis& basis);

}  // namespace adiamix
