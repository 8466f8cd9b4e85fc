#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <vector>

#include "adiamix/gauge.hpp"
#include "adiamix/graph.hpp"
#include "adiamix/solution_space.hpp"

namespace adiamix {

/// Amplitudes over the 2^n computational basis. Bit j of the index is 1 when
/// spin j points up (x_j = 1), so index 0 is the all-down state (empty set).
using FullStateVector = Eigen::VectorXcd;

inline constexpr int kDefaultFullSimulationQubits = 12;

/// Spin quantisation axis after sweeping phi along the loop: z-hat rotated by
/// phi about the tilted axis (sin theta, 0, cos theta).
Eigen::Vector3d loop_direction(double theta, double phi);

/// Polar/azimuthal angles of a unit vector. Azimuth is pinned to 0 at the poles.
struct RotationAngles {
  double polar = 0.0;
  double azimuth = 0.0;
};
RotationAngles rotation_angles(const Eigen::Vector3d& r);

/// Single-spin rotation taking sigma_z to r.sigma; Hermitian and self-inverse.
/// Rows/columns are ordered (up, down).
Eigen::Matrix2cd spin_rotation(const RotationAngles& angles);

/// H = Delta * sum_<ij> (tau_i + tau_j + tau_i tau_j), tau = r.sigma, realised
/// as U H0 U with U the product of spin_rotation on every qubit and H0 the
/// diagonal problem Hamiltonian.
class SpinHamiltonian {
 public:
  SpinHamiltonian(const Graph& g, const Eigen::Vector3d& r, double delta,
                  int max_qubits = kDefaultFullSimulationQubits);

  int n() const { return n_; }
  double delta() const { return delta_; }
  const Eigen::Vector3d& direction() const { return r_; }
  /// Re-points the quantisation axis; the problem energies are reused.
  void set_direction(const Eigen::Vector3d& r);
  std::size_t dim() const { return std::size_t{1} << n_; }
  /// Diagonal of H0 over the computational basis.
  const Eigen::VectorXd& problem_energies() const { return energies_; }

  FullStateVector apply(const FullStateVector& psi) const;
  /// exp(-i H dt) psi, exact for the frozen direction.
  FullStateVector propagate(const FullStateVector& psi, double dt) const;
  Eigen::MatrixXcd dense() const;

 private:
  void rotate_all(FullStateVector& psi) const;

  int n_;
  double delta_;
  Eigen::Vector3d r_;
  Eigen::Matrix2cd rotation_;
  Eigen::VectorXd energies_;
};

SpinHamiltonian build_hamiltonian(const Graph& g, const Eigen::Vector3d& r, double delta,
                                  int max_qubits = kDefaultFullSimulationQubits);

/// max(1000, ceil(40 T Delta)).
int default_steps(double total_time, double delta);

/// Sweeps phi = 2 pi t / T once around the loop. Each of `steps` slices applies
/// the exact propagator of the Hamiltonian frozen at the slice midpoint.
FullStateVector evolve_adiabatic(const Graph& g, double theta, double delta, double total_time, int steps,
                                 const FullStateVector& psi0, int max_qubits = kDefaultFullSimulationQubits);

/// All-down state |0...0>.
FullStateVector all_down_state(int n);

/// Places solution-basis amplitudes at their bitmask positions in the 2^n space.
FullStateVector embed_in_full_space(const AmplitudeVector& psi, const SolutionBasis& basis);

struct ProjectionResult {
  double leakage = 0.0;   ///< 1 - weight inside the solution subspace
  double fidelity = 0.0;  ///< |<pred|normalised projection>|
  bool fully_leaked = false;
};

ProjectionResult ground_projection_fidelity(const FullStateVector& psi_full, const SolutionBasis& basis,
                                            const AmplitudeVector& psi_pred);

struct ConvergencePoint {
  double total_time = 0.0;
  int steps = 0;
  double leakage = 0.0;
  double fidelity = 0.0;
};

/// Full loop from the all-down state at each T, compared with the holonomy prediction.
std::vector<ConvergencePoint> convergence_study(const Graph& g, double theta, double delta,
                                                std::span<const double> total_times, int steps = 0,
                                                int max_qubits = kDefaultFullSimulationQubits);

/// CSV "T,steps,leakage,fidelity".
void write_convergence_csv(std::ostream& out, std::span<const ConvergencePoint> points);

}  // namespace adiamix
