#include "adiamix/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "adiamix/errors.hpp"

namespace adiamix {

namespace {

using cd = std::complex<double>;

void check_qubits(int n, int max_qubits) {
  if (n > max_qubits) {
    throw CapacityError("full state-vector simulation limited to " + std::to_string(max_qubits) +
                        " qubits, got n = " + std::to_string(n));
  }
}

}  // namespace

Eigen::Vector3d loop_direction(double theta, double phi) {
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double cp = std::cos(phi);
  const double sp = std::sin(phi);
  return {st * ct * (1.0 - cp), -st * sp, cp + ct * ct * (1.0 - cp)};
}

RotationAngles rotation_angles(const Eigen::Vector3d& r) {
  RotationAngles a;
  a.polar = std::acos(std::clamp(r.z(), -1.0, 1.0));
  a.azimuth = std::sin(a.polar) < 1e-12 ? 0.0 : std::atan2(r.y(), r.x());
  return a;
}

Eigen::Matrix2cd spin_rotation(const RotationAngles& angles) {
  const double c = std::cos(angles.polar / 2.0);
  const double s = std::sin(angles.polar / 2.0);
  const cd e = std::polar(1.0, angles.azimuth);
  Eigen::Matrix2cd v;
  v << c, std::conj(e) * s,
       e * s, -c;
  return v;
}

SpinHamiltonian::SpinHamiltonian(const Graph& g, const Eigen::Vector3d& r, double delta, int max_qubits)
    : n_(g.n()), delta_(delta) {
  check_qubits(n_, max_qubits);
  set_direction(r);
  const std::size_t dim = std::size_t{1} << n_;
  energies_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double e = 0.0;
    for (const auto& [u, v] : g.edges()) {
      const double su = (idx >> u) & 1U ? 1.0 : -1.0;
      const double sv = (idx >> v) & 1U ? 1.0 : -1.0;
      e += su + sv + su * sv;
    }
    energies_[static_cast<Eigen::Index>(idx)] = delta * e;
  }
}

void SpinHamiltonian::set_direction(const Eigen::Vector3d& r) {
  if (std::abs(r.norm() - 1.0) > 1e-9) throw InvalidArgument("direction must be a unit vector");
  r_ = r;
  rotation_ = spin_rotation(rotation_angles(r));
}

void SpinHamiltonian::rotate_all(FullStateVector& psi) const {
  const cd v_uu = rotation_(0, 0);
  const cd v_ud = rotation_(0, 1);
  const cd v_du = rotation_(1, 0);
  const cd v_dd = rotation_(1, 1);
  const auto dim = static_cast<std::size_t>(psi.size());
  for (int q = 0; q < n_; ++q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const auto down = static_cast<Eigen::Index>(i);
      const auto up = static_cast<Eigen::Index>(i | bit);
      const cd a_up = psi[up];
      const cd a_down = psi[down];
      psi[up] = v_uu * a_up + v_ud * a_down;
      psi[down] = v_du * a_up + v_dd * a_down;
    }
  }
}

FullStateVector SpinHamiltonian::apply(const FullStateVector& psi) const {
  FullStateVector out = psi;
  rotate_all(out);
  out = energies_.cast<cd>().cwiseProduct(out);
  rotate_all(out);
  return out;
}

FullStateVector SpinHamiltonian::propagate(const FullStateVector& psi, double dt) const {
  FullStateVector out = psi;
  rotate_all(out);
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] *= std::polar(1.0, -energies_[i] * dt);
  rotate_all(out);
  return out;
}

Eigen::MatrixXcd SpinHamiltonian::dense() const {
  const auto dim = static_cast<Eigen::Index>(this->dim());
  Eigen::MatrixXcd h(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    FullStateVector e = FullStateVector::Zero(dim);
    e[j] = 1.0;
    h.col(j) = apply(e);
  }
  return h;
}

SpinHamiltonian build_hamiltonian(const Graph& g, const Eigen::Vector3d& r, double delta, int max_qubits) {
  return SpinHamiltonian(g, r, delta, max_qubits);
}

int default_steps(double total_time, double delta) {
  return std::max(1000, static_cast<int>(std::ceil(40.0 * total_time * std::abs(delta))));
}

FullStateVector evolve_adiabatic(const Graph& g, double theta, double delta, double total_time, int steps,
                                 const FullStateVector& psi0, int max_qubits) {
  check_qubits(g.n(), max_qubits);
  if (steps < 1) throw InvalidArgument("steps must be >= 1");
  if (!(total_time > 0.0)) throw InvalidArgument("total time must be positive");
  if (psi0.size() != (Eigen::Index{1} << g.n())) throw InvalidArgument("initial state has wrong dimension");
  const double dt = total_time / steps;
  SpinHamiltonian h(g, Eigen::Vector3d::UnitZ(), delta, max_qubits);
  FullStateVector psi = psi0;
  for (int k = 0; k < steps; ++k) {
    const double phi = 2.0 * std::numbers::pi * (k + 0.5) / steps;
    h.set_direction(loop_direction(theta, phi));
    psi = h.propagate(psi, dt);
  }
  return psi;
}

FullStateVector all_down_state(int n) {
  FullStateVector psi = FullStateVector::Zero(Eigen::Index{1} << n);
  psi[0] = 1.0;
  return psi;
}

FullStateVector embed_in_full_space(const AmplitudeVector& psi, const SolutionBasis& basis) {
  if (static_cast<std::size_t>(psi.size()) != basis.size()) throw InvalidArgument("dimension mismatch");
  FullStateVector full = FullStateVector::Zero(Eigen::Index{1} << basis.n());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    full[static_cast<Eigen::Index>(basis[i].bits)] = psi[static_cast<Eigen::Index>(i)];
  }
  return full;
}

ProjectionResult ground_projection_fidelity(const FullStateVector& psi_full, const SolutionBasis& basis,
                                            const AmplitudeVector& psi_pred) {
  if (psi_full.size() != (Eigen::Index{1} << basis.n()) ||
      static_cast<std::size_t>(psi_pred.size()) != basis.size()) {
    throw InvalidArgument("dimension mismatch");
  }
  AmplitudeVector projected(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    projected[static_cast<Eigen::Index>(i)] = psi_full[static_cast<Eigen::Index>(basis[i].bits)];
  }
  const double inside = projected.squaredNorm() / psi_full.squaredNorm();
  ProjectionResult out;
  out.leakage = std::max(0.0, 1.0 - inside);
  if (inside < 1e-14) {
    out.fully_leaked = true;
    out.fidelity = 0.0;
    return out;
  }
  out.fidelity = std::abs(psi_pred.dot(projected)) / (projected.norm() * psi_pred.norm());
  return out;
}

std::vector<ConvergencePoint> convergence_study(const Graph& g, double theta, double delta,
                                                std::span<const double> total_times, int steps,
                                                int max_qubits) {
  check_qubits(g.n(), max_qubits);
  const SolutionBasis basis = enumerate_independent_sets(g);
  const GaugeMatrix gauge(basis, median_adjacency(basis), theta);
  const AmplitudeVector predicted = holonomy_apply(gauge, basis_state(basis.size(), 0));
  std::vector<ConvergencePoint> points;
  for (const double T : total_times) {
    ConvergencePoint p;
    p.total_time = T;
    p.steps = steps > 0 ? steps : default_steps(T, delta);
    const FullStateVector out = evolve_adiabatic(g, theta, delta, T, p.steps, all_down_state(g.n()), max_qubits);
    const ProjectionResult r = ground_projection_fidelity(out, basis, predicted);
    p.leakage = r.leakage;
    p.fidelity = r.fidelity;
    points.push_back(p);
  }
  return points;
}

void write_convergence_csv(std::ostream& out, std::span<const ConvergencePoint> points) {
  out << "T,steps,leakage,fidelity\n" << std::setprecision(12);
  for (const auto& p : points) out << p.total_time << ',' << p.steps << ',' << p.leakage << ',' << p.fidelity << '\n';
}

}  // namespace adiamix
