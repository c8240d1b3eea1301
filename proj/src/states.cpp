#include "steerkit/states.hpp"

#include <cmath>
#include <string>

#include "steerkit/error.hpp"

namespace steerkit {

namespace {

void check_mixing_parameter(double p, const char* family) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument(std::string(family) + ": mixing parameter must lie in [0, 1]");
  }
}

HermitianMatrix projector(const Eigen::Vector4cd& v) {
  return HermitianMatrix::symmetrized(v * v.adjoint());
}

Eigen::Vector4cd basis_vector(int i) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(i) = 1.0;
  return v;
}

}  // namespace

TwoQubitState::TwoQubitState(HermitianMatrix rho) : rho_(std::move(rho)) {
  if (rho_.dim() != 4) throw InvalidArgument("TwoQubitState: expected a 4x4 density matrix");
  if (std::abs(rho_.trace() - 1.0) > kStateTol) {
    throw InvalidArgument("TwoQubitState: trace must be 1");
  }
  if (min_eigenvalue(rho_) < -kStateTol) {
    throw InvalidArgument("TwoQubitState: density matrix is not positive semidefinite");
  }
}

Eigen::Matrix3d TwoQubitState::correlation_matrix() const {
  const auto& p = pauli::xyz();
  Eigen::Matrix3d t;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) t(j, k) = rho_.inner(kron(p[j], p[k]));
  return t;
}

Eigen::Vector4cd singlet_vector() {
  const double s = 1.0 / std::sqrt(2.0);
  return Eigen::Vector4cd(0.0, -s, s, 0.0);
}

Eigen::Vector4cd triplet_vector() {
  const double s = 1.0 / std::sqrt(2.0);
  return Eigen::Vector4cd(0.0, s, s, 0.0);
}

TwoQubitState werner(double p) {
  check_mixing_parameter(p, "werner");
  return TwoQubitState(p * projector(singlet_vector()) +
                       (1.0 - p) * 0.25 * HermitianMatrix::identity(4));
}

TwoQubitState horodecki(double p) {
  check_mixing_parameter(p, "horodecki");
  return TwoQubitState(p * projector(singlet_vector()) + (1.0 - p) * projector(basis_vector(0)));
}

TwoQubitState bell_diagonal_rank2(double p) {
  check_mixing_parameter(p, "bell_diagonal_rank2");
  return TwoQubitState(p * projector(singlet_vector()) + (1.0 - p) * projector(triplet_vector()));
}

TwoQubitState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return TwoQubitState(HermitianMatrix::symmetrized(rho));
}

Povm axis_measurement(const Eigen::Vector3d& n) {
  const double len = n.norm();
  if (std::abs(len - 1.0) > 1e-10) {
    throw InvalidArgument("axis_measurement: direction must be a unit vector");
  }
  const BlochVector v = BlochVector::from(n);
  const BlochVector minus = BlochVector::from(-n);
  return {state_from_bloch(v), state_from_bloch(minus)};
}

MeasurementSet pauli_triad() {
  return {axis_measurement(Eigen::Vector3d::UnitX()), axis_measurement(Eigen::Vector3d::UnitY()),
          axis_measurement(Eigen::Vector3d::UnitZ())};
}

LhsModel werner_lhs_oracle(double p, double phi) {
  if (!(p >= 0.0) || p > 1.0 / std::sqrt(3.0) + 1e-12) {
    throw DomainError("werner_lhs_oracle: hidden states exist only for 0 <= p <= 1/sqrt(3)");
  }
  const Eigen::Vector3d axes[3] = {{std::cos(phi), std::sin(phi), 0.0},
                                   {-std::sin(phi), std::cos(phi), 0.0},
                                   {0.0, 0.0, 1.0}};
  LhsModel model{3, 2, {}};
  for (const auto& strategy : deterministic_strategies(3, 2)) {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    for (int x = 0; x < 3; ++x) v += (strategy.outcomes[static_cast<std::size_t>(x)] == 0 ? -p : p) * axes[x];
    model.hidden_states.push_back(state_from_bloch(BlochVector::from(v), 1.0 / 8.0));
  }
  return model;
}

}  // namespace steerkit
