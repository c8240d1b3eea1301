#pragma once

// Two-qubit state families and measurement primitives.
// Basis ordering is |00>, |01>, |10>, |11> (Alice first) throughout.

#include <random>

#include "steerkit/assemblage.hpp"
#include "steerkit/linalg.hpp"

namespace steerkit {

inline constexpr double kStateTol = 1e-10;

class TwoQubitState {
 public:
  /// Throws InvalidArgument unless rho is 4x4, PSD within -1e-10 and unit trace within 1e-10.
  explicit TwoQubitState(HermitianMatrix rho);

  const HermitianMatrix& matrix() const { return rho_; }
  HermitianMatrix alice() const { return partial_trace_B(rho_); }
  HermitianMatrix bob() const { return partial_trace_A(rho_); }
  /// T_jk = tr[rho sigma_j (x) sigma_k]
  Eigen::Matrix3d correlation_matrix() const;

  friend bool operator==(const TwoQubitState& a, const TwoQubitState& b) {
    return a.rho_.matrix() == b.rho_.matrix();
  }

 private:
  HermitianMatrix rho_;
};

/// (|10> - |01>) / sqrt 2
Eigen::Vector4cd singlet_vector();
/// (|10> + |01>) / sqrt 2
Eigen::Vector4cd triplet_vector();

/// p |S><S| + (1 - p) 1/4
TwoQubitState werner(double p);
/// p |S><S| + (1 - p) |00><00|
TwoQubitState horodecki(double p);
/// p |S><S| + (1 - p) |T><T|
TwoQubitState bell_diagonal_rank2(double p);

/// Seeded random mixed state rho = G G^dagger / tr(G G^dagger), G complex Ginibre 4x4.
TwoQubitState random_state(std::mt19937_64& rng);

/// Dichotomic projective measurement along unit vector n: outcome 0 is the
/// projector onto +n, outcome 1 onto -n.
Povm axis_measurement(const Eigen::Vector3d& n);

/// Projective measurements along x, y, z.
MeasurementSet pauli_triad();

/// Eight-state LHS model reproducing werner(p) under the triad rotated by phi
/// about z. Hidden state lambda (lexicographic) has Bloch vector
/// p * sum_x s(lambda_x) a_x with s(0) = -1, s(1) = +1 and trace 1/8.
/// Throws DomainError for p > 1/sqrt(3).
LhsModel werner_lhs_oracle(double p, double phi);

}  // namespace steerkit
