#pragma once

// Dense complex Hermitian linear algebra for qubit-scale matrices.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

namespace steerkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTol = 1e-12;

/// Dense Hermitian matrix. Construction checks M = M^dagger to within
/// kHermitianTol (max entry deviation) and stores the symmetrized value.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  /// Symmetrizes without the tolerance check. For results of arithmetic
  /// that is Hermitian by construction.
  static HermitianMatrix symmetrized(const ComplexMatrix& m);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  HermitianMatrix operator-() const { return symmetrized(-m_); }

  /// Hilbert-Schmidt inner product tr(A B), real for Hermitian arguments.
  double inner(const HermitianMatrix& o) const;

 private:
  ComplexMatrix m_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Eigen::Vector3d vec() const { return {x, y, z}; }
  static BlochVector from(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }
  double norm() const { return vec().norm(); }
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // orthonormal columns, matching values
};

namespace pauli {
HermitianMatrix I();
HermitianMatrix X();
HermitianMatrix Y();
HermitianMatrix Z();
/// {X, Y, Z}
const std::array<HermitianMatrix, 3>& xyz();
}  // namespace pauli

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Analytic for dim 2, cyclic Jacobi on the real symmetric embedding otherwise.
EigenDecomposition eig_hermitian(const HermitianMatrix& m);
std::vector<double> eigenvalues(const HermitianMatrix& m);

double trace_norm(const HermitianMatrix& m);
double operator_norm(const HermitianMatrix& m);
double trace_distance(const HermitianMatrix& r, const HermitianMatrix& s);
double min_eigenvalue(const HermitianMatrix& m);

/// tr_A of a two-qubit operator in |00>,|01>,|10>,|11> ordering.
HermitianMatrix partial_trace_A(const HermitianMatrix& rho_ab);
HermitianMatrix partial_trace_B(const HermitianMatrix& rho_ab);

/// Bloch vector of rho / tr(rho). Throws for (numerically) zero trace.
BlochVector bloch_from_state(const HermitianMatrix& rho);
/// weight * (1 + v.sigma) / 2
HermitianMatrix state_from_bloch(const BlochVector& v, double weight = 1.0);

/// Eigenvalues (descending) of a real symmetric matrix by cyclic Jacobi sweeps.
/// Eigenvectors are written to `vectors` when non-null.
std::vector<double> jacobi_eigen(Eigen::MatrixXd a, Eigen::MatrixXd* vectors = nullptr);

}  // namespace steerkit
