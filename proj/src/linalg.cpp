#include "steerkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "steerkit/error.hpp"

namespace steerkit {

namespace {

double max_antihermitian_deviation(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidArgument("HermitianMatrix: matrix must be square and non-empty");
  }
  const double dev = max_antihermitian_deviation(m);
  if (!(dev <= kHermitianTol)) {
    throw InvalidArgument("HermitianMatrix: input is not Hermitian (deviation " +
                          std::to_string(dev) + ")");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("HermitianMatrix: matrix must be square");
  }
  HermitianMatrix h;
  h.m_ = 0.5 * (m + m.adjoint());
  return h;
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return symmetrized(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return symmetrized(ComplexMatrix::Zero(dim, dim));
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  if (o.dim() != dim()) throw InvalidArgument("HermitianMatrix: dimension mismatch");
  m_ += o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  if (o.dim() != dim()) throw InvalidArgument("HermitianMatrix: dimension mismatch");
  m_ -= o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

double HermitianMatrix::inner(const HermitianMatrix& o) const {
  if (o.dim() != dim()) throw InvalidArgument("HermitianMatrix: dimension mismatch");
  return (m_.conjugate().cwiseProduct(o.m_)).sum().real();
}

namespace pauli {

HermitianMatrix I() { return HermitianMatrix::identity(2); }

HermitianMatrix X() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return HermitianMatrix(m);
}

HermitianMatrix Y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return HermitianMatrix(m);
}

HermitianMatrix Z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return HermitianMatrix(m);
}

const std::array<HermitianMatrix, 3>& xyz() {
  static const std::array<HermitianMatrix, 3> ops{X(), Y(), Z()};
  return ops;
}

}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrized(kron(a.matrix(), b.matrix()));
}

std::vector<double> jacobi_eigen(Eigen::MatrixXd a, Eigen::MatrixXd* vectors) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    const double scale = a.squaredNorm();
    if (off <= 1e-32 * scale || off == 0.0) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  std::vector<double> values;
  values.reserve(order.size());
  for (auto i : order) values.push_back(a(i, i));
  if (vectors) {
    vectors->resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) vectors->col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return values;
}

namespace {

EigenDecomposition eig_qubit(const HermitianMatrix& m) {
  const double a0 = 0.5 * (m(0, 0).real() + m(1, 1).real());
  const double rx = m(0, 1).real();
  const double ry = -m(0, 1).imag();
  const double rz = 0.5 * (m(0, 0).real() - m(1, 1).real());
  const double r = std::sqrt(rx * rx + ry * ry + rz * rz);

  EigenDecomposition out;
  out.values = {a0 + r, a0 - r};
  out.vectors = ComplexMatrix::Identity(2, 2);
  if (r == 0.0) return out;

  const double nx = rx / r, ny = ry / r, nz = rz / r;
  Complex alpha, beta;
  if (nz >= 0.0) {
    const double norm = std::sqrt(2.0 * (1.0 + nz));
    alpha = Complex(1.0 + nz, 0.0) / norm;
    beta = Complex(nx, ny) / norm;
  } else {
    const double norm = std::sqrt(2.0 * (1.0 - nz));
    alpha = Complex(nx, -ny) / norm;
    beta = Complex(1.0 - nz, 0.0) / norm;
  }
  out.vectors(0, 0) = alpha;
  out.vectors(1, 0) = beta;
  out.vectors(0, 1) = -std::conj(beta);
  out.vectors(1, 1) = std::conj(alpha);
  return out;
}

Eigen::MatrixXd real_embedding(const ComplexMatrix& h) {
  const Eigen::Index d = h.rows();
  Eigen::MatrixXd e(2 * d, 2 * d);
  e.topLeftCorner(d, d) = h.real();
  e.topRightCorner(d, d) = -h.imag();
  e.bottomLeftCorner(d, d) = h.imag();
  e.bottomRightCorner(d, d) = h.real();
  return e;
}

// Each eigenvalue of h appears twice in the embedding, with real eigenvectors
// (u; v) and (-v; u) that map to the same complex ray u + i v. Gram-Schmidt in
// C^d picks one representative per ray.
EigenDecomposition eig_general(const HermitianMatrix& m) {
  const Eigen::Index d = m.dim();
  Eigen::MatrixXd vecs;
  const std::vector<double> vals = jacobi_eigen(real_embedding(m.matrix()), &vecs);

  EigenDecomposition out;
  out.vectors = ComplexMatrix::Zero(d, d);
  Eigen::Index accepted = 0;
  for (std::size_t k = 0; k < vals.size() && accepted < d; ++k) {
    Eigen::VectorXcd w(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      w(i) = Complex(vecs(i, static_cast<Eigen::Index>(k)), vecs(i + d, static_cast<Eigen::Index>(k)));
    }
    for (Eigen::Index j = 0; j < accepted; ++j) {
      w -= out.vectors.col(j).dot(w) * out.vectors.col(j);
    }
    const double nw = w.norm();
    if (nw < 0.5) continue;
    out.vectors.col(accepted) = w / nw;
    out.values.push_back(vals[k]);
    ++accepted;
  }
  if (accepted != d) throw Error("eig_hermitian: failed to extract a complete eigenbasis");
  return out;
}

}  // namespace

EigenDecomposition eig_hermitian(const HermitianMatrix& m) {
  if (m.dim() == 0) throw InvalidArgument("eig_hermitian: empty matrix");
  if (m.dim() == 1) {
    return {{m(0, 0).real()}, ComplexMatrix::Identity(1, 1)};
  }
  if (m.dim() == 2) return eig_qubit(m);
  return eig_general(m);
}

std::vector<double> eigenvalues(const HermitianMatrix& m) {
  if (m.dim() <= 2) return eig_hermitian(m).values;
  const std::vector<double> doubled = jacobi_eigen(real_embedding(m.matrix()));
  std::vector<double> out;
  out.reserve(doubled.size() / 2);
  for (std::size_t i = 0; i < doubled.size(); i += 2) out.push_back(0.5 * (doubled[i] + doubled[i + 1]));
  return out;
}

double trace_norm(const HermitianMatrix& m) {
  double s = 0.0;
  for (double v : eigenvalues(m)) s += std::abs(v);
  return s;
}

double operator_norm(const HermitianMatrix& m) {
  const auto v = eigenvalues(m);
  return std::max(std::abs(v.front()), std::abs(v.back()));
}

double min_eigenvalue(const HermitianMatrix& m) { return eigenvalues(m).back(); }

double trace_distance(const HermitianMatrix& r, const HermitianMatrix& s) {
  if (r.dim() != s.dim()) throw InvalidArgument("trace_distance: dimension mismatch");
  return 0.5 * trace_norm(r - s);
}

HermitianMatrix partial_trace_A(const HermitianMatrix& rho_ab) {
  if (rho_ab.dim() != 4) throw InvalidArgument("partial_trace_A: expected a 4x4 operator");
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i) out(k, l) += rho_ab(2 * i + k, 2 * i + l);
  return HermitianMatrix::symmetrized(out);
}

HermitianMatrix partial_trace_B(const HermitianMatrix& rho_ab) {
  if (rho_ab.dim() != 4) throw InvalidArgument("partial_trace_B: expected a 4x4 operator");
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) out(i, j) += rho_ab(2 * i + k, 2 * j + k);
  return HermitianMatrix::symmetrized(out);
}

BlochVector bloch_from_state(const HermitianMatrix& rho) {
  if (rho.dim() != 2) throw InvalidArgument("bloch_from_state: expected a 2x2 operator");
  const double tr = rho.trace();
  if (std::abs(tr) < 1e-15) throw InvalidArgument("bloch_from_state: zero-trace operator");
  const auto& p = pauli::xyz();
  return {rho.inner(p[0]) / tr, rho.inner(p[1]) / tr, rho.inner(p[2]) / tr};
}

HermitianMatrix state_from_bloch(const BlochVector& v, double weight) {
  const auto& p = pauli::xyz();
  HermitianMatrix out = pauli::I() + v.x * p[0] + v.y * p[1] + v.z * p[2];
  return out * (0.5 * weight);
}

}  // namespace steerkit
