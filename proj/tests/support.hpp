#pragma once

// Random generators and independent reference computations shared by the
// unit, property and acceptance tests.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "steerkit/assemblage.hpp"
#include "steerkit/geometry.hpp"
#include "steerkit/linalg.hpp"
#include "steerkit/states.hpp"
#include "steerkit/steering.hpp"

namespace steerkit::testing {

inline const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

inline ComplexMatrix random_complex(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

inline HermitianMatrix random_hermitian(std::mt19937_64& rng, int dim) {
  const ComplexMatrix g = random_complex(rng, dim, dim);
  return HermitianMatrix::symmetrized(0.5 * (g + g.adjoint()));
}

/// G G^dagger scaled to the given trace.
inline HermitianMatrix random_psd(std::mt19937_64& rng, int dim, double trace = 1.0, int rank = -1) {
  const ComplexMatrix g = random_complex(rng, dim, rank < 0 ? dim : rank);
  ComplexMatrix m = g * g.adjoint();
  m *= trace / m.trace().real();
  return HermitianMatrix::symmetrized(m);
}

/// Haar-random pure state mixed with white noise of weight `noise`.
inline TwoQubitState random_pure_mixture(std::mt19937_64& rng, double noise) {
  Eigen::Vector4cd v = random_complex(rng, 4, 1);
  v.normalize();
  ComplexMatrix rho = (1.0 - noise) * (v * v.adjoint()) + noise * ComplexMatrix::Identity(4, 4) / 4.0;
  return TwoQubitState(HermitianMatrix::symmetrized(rho));
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  return q.normalized().toRotationMatrix();
}

/// Assemblage of a noisy random pure state under a random rotated triad.
/// Steerable for most draws when noise is small.
inline Assemblage random_assemblage(std::mt19937_64& rng, double noise = 0.1) {
  return assemblage_from_state(random_pure_mixture(rng, noise), mub_triad(random_rotation(rng)));
}

/// Unsteerable by construction: random hidden states over the 8 strategies of
/// a 3-input, 2-outcome scenario, rescaled to total trace 1.
inline Assemblage random_lhs_assemblage(std::mt19937_64& rng) {
  LhsModel m;
  m.n_inputs = 3;
  m.n_outcomes = 2;
  std::uniform_int_distribution<int> rank(1, 2);
  HermitianMatrix total = HermitianMatrix::zero(2);
  for (int l = 0; l < 8; ++l) {
    m.hidden_states.push_back(random_psd(rng, 2, 1.0, rank(rng)));
    total += m.hidden_states.back();
  }
  for (auto& s : m.hidden_states) s *= 1.0 / total.trace();
  return m.assemblage().renormalized();
}

/// Random doubly stochastic n x n matrix as a convex mixture of permutations.
inline std::vector<std::vector<double>> random_doubly_stochastic(std::mt19937_64& rng, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> m(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  std::vector<double> w(4);
  for (auto& wi : w) wi = u(rng);
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double wi : w) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] += wi / sum;
  }
  return m;
}

/// p(a'|a,x,x') for every (x', x, a) drawn uniformly from the simplex.
inline std::vector<std::vector<std::vector<std::vector<double>>>> random_post_processing(std::mt19937_64& rng,
                                                                                       int nx, int na) {
  std::exponential_distribution<double> e(1.0);
  std::vector<std::vector<std::vector<std::vector<double>>>> p(
      static_cast<std::size_t>(nx),
      std::vector<std::vector<std::vector<double>>>(static_cast<std::size_t>(nx),
                                                    std::vector<std::vector<double>>(static_cast<std::size_t>(na))));
  for (auto& by_x : p)
    for (auto& by_a : by_x)
      for (auto& dist : by_a) {
        dist.resize(static_cast<std::size_t>(na));
        for (auto& d : dist) d = e(rng);
        const double s = std::accumulate(dist.begin(), dist.end(), 0.0);
        for (auto& d : dist) d /= s;
      }
  return p;
}

/// Random contraction with operator norm in [0.5, 1].
inline ComplexMatrix random_contraction(std::mt19937_64& rng) {
  const ComplexMatrix g = random_complex(rng, 2, 2);
  Eigen::JacobiSVD<ComplexMatrix> svd(g);
  std::uniform_real_distribution<double> u(0.5, 1.0);
  return g * (u(rng) / svd.singularValues()(0));
}

/// Reference eigenvalues (descending) from Eigen's self-adjoint solver.
inline std::vector<double> reference_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.rbegin(), v.rend());
  return v;
}

inline double reference_trace_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (double v : reference_eigenvalues(m)) s += std::abs(v);
  return s;
}

/// Points of a regular octahedron of radius r.
inline std::vector<Eigen::Vector3d> octahedron(double r) {
  return {{r, 0, 0}, {-r, 0, 0}, {0, r, 0}, {0, -r, 0}, {0, 0, r}, {0, 0, -r}};
}

inline std::vector<Eigen::Vector3d> fibonacci_sphere(int n, double r) {
  std::vector<Eigen::Vector3d> pts;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double rho = std::sqrt(1.0 - z * z);
    pts.emplace_back(r * rho * std::cos(golden * i), r * rho * std::sin(golden * i), r * z);
  }
  return pts;
}

/// Closed-form Werner values under the Pauli triad.
inline double werner_s_min(double p) { return std::max(0.0, (p - kInvSqrt3) / 4.0); }
inline double werner_t_rncsr(double p) { return std::max(0.0, std::sqrt(3.0) * p - 1.0); }
inline double werner_s_max_r(double p) { return std::max(0.0, (p - kInvSqrt3) / 2.0); }

}  // namespace steerkit::testing
