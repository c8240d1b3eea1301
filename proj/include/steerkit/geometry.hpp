#pragma once

// Quantum steering ellipsoid, LHS-surface sampling over rotated triads,
// convex-hull volume and the volume witness.

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "steerkit/sdp.hpp"
#include "steerkit/states.hpp"

namespace steerkit {

/// Alice marginals with |a|^2 >= 1 - kSingularMarginalTol are rejected by qse().
inline constexpr double kSingularMarginalTol = 1e-9;

struct Ellipsoid {
  BlochVector center;
  std::array<double, 3> semiaxes{};  // descending
  Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();  // column i spans semiaxis i
  Eigen::Matrix3d matrix = Eigen::Matrix3d::Zero();            // Q

  /// (p - c)^T Q^+ (p - c); infinity when p - c leaves the range of Q by more
  /// than `null_tol`. Points of the ellipsoid have value <= 1.
  double quadratic_form(const Eigen::Vector3d& p, double null_tol = 1e-6) const;
};

struct PointCloud {
  std::vector<BlochVector> points;
  std::vector<int> triad_ids;
  std::uint64_t seed = 0;
};

/// Steering ellipsoid of Bob's conditional states. Throws DomainError when
/// Alice's marginal is pure (|a|^2 >= 1 - 1e-9) or Q has an eigenvalue below -1e-10.
Ellipsoid qse(const TwoQubitState& rho_ab);

/// Projective measurements along the columns of `rotation`. Throws
/// InvalidArgument unless rotation is orthogonal with determinant +1 (1e-9).
MeasurementSet mub_triad(const Eigen::Matrix3d& rotation);

/// n rotations drawn uniformly from SO(3) through unit quaternions. The
/// generator is std::mt19937_64 with doubles built from the top 53 bits, so
/// the sequence is identical across platforms.
std::vector<Eigen::Matrix3d> random_rotations(int n, std::uint64_t seed);

struct SurfaceOptions {
  sdp::SolverOptions solver;
  int jobs = 1;
};

/// Six normalized Bloch points (sigma_{a|x} + t p(a|x) sigma_B)/(1 + t), each divided by its trace,
/// per random triad. Failures are rethrown with the sample index prepended.
PointCloud lhs_surface(const TwoQubitState& rho_ab, int n_samples, std::uint64_t seed,
                       const SurfaceOptions& opts = {});

/// Volume of the 3D convex hull; 0 for fewer than four points or a flat set.
double hull_volume(const std::vector<Eigen::Vector3d>& points);
double hull_volume(const PointCloud& cloud);

double ellipsoid_volume(const Ellipsoid& e);

struct VolumeWitness {
  double delta = 0.0;  // v_qse - v_lhs
  double v_qse = 0.0;
  double v_lhs = 0.0;
  /// 2 (V(n) - V(n/2)) with V(k) the hull volume of the first k samples.
  double convergence_gap = 0.0;
  bool fires() const { return delta > convergence_gap; }
};

VolumeWitness delta_v(const Ellipsoid& e, const PointCloud& cloud);
VolumeWitness delta_v(const TwoQubitState& rho_ab, int n_samples, std::uint64_t seed,
                      const SurfaceOptions& opts = {});

}  // namespace steerkit
