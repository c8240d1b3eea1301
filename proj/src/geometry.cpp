#include "steerkit/geometry.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "steerkit/error.hpp"
#include "steerkit/steering.hpp"

namespace steerkit {

namespace {

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double Ellipsoid::quadratic_form(const Eigen::Vector3d& p, double null_tol) const {
  const Eigen::Vector3d d = p - center.vec();
  double value = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double comp = orientation.col(i).dot(d);
    const double q = semiaxes[static_cast<std::size_t>(i)] * semiaxes[static_cast<std::size_t>(i)];
    if (q > 1e-12) {
      value += comp * comp / q;
    } else if (std::abs(comp) > null_tol) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return value;
}

Ellipsoid qse(const TwoQubitState& rho_ab) {
  const Eigen::Vector3d a = bloch_from_state(rho_ab.alice()).vec();
  const Eigen::Vector3d b = bloch_from_state(rho_ab.bob()).vec();
  const Eigen::Matrix3d t = rho_ab.correlation_matrix();
  const double a2 = a.squaredNorm();
  if (a2 >= 1.0 - kSingularMarginalTol) {
    throw DomainError("qse: Alice's reduced state is pure (|a|^2 = " + std::to_string(a2) +
                      " >= 1 - 1e-9); the steering ellipsoid is undefined");
  }
  const double g = 1.0 / (1.0 - a2);
  Ellipsoid e;
  e.center = BlochVector::from(g * (b - t.transpose() * a));
  const Eigen::Matrix3d m = t.transpose() - b * a.transpose();
  Eigen::Matrix3d q = g * m * (Eigen::Matrix3d::Identity() + g * a * a.transpose()) * m.transpose();
  q = 0.5 * (q + q.transpose());
  e.matrix = q;

  Eigen::MatrixXd vecs;
  const auto vals = jacobi_eigen(q, &vecs);
  for (int i = 0; i < 3; ++i) {
    double v = vals[static_cast<std::size_t>(i)];
    if (v < -1e-10) throw DomainError("qse: ellipsoid matrix has a negative eigenvalue");
    e.semiaxes[static_cast<std::size_t>(i)] = std::sqrt(std::max(v, 0.0));
  }
  e.orientation = vecs;
  if (e.orientation.determinant() < 0.0) e.orientation.col(2) *= -1.0;
  return e;
}

MeasurementSet mub_triad(const Eigen::Matrix3d& rotation) {
  if (!rotation.allFinite() ||
      (rotation.transpose() * rotation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9 ||
      std::abs(rotation.determinant() - 1.0) > 1e-9) {
    throw InvalidArgument("mub_triad: rotation must be orthogonal with determinant +1");
  }
  MeasurementSet m;
  for (int i = 0; i < 3; ++i) m.push_back(axis_measurement(rotation.col(i).normalized()));
  return m;
}

std::vector<Eigen::Matrix3d> random_rotations(int n, std::uint64_t seed) {
  if (n < 0) throw InvalidArgument("random_rotations: count must be non-negative");
  std::mt19937_64 rng(seed);
  std::vector<Eigen::Matrix3d> out;
  out.reserve(static_cast<std::size_t>(n));
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    const double u1 = unit_double(rng);
    const double u2 = unit_double(rng);
    const double u3 = unit_double(rng);
    const double r1 = std::sqrt(1.0 - u1);
    const double r2 = std::sqrt(u1);
    Eigen::Quaterniond q(r2 * std::cos(two_pi * u3), r1 * std::sin(two_pi * u2),
                         r1 * std::cos(two_pi * u2), r2 * std::sin(two_pi * u3));
    out.push_back(q.normalized().toRotationMatrix());
  }
  return out;
}

PointCloud lhs_surface(const TwoQubitState& rho_ab, int n_samples, std::uint64_t seed,
                       const SurfaceOptions& opts) {
  if (n_samples < 1) throw InvalidArgument("lhs_surface: n_samples must be at least 1");
  const auto rotations = random_rotations(n_samples, seed);
  std::vector<std::array<Eigen::Vector3d, 6>> pts(static_cast<std::size_t>(n_samples));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_samples));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n_samples; i = next++) {
      const auto k = static_cast<std::size_t>(i);
      try {
        const auto a = assemblage_from_state(rho_ab, mub_triad(rotations[k]));
        const auto r = rncsr(a, opts.solver);
        for (int x = 0; x < 3; ++x)
          for (int o = 0; o < 2; ++o) {
            const HermitianMatrix& m = r.closest.member(x, o);
            if (!(m.trace() > 0.0)) {
              throw DomainError("outcome with zero probability; Bloch point undefined");
            }
            pts[k][static_cast<std::size_t>(2 * x + o)] = bloch_from_state(m).vec();
          }
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min(opts.jobs, n_samples));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  for (int i = 0; i < n_samples; ++i) {
    if (!errors[static_cast<std::size_t>(i)]) continue;
    const std::string prefix = "lhs_surface: sample " + std::to_string(i) + ": ";
    try {
      std::rethrow_exception(errors[static_cast<std::size_t>(i)]);
    } catch (const SolverError& e) {
      throw SolverError(prefix + e.what());
    } catch (const DomainError& e) {
      throw DomainError(prefix + e.what());
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(prefix + e.what());
    } catch (const std::exception& e) {
      throw Error(prefix + e.what());
    }
  }

  PointCloud cloud;
  cloud.seed = seed;
  cloud.points.reserve(6 * static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    for (const auto& p : pts[static_cast<std::size_t>(i)]) {
      cloud.points.push_back(BlochVector::from(p));
      cloud.triad_ids.push_back(i);
    }
  }
  return cloud;
}

double ellipsoid_volume(const Ellipsoid& e) {
  return 4.0 * std::numbers::pi / 3.0 * e.semiaxes[0] * e.semiaxes[1] * e.semiaxes[2];
}

VolumeWitness delta_v(const Ellipsoid& e, const PointCloud& cloud) {
  VolumeWitness w;
  w.v_qse = ellipsoid_volume(e);
  w.v_lhs = hull_volume(cloud);
  w.delta = w.v_qse - w.v_lhs;

  int n_samples = 0;
  for (int id : cloud.triad_ids) n_samples = std::max(n_samples, id + 1);
  PointCloud half;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    if (cloud.triad_ids[i] < n_samples / 2) {
      half.points.push_back(cloud.points[i]);
      half.triad_ids.push_back(cloud.triad_ids[i]);
    }
  }
  w.convergence_gap = 2.0 * std::max(0.0, w.v_lhs - hull_volume(half));
  return w;
}

VolumeWitness delta_v(const TwoQubitState& rho_ab, int n_samples, std::uint64_t seed,
                      const SurfaceOptions& opts) {
  const Ellipsoid e = qse(rho_ab);
  return delta_v(e, lhs_surface(rho_ab, n_samples, seed, opts));
}

}  // namespace steerkit
