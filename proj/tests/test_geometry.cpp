#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "steerkit/error.hpp"
#include "steerkit/geometry.hpp"
#include "steerkit/steering.hpp"
#include "support.hpp"

using namespace steerkit;
using namespace steerkit::testing;

namespace {

/// Bob's normalized Bloch vector when Alice projects onto +n, from the partial trace.
Eigen::Vector3d steered(const TwoQubitState& rho, const Eigen::Vector3d& n) {
  const HermitianMatrix eff = state_from_bloch(BlochVector::from(n), 1.0);
  const HermitianMatrix sigma = partial_trace_A(HermitianMatrix::symmetrized(
      rho.matrix().matrix() * kron(eff, HermitianMatrix::identity(2)).matrix()));
  return bloch_from_state(sigma).vec();
}

Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return Eigen::Vector3d(n(rng), n(rng), n(rng)).normalized();
}

void check_ellipsoid_invariants(const Ellipsoid& e) {
  CHECK((e.orientation.transpose() * e.orientation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(e.orientation.determinant() == doctest::Approx(1.0));
  CHECK(e.semiaxes[0] >= e.semiaxes[1]);
  CHECK(e.semiaxes[1] >= e.semiaxes[2]);
  CHECK(e.semiaxes[2] >= 0.0);
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector3d axis = e.semiaxes[static_cast<std::size_t>(i)] * e.orientation.col(i);
    CHECK((e.center.vec() + axis).norm() <= 1.0 + 1e-6);
    CHECK((e.center.vec() - axis).norm() <= 1.0 + 1e-6);
  }
}

}  // namespace

TEST_CASE("qse of Werner states") {
  for (double p : {0.1, 0.6, 1.0}) {
    const auto e = qse(werner(p));
    CHECK(e.center.norm() < 1e-14);
    for (double s : e.semiaxes) CHECK(s == doctest::Approx(p));
    CHECK(ellipsoid_volume(e) == doctest::Approx(4.0 * std::numbers::pi / 3.0 * p * p * p));
    check_ellipsoid_invariants(e);
  }
}

TEST_CASE("qse of rank-2 Bell-diagonal states") {
  for (double p : {0.0, 0.2, 0.5, 0.9}) {
    const auto e = qse(bell_diagonal_rank2(p));
    CHECK(e.center.norm() < 1e-14);
    std::array<double, 3> ref{1.0, std::abs(1 - 2 * p), std::abs(1 - 2 * p)};
    for (int i = 0; i < 3; ++i) CHECK(e.semiaxes[static_cast<std::size_t>(i)] == doctest::Approx(ref[static_cast<std::size_t>(i)]));
    check_ellipsoid_invariants(e);
  }
  CHECK(ellipsoid_volume(qse(bell_diagonal_rank2(0.5))) == 0.0);
}

TEST_CASE("qse of the maximally mixed state is a point") {
  const auto e = qse(werner(0.0));
  for (double s : e.semiaxes) CHECK(s == 0.0);
  CHECK(ellipsoid_volume(e) == 0.0);
  CHECK(e.quadratic_form(Eigen::Vector3d::Zero()) == 0.0);
  CHECK(std::isinf(e.quadratic_form(Eigen::Vector3d(0.1, 0, 0))));
}

TEST_CASE("steered states lie on the qse surface") {
  std::mt19937_64 rng(7);
  std::vector<TwoQubitState> states{horodecki(0.3), horodecki(0.75), werner(0.8)};
  for (int i = 0; i < 5; ++i) states.push_back(random_state(rng));
  for (int i = 0; i < 5; ++i) states.push_back(random_pure_mixture(rng, 0.2));
  for (const auto& rho : states) {
    const auto e = qse(rho);
    check_ellipsoid_invariants(e);
    for (int k = 0; k < 20; ++k) {
      const Eigen::Vector3d b = steered(rho, random_unit(rng));
      CHECK(e.quadratic_form(b) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("qse rejects pure Alice marginals") {
  CHECK_THROWS_AS(qse(horodecki(0.0)), DomainError);
  CHECK_NOTHROW(qse(horodecki(1e-3)));
}

TEST_CASE("ellipsoid_volume") {
  Ellipsoid unit;
  unit.semiaxes = {1, 1, 1};
  CHECK(ellipsoid_volume(unit) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
  unit.semiaxes = {1, 1, 0};
  CHECK(ellipsoid_volume(unit) == 0.0);
}

TEST_CASE("mub_triad") {
  const auto id = mub_triad(Eigen::Matrix3d::Identity());
  const auto pt = pauli_triad();
  for (int x = 0; x < 3; ++x)
    for (int o = 0; o < 2; ++o)
      CHECK((id[static_cast<std::size_t>(x)][static_cast<std::size_t>(o)].matrix() - pt[static_cast<std::size_t>(x)][static_cast<std::size_t>(o)].matrix()).cwiseAbs().maxCoeff() < 1e-15);

  const double phi = 0.7;
  const auto rot = mub_triad(Eigen::AngleAxisd(phi, Eigen::Vector3d::UnitZ()).toRotationMatrix());
  const Eigen::Vector3d axes[3] = {{std::cos(phi), std::sin(phi), 0}, {-std::sin(phi), std::cos(phi), 0}, {0, 0, 1}};
  for (int x = 0; x < 3; ++x) {
    CHECK((bloch_from_state(rot[static_cast<std::size_t>(x)][0]).vec() - axes[x]).norm() < 1e-12);
    const HermitianMatrix sum = rot[static_cast<std::size_t>(x)][0] + rot[static_cast<std::size_t>(x)][1];
    CHECK((sum.matrix() - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  }
  Eigen::Matrix3d reflection = Eigen::Matrix3d::Identity();
  reflection(2, 2) = -1;
  CHECK_THROWS_AS(mub_triad(reflection), InvalidArgument);
  CHECK_THROWS_AS(mub_triad(2.0 * Eigen::Matrix3d::Identity()), InvalidArgument);
}

TEST_CASE("random_rotations") {
  const auto a = random_rotations(500, 9);
  const auto b = random_rotations(500, 9);
  REQUIRE(a.size() == 500);
  Eigen::Matrix3d mean = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK((a[i].transpose() * a[i] - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(a[i].determinant() == doctest::Approx(1.0));
    mean += a[i] / 500.0;
  }
  // Haar average of a rotation matrix is zero; 500 samples give |entry| ~ 0.03.
  CHECK(mean.cwiseAbs().maxCoeff() < 0.12);
  CHECK(random_rotations(3, 10)[0] != a[0]);
  CHECK_THROWS_AS(random_rotations(-1, 0), InvalidArgument);
}

TEST_CASE("hull_volume") {
  for (double r : {0.3, 1.0, 2.5}) CHECK(hull_volume(octahedron(r)) == doctest::Approx(4.0 / 3.0 * r * r * r).epsilon(1e-12));

  const double r = kInvSqrt3;
  const double ball = 4.0 * std::numbers::pi / 3.0 * r * r * r;
  const double v = hull_volume(fibonacci_sphere(4000, r));
  CHECK(v <= ball);
  CHECK(v >= 0.99 * ball);

  CHECK(hull_volume(std::vector<Eigen::Vector3d>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}) == 0.0);
  CHECK(hull_volume(std::vector<Eigen::Vector3d>{}) == 0.0);
  CHECK(hull_volume(std::vector<Eigen::Vector3d>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0.5, 0.2, 0}}) == 0.0);
  CHECK(hull_volume(std::vector<Eigen::Vector3d>{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}) == 0.0);

  // tetrahedron: |det| / 6
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Eigen::Vector3d> t;
    for (int i = 0; i < 4; ++i) t.emplace_back(n(rng), n(rng), n(rng));
    Eigen::Matrix3d m;
    m << t[1] - t[0], t[2] - t[0], t[3] - t[0];
    CHECK(hull_volume(t) == doctest::Approx(std::abs(m.determinant()) / 6.0).epsilon(1e-12));
  }

  // unit cube with interior and duplicate points
  std::vector<Eigen::Vector3d> cube;
  for (int i = 0; i < 8; ++i) cube.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) cube.emplace_back(u(rng), u(rng), u(rng));
  for (int i = 0; i < 8; ++i) cube.push_back(cube[static_cast<std::size_t>(i)]);
  CHECK(hull_volume(cube) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hull_volume is monotone in the point set") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n;
  std::vector<Eigen::Vector3d> pts;
  double last = 0.0;
  for (int i = 0; i < 400; ++i) {
    pts.emplace_back(n(rng), n(rng), n(rng));
    const double v = hull_volume(pts);
    CHECK(v >= last - 1e-12);
    last = v;
  }
}

TEST_CASE("lhs_surface of Werner states is a sphere") {
  for (auto [p, radius] : {std::pair{1.0, kInvSqrt3}, std::pair{0.4, 0.4}}) {
    const auto cloud = lhs_surface(werner(p), 30, 4);
    REQUIRE(cloud.points.size() == 180);
    REQUIRE(cloud.triad_ids.size() == 180);
    CHECK(cloud.seed == 4);
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
      CHECK(cloud.points[i].norm() == doctest::Approx(radius).epsilon(1e-6));
      CHECK(cloud.triad_ids[i] == static_cast<int>(i / 6));
    }
  }
}

TEST_CASE("unsteerable states: surface points are steered states") {
  const auto rho = horodecki(0.4);
  const auto rotations = random_rotations(10, 21);
  const auto cloud = lhs_surface(rho, 10, 21);
  for (int s = 0; s < 10; ++s)
    for (int x = 0; x < 3; ++x) {
      const Eigen::Vector3d axis = rotations[static_cast<std::size_t>(s)].col(x);
      CHECK((cloud.points[static_cast<std::size_t>(6 * s + 2 * x)].vec() - steered(rho, axis)).norm() < 1e-6);
      CHECK((cloud.points[static_cast<std::size_t>(6 * s + 2 * x + 1)].vec() - steered(rho, -axis)).norm() < 1e-6);
    }
}

TEST_CASE("lhs_surface is reproducible and independent of job count") {
  const auto rho = horodecki(0.8);
  SurfaceOptions two;
  two.jobs = 3;
  const auto a = lhs_surface(rho, 12, 5);
  const auto b = lhs_surface(rho, 12, 5);
  const auto c = lhs_surface(rho, 12, 5, two);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].vec() == b.points[i].vec());
    CHECK(a.points[i].vec() == c.points[i].vec());
  }
  CHECK_THROWS_AS(lhs_surface(rho, 0, 5), InvalidArgument);
}

TEST_CASE("surface points stay inside the qse") {
  std::mt19937_64 rng(77);
  std::vector<TwoQubitState> states{horodecki(0.6), horodecki(0.9), werner(0.9), bell_diagonal_rank2(0.8)};
  for (int i = 0; i < 3; ++i) states.push_back(random_pure_mixture(rng, 0.1));
  for (const auto& rho : states) {
    const auto e = qse(rho);
    for (const auto& pt : lhs_surface(rho, 15, 3).points) {
      CHECK(pt.norm() <= 1.0 + 1e-6);
      CHECK(e.quadratic_form(pt.vec()) <= 1.0 + 1e-6);
    }
  }
}

TEST_CASE("delta_v") {
  const auto w = delta_v(bell_diagonal_rank2(0.5), 20, 1);
  CHECK(w.v_qse == 0.0);
  CHECK(w.delta == doctest::Approx(0.0));
  CHECK_FALSE(w.fires());

  const auto quiet = delta_v(werner(0.4), 300, 2);
  CHECK(quiet.delta <= 0.01 * quiet.v_qse);
  CHECK(quiet.delta >= 0.0);

  const auto loud = delta_v(werner(1.0), 100, 2);
  CHECK(loud.fires());
  CHECK(loud.v_lhs <= 4.0 * std::numbers::pi / 3.0 * std::pow(kInvSqrt3, 3));

  // the gap is twice the hull growth between the half and full sample sets
  const auto cloud = lhs_surface(werner(0.4), 40, 8);
  PointCloud half;
  for (std::size_t i = 0; i < cloud.points.size(); ++i)
    if (cloud.triad_ids[i] < 20) half.points.push_back(cloud.points[i]);
  const auto wv = delta_v(qse(werner(0.4)), cloud);
  CHECK(wv.convergence_gap == doctest::Approx(2.0 * (hull_volume(cloud) - hull_volume(half))));
}
