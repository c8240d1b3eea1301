#include <doctest.h>

#include <cmath>
#include <random>

#include "steerkit/error.hpp"
#include "steerkit/steering.hpp"
#include "support.hpp"

using namespace steerkit;
using namespace steerkit::testing;

namespace {

double max_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

/// Objective of the s_min program evaluated directly from a model.
double s_min_objective(const Assemblage& a, const LhsModel& m) {
  double v = 0.0;
  for (int x = 0; x < a.n_inputs(); ++x)
    for (int o = 0; o < a.n_outcomes(); ++o)
      v += a.input_weight(x) / 2.0 * operator_norm(a.member(x, o) - m.member(x, o));
  return v;
}

Assemblage under_pauli(const TwoQubitState& rho) { return assemblage_from_state(rho, pauli_triad()); }

}  // namespace

TEST_CASE("assemblage_from_state examples") {
  for (double p : {0.0, 0.4, 1.0}) {
    const auto a = under_pauli(werner(p));
    for (int x = 0; x < 3; ++x)
      for (int o = 0; o < 2; ++o) {
        CHECK(a.member(x, o).trace() == doctest::Approx(0.5));
        Eigen::Vector3d ref = Eigen::Vector3d::Zero();
        ref(x) = o == 0 ? -p : p;
        CHECK((bloch_from_state(a.member(x, o)).vec() - ref).norm() < 1e-12);
      }
  }
  std::mt19937_64 rng(1);
  const auto mixed = assemblage_from_state(werner(0.0), mub_triad(random_rotation(rng)));
  for (const auto& row : mixed.members())
    for (const auto& m : row) CHECK(max_diff(m, HermitianMatrix::identity(2) * 0.25) < 1e-14);

  const auto singlet = under_pauli(horodecki(1.0));
  ComplexMatrix one = ComplexMatrix::Zero(2, 2);
  one(1, 1) = 0.5;
  CHECK((singlet.member(2, 0).matrix() - one).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("assemblage_from_state rejects non-POVMs") {
  MeasurementSet bad = pauli_triad();
  bad[1][0] = HermitianMatrix::identity(2);
  CHECK_THROWS_AS(assemblage_from_state(werner(0.5), bad), InvalidArgument);
  MeasurementSet negative = pauli_triad();
  negative[0] = {pauli::I() + pauli::Z(), -1.0 * pauli::Z()};
  CHECK_THROWS_AS(assemblage_from_state(werner(0.5), negative), InvalidArgument);
  CHECK_THROWS_AS(assemblage_from_state(werner(0.5), {}), InvalidArgument);
}

TEST_CASE("assemblage invariants") {
  const auto a = under_pauli(horodecki(0.7));
  CHECK(a.reduced_state().trace() == doctest::Approx(1.0));
  for (int x = 0; x < 3; ++x) {
    HermitianMatrix s = a.member(x, 0) + a.member(x, 1);
    CHECK(max_diff(s, a.reduced_state()) < 1e-12);
  }
  // signaling input is rejected
  auto members = a.members();
  members[0][0] = members[0][0] * 0.5;
  CHECK_THROWS_AS(Assemblage{members}, InvalidArgument);
  CHECK_THROWS_AS(Assemblage(a.members(), {0.5, 0.5, 0.5}), InvalidArgument);
}

TEST_CASE("deterministic strategies") {
  CHECK(deterministic_strategies(3, 2).size() == 8);
  CHECK(deterministic_strategies(1, 2).size() == 2);
  const auto s = deterministic_strategies(2, 2);
  REQUIRE(s.size() == 4);
  CHECK(s[0].outcomes == std::vector<int>{0, 0});
  CHECK(s[1].outcomes == std::vector<int>{0, 1});
  CHECK(s[2].outcomes == std::vector<int>{1, 0});
  CHECK(s[3].outcomes == std::vector<int>{1, 1});
  for (const auto& st : deterministic_strategies(3, 3)) {
    for (int x = 0; x < 3; ++x) {
      int responding = 0;
      for (int o = 0; o < 3; ++o) responding += st.responds(x, o) ? 1 : 0;
      CHECK(responding == 1);
    }
  }
  CHECK_THROWS_AS(deterministic_strategies(13, 2), InvalidArgument);
  CHECK_NOTHROW(deterministic_strategies(12, 2));
}

TEST_CASE("assemblage_distance") {
  const auto w1 = under_pauli(werner(1.0));
  CHECK(assemblage_distance(w1, w1) == 0.0);
  const auto r = rncsr(w1);
  CHECK(assemblage_distance(w1, r.closest) == doctest::Approx((1 - kInvSqrt3) / 2).epsilon(1e-8));
  CHECK_THROWS_AS(assemblage_distance(w1, Assemblage({{HermitianMatrix::identity(2) * 0.5}})), InvalidArgument);
  CHECK_THROWS_AS(assemblage_distance(w1, Assemblage(w1.members(), {0.5, 0.25, 0.25})), InvalidArgument);
}

TEST_CASE("s_min examples") {
  CHECK(s_min(under_pauli(werner(0.5))).value <= 1e-6);
  const auto r = s_min(under_pauli(werner(1.0)));
  CHECK(r.value == doctest::Approx((1 - kInvSqrt3) / 4).epsilon(1e-8));

  // post-processing a fixed set of states
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) CHECK(s_min(random_lhs_assemblage(rng)).value <= 1e-6);
}

TEST_CASE("s_min model achieves the value") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_assemblage(rng, 0.05);
    const auto r = s_min(a);
    CHECK(r.value >= -1e-9);
    CHECK(r.value <= 1.0);
    CHECK(s_min_objective(a, r.model) == doctest::Approx(r.value).epsilon(1e-7));
    CHECK(max_diff(r.model.total(), a.reduced_state()) < 1e-7);
    for (const auto& s : r.model.hidden_states) CHECK(min_eigenvalue(s) >= -1e-9);
  }
}

TEST_CASE("rncsr examples and consistency") {
  const auto w1 = rncsr(under_pauli(werner(1.0)));
  CHECK(w1.t_min == doctest::Approx(std::sqrt(3.0) - 1).epsilon(1e-8));
  for (const auto& row : w1.closest.members())
    for (const auto& m : row) CHECK(bloch_from_state(m).norm() == doctest::Approx(kInvSqrt3).epsilon(1e-8));

  const auto unst = under_pauli(werner(0.4));
  const auto r0 = rncsr(unst);
  CHECK(r0.t_min <= 1e-7);
  CHECK(assemblage_distance(unst, r0.closest) <= 1e-7);
  CHECK(rncsr(under_pauli(horodecki(0.5))).t_min <= 1e-6);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_assemblage(rng, 0.05);
    const auto r = rncsr(a);
    CHECK(max_diff(r.closest.reduced_state(), a.reduced_state()) < 1e-12);
    for (int x = 0; x < 3; ++x)
      for (int o = 0; o < 2; ++o) CHECK(r.closest.member(x, o).trace() == doctest::Approx(a.member(x, o).trace()).epsilon(1e-8));
    // closest is reproduced by its certificate
    for (int x = 0; x < 3; ++x)
      for (int o = 0; o < 2; ++o) CHECK(max_diff(r.model.member(x, o), r.closest.member(x, o)) < 1e-7);
    CHECK(r.max_slack_eigenvalue <= 1e-7);
  }
}

TEST_CASE("s_max_restricted: operator and Bloch forms agree") {
  CHECK(s_max_restricted(under_pauli(werner(1.0))) == doctest::Approx((1 - kInvSqrt3) / 2).epsilon(1e-8));
  CHECK(s_max_restricted(under_pauli(werner(0.55))) <= 1e-6);
  CHECK(s_max_restricted(under_pauli(bell_diagonal_rank2(0.5))) <= 1e-6);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_assemblage(rng, 0.05);
    const auto r = rncsr(a);
    CHECK(std::abs(assemblage_distance(a, r.closest) - s_max_restricted_bloch(a, r.t_min)) <= 1e-9);
  }
}

TEST_CASE("csr") {
  const auto w = under_pauli(werner(1.0));
  const auto c = csr(w);
  const auto r = rncsr(w);
  CHECK(c.t_min <= r.t_min + 1e-6);
  CHECK(s_max(w) <= s_max_restricted(w) + 1e-6);
  CHECK(std::abs(s_max(w) - (1 - kInvSqrt3) / 2) <= 1e-6);
  CHECK(max_diff(c.closest.reduced_state(), w.reduced_state()) < 1e-12);

  CHECK(csr(under_pauli(werner(0.3))).t_min <= 1e-7);
  CHECK(s_max(under_pauli(werner(0.3))) <= 1e-6);

  const auto h = under_pauli(horodecki(0.75));
  const double smax = s_max(h);
  CHECK(smax > 0.0);
  CHECK(smax <= s_max_restricted(h) + 1e-6);
}

TEST_CASE("bounds report") {
  const auto b = bounds(under_pauli(werner(0.9)));
  CHECK(b.s_min == doctest::Approx(werner_s_min(0.9)).epsilon(1e-6));
  CHECK(b.t_rncsr == doctest::Approx(werner_t_rncsr(0.9)).epsilon(1e-6));
  CHECK(b.s_max_restricted == doctest::Approx(werner_s_max_r(0.9)).epsilon(1e-6));
  CHECK(b.s_min <= b.s_max + 1e-6);
  CHECK(b.t_csr <= b.t_rncsr + 1e-6);
  CHECK(assemblage_distance(under_pauli(werner(0.9)), b.closest_rncsr_assemblage) == doctest::Approx(b.s_max_restricted));
  CHECK(assemblage_distance(under_pauli(werner(0.9)), b.closest_csr_assemblage) == doctest::Approx(b.s_max));
}

TEST_CASE("solver failures surface as SolverError") {
  sdp::SolverOptions o;
  o.max_iter = 1;
  CHECK_THROWS_AS(s_min(under_pauli(werner(1.0)), o), SolverError);
  CHECK_THROWS_AS(rncsr(under_pauli(werner(1.0)), o), SolverError);
  CHECK_THROWS_AS(csr(under_pauli(werner(1.0)), o), SolverError);
}

TEST_CASE("apply_wiring") {
  const auto a = under_pauli(werner(0.8));
  const std::vector<std::vector<double>> id_x{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<std::vector<std::vector<std::vector<double>>>> id_out(3, std::vector<std::vector<std::vector<double>>>(3));
  for (int xp = 0; xp < 3; ++xp)
    for (int x = 0; x < 3; ++x) id_out[static_cast<std::size_t>(xp)][static_cast<std::size_t>(x)] = {{1, 0}, {0, 1}};
  const auto same = apply_wiring(a, id_x, id_out, ComplexMatrix::Identity(2, 2));
  for (int x = 0; x < 3; ++x)
    for (int o = 0; o < 2; ++o) CHECK(max_diff(same.member(x, o), a.member(x, o)) < 1e-15);

  auto flip = id_out;
  for (auto& by_x : flip)
    for (auto& d : by_x) d = {{0, 1}, {1, 0}};
  std::mt19937_64 rng(2);
  const auto lhs = random_lhs_assemblage(rng);
  const auto flipped = apply_wiring(lhs, id_x, flip, ComplexMatrix::Identity(2, 2));
  CHECK(max_diff(flipped.member(0, 0), lhs.member(0, 1)) < 1e-15);
  CHECK(s_min(flipped).value <= 1e-6);

  CHECK_THROWS_AS(apply_wiring(a, {{0.5, 0.6, 0}, {0, 1, 0}, {0, 0, 1}}, id_out, ComplexMatrix::Identity(2, 2)), InvalidArgument);
  CHECK_THROWS_AS(apply_wiring(a, id_x, id_out, 2.0 * ComplexMatrix::Identity(2, 2)), InvalidArgument);
  auto bad = id_out;
  bad[0][0] = {{0.5, 0.4}, {0, 1}};
  CHECK_THROWS_AS(apply_wiring(a, id_x, bad, ComplexMatrix::Identity(2, 2)), InvalidArgument);
}
