#include "steerkit/steering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "steerkit/error.hpp"

namespace steerkit {

namespace {

constexpr double kPovmTol = 1e-10;

// Hidden states are parametrized as sigma = (w 1 + x X + y Y + z Z) / 2, so
// that the first coordinate is the trace.
const std::array<HermitianMatrix, 4>& hidden_basis() {
  static const std::array<HermitianMatrix, 4> basis{0.5 * pauli::I(), 0.5 * pauli::X(),
                                                    0.5 * pauli::Y(), 0.5 * pauli::Z()};
  return basis;
}

std::array<double, 4> basis_coordinates(const HermitianMatrix& m) {
  const auto& p = pauli::xyz();
  return {m.trace(), m.inner(p[0]), m.inner(p[1]), m.inner(p[2])};
}

int var(std::size_t lambda, int k) { return static_cast<int>(4 * lambda) + k; }

HermitianMatrix hidden_state(const Eigen::VectorXd& y, std::size_t lambda) {
  HermitianMatrix s = HermitianMatrix::zero(2);
  for (int k = 0; k < 4; ++k) s += y(var(lambda, k)) * hidden_basis()[static_cast<std::size_t>(k)];
  return s;
}

// Solver output is PSD only up to feas_tol; drop the negative part.
HermitianMatrix clip_psd(const HermitianMatrix& m) {
  const auto e = eig_hermitian(m);
  ComplexMatrix out = ComplexMatrix::Zero(m.dim(), m.dim());
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    if (e.values[i] > 0.0) {
      const auto v = e.vectors.col(static_cast<Eigen::Index>(i));
      out += e.values[i] * v * v.adjoint();
    }
  }
  return HermitianMatrix::symmetrized(out);
}

void add_hidden_state_cones(sdp::SdpProblem& p, std::size_t n_strategies) {
  for (std::size_t l = 0; l < n_strategies; ++l) {
    sdp::LinearMatrixInequality lmi{HermitianMatrix::zero(2), {}};
    for (int k = 0; k < 4; ++k) lmi.coeffs.emplace_back(var(l, k), hidden_basis()[static_cast<std::size_t>(k)]);
    p.blocks.push_back(std::move(lmi));
  }
}

sdp::SdpSolution solve_or_throw(const sdp::SdpProblem& p, const sdp::SolverOptions& opts,
                                const char* what) {
  sdp::SdpSolution sol = sdp::solve(p, opts);
  if (sol.status != sdp::Status::Optimal) {
    std::ostringstream msg;
    msg << what << ": SDP solver returned " << sdp::to_string(sol.status) << " after "
        << sol.iterations << " iterations";
    if (!sol.history.empty()) {
      const auto& h = sol.history.back();
      msg << " (primal " << h.primal_objective << ", dual " << h.dual_objective << ", residuals "
          << h.primal_residual << '/' << h.dual_residual << ")";
    }
    throw SolverError(msg.str());
  }
  return sol;
}

LhsModel model_from_solution(const Assemblage& a, const Eigen::VectorXd& y, std::size_t n_strategies,
                             double scale) {
  LhsModel model{a.n_inputs(), a.n_outcomes(), {}};
  model.hidden_states.reserve(n_strategies);
  for (std::size_t l = 0; l < n_strategies; ++l) {
    model.hidden_states.push_back(clip_psd(hidden_state(y, l)) * scale);
  }
  return model;
}

}  // namespace

Assemblage assemblage_from_state(const TwoQubitState& rho_ab, const MeasurementSet& measurements,
                                 const std::vector<double>& input_weights) {
  if (measurements.empty()) throw InvalidArgument("assemblage_from_state: no measurements");
  std::vector<std::vector<HermitianMatrix>> members;
  members.reserve(measurements.size());
  for (const auto& povm : measurements) {
    if (povm.empty()) throw InvalidArgument("assemblage_from_state: measurement without outcomes");
    HermitianMatrix total = HermitianMatrix::zero(2);
    std::vector<HermitianMatrix> row;
    for (const auto& effect : povm) {
      if (effect.dim() != 2) throw InvalidArgument("assemblage_from_state: effects must be 2x2");
      if (min_eigenvalue(effect) < -kPovmTol) {
        throw InvalidArgument("assemblage_from_state: effect is not positive semidefinite");
      }
      total += effect;
      const ComplexMatrix prod =
          rho_ab.matrix().matrix() * kron(effect.matrix(), ComplexMatrix::Identity(2, 2));
      ComplexMatrix reduced = ComplexMatrix::Zero(2, 2);
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          for (int i = 0; i < 2; ++i) reduced(k, l) += prod(2 * i + k, 2 * i + l);
      row.push_back(HermitianMatrix::symmetrized(reduced));
    }
    if ((total.matrix() - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > kPovmTol) {
      throw InvalidArgument("assemblage_from_state: effects do not sum to the identity");
    }
    members.push_back(std::move(row));
  }
  return Assemblage(std::move(members), input_weights);
}

double assemblage_distance(const Assemblage& a, const Assemblage& b) {
  if (a.n_inputs() != b.n_inputs() || a.n_outcomes() != b.n_outcomes()) {
    throw InvalidArgument("assemblage_distance: assemblage shapes differ");
  }
  for (int x = 0; x < a.n_inputs(); ++x) {
    if (std::abs(a.input_weight(x) - b.input_weight(x)) > kAssemblageTol) {
      throw InvalidArgument("assemblage_distance: input weights differ");
    }
  }
  double d = 0.0;
  for (int x = 0; x < a.n_inputs(); ++x) {
    double dx = 0.0;
    for (int o = 0; o < a.n_outcomes(); ++o) dx += trace_distance(a.member(x, o), b.member(x, o));
    d += a.input_weight(x) * dx;
  }
  return d;
}

SminResult s_min(const Assemblage& a, const sdp::SolverOptions& opts) {
  const auto strategies = deterministic_strategies(a.n_inputs(), a.n_outcomes());
  const std::size_t n_l = strategies.size();
  const int n_mu = a.n_inputs() * a.n_outcomes();
  auto mu_var = [&](int x, int o) { return static_cast<int>(4 * n_l) + x * a.n_outcomes() + o; };

  sdp::SdpProblem p;
  p.num_vars = static_cast<int>(4 * n_l) + n_mu;
  p.objective = Eigen::VectorXd::Zero(p.num_vars);
  for (int x = 0; x < a.n_inputs(); ++x)
    for (int o = 0; o < a.n_outcomes(); ++o) p.objective(mu_var(x, o)) = 0.5 * a.input_weight(x);

  add_hidden_state_cones(p, n_l);
  const HermitianMatrix id = pauli::I();
  for (int x = 0; x < a.n_inputs(); ++x) {
    for (int o = 0; o < a.n_outcomes(); ++o) {
      // mu 1 -/+ (sigma_{a|x} - sum_lambda delta sigma_lambda) PSD
      for (double sign : {1.0, -1.0}) {
        sdp::LinearMatrixInequality lmi{sign * a.member(x, o), {}};
        lmi.coeffs.emplace_back(mu_var(x, o), id);
        for (std::size_t l = 0; l < n_l; ++l) {
          if (!strategies[l].responds(x, o)) continue;
          for (int k = 0; k < 4; ++k) lmi.coeffs.emplace_back(var(l, k), sign * hidden_basis()[static_cast<std::size_t>(k)]);
        }
        p.blocks.push_back(std::move(lmi));
      }
    }
  }
  const auto sigma_b = basis_coordinates(a.reduced_state());
  for (int k = 0; k < 4; ++k) {
    sdp::LinearEquality eq;
    for (std::size_t l = 0; l < n_l; ++l) eq.coeffs.emplace_back(var(l, k), 1.0);
    eq.rhs = sigma_b[static_cast<std::size_t>(k)];
    p.equalities.push_back(std::move(eq));
  }

  const auto sol = solve_or_throw(p, opts, "s_min");
  SminResult r;
  r.value = std::max(0.0, sol.primal_objective);
  r.model = model_from_solution(a, sol.y, n_l, 1.0);
  return r;
}

RobustnessResult rncsr(const Assemblage& a, const sdp::SolverOptions& opts) {
  const auto strategies = deterministic_strategies(a.n_inputs(), a.n_outcomes());
  const std::size_t n_l = strategies.size();
  const HermitianMatrix& sigma_b = a.reduced_state();

  sdp::SdpProblem p;
  p.num_vars = static_cast<int>(4 * n_l);
  p.objective = Eigen::VectorXd::Zero(p.num_vars);
  for (std::size_t l = 0; l < n_l; ++l) p.objective(var(l, 0)) = 1.0;

  add_hidden_state_cones(p, n_l);
  // sum_lambda delta sigma_lambda - sigma_{a|x} - (sum_lambda tr sigma_lambda - 1) p(a|x) sigma_B PSD
  const std::size_t first_slack = p.blocks.size();
  for (int x = 0; x < a.n_inputs(); ++x) {
    for (int o = 0; o < a.n_outcomes(); ++o) {
      const double pax = a.outcome_probability(x, o);
      sdp::LinearMatrixInequality lmi{a.member(x, o) - pax * sigma_b, {}};
      for (std::size_t l = 0; l < n_l; ++l) {
        const bool hit = strategies[l].responds(x, o);
        for (int k = 0; k < 4; ++k) {
          HermitianMatrix c = HermitianMatrix::zero(2);
          if (hit) c += hidden_basis()[static_cast<std::size_t>(k)];
          if (k == 0) c -= pax * sigma_b;
          lmi.coeffs.emplace_back(var(l, k), c);
        }
      }
      p.blocks.push_back(std::move(lmi));
    }
  }
  const std::size_t end_slack = p.blocks.size();
  {
    ComplexMatrix one = ComplexMatrix::Ones(1, 1);
    sdp::LinearMatrixInequality lmi{HermitianMatrix(one), {}};
    for (std::size_t l = 0; l < n_l; ++l) lmi.coeffs.emplace_back(var(l, 0), HermitianMatrix(one));
    p.blocks.push_back(std::move(lmi));
  }

  RobustnessResult r;
  r.solution = solve_or_throw(p, opts, "rncsr");
  const double total = r.solution.primal_objective;
  r.t_min = std::max(0.0, total - 1.0);
  r.model = model_from_solution(a, r.solution.y, n_l, 1.0 / (1.0 + r.t_min));

  double slack = -std::numeric_limits<double>::infinity();
  for (std::size_t j = first_slack; j < end_slack; ++j) {
    slack = std::max(slack, eigenvalues(sdp::lmi_value(p.blocks[j], r.solution.y)).front());
  }
  r.max_slack_eigenvalue = slack;

  auto members = a.members();
  for (int x = 0; x < a.n_inputs(); ++x)
    for (int o = 0; o < a.n_outcomes(); ++o) {
      members[static_cast<std::size_t>(x)][static_cast<std::size_t>(o)] =
          (a.member(x, o) + r.t_min * a.outcome_probability(x, o) * sigma_b) * (1.0 / (1.0 + r.t_min));
    }
  r.closest = Assemblage(std::move(members), a.input_weights());
  return r;
}

RobustnessResult csr(const Assemblage& a, const sdp::SolverOptions& opts) {
  const auto strategies = deterministic_strategies(a.n_inputs(), a.n_outcomes());
  const std::size_t n_l = strategies.size();

  sdp::SdpProblem p;
  p.num_vars = static_cast<int>(4 * n_l);
  p.objective = Eigen::VectorXd::Zero(p.num_vars);
  for (std::size_t l = 0; l < n_l; ++l) p.objective(var(l, 0)) = 1.0;

  add_hidden_state_cones(p, n_l);
  // sum_lambda delta sigma_lambda - sigma_{a|x} PSD; the slack is t tau_{a|x}.
  const std::size_t first_slack = p.blocks.size();
  for (int x = 0; x < a.n_inputs(); ++x) {
    for (int o = 0; o < a.n_outcomes(); ++o) {
      sdp::LinearMatrixInequality lmi{a.member(x, o), {}};
      for (std::size_t l = 0; l < n_l; ++l) {
        if (!strategies[l].responds(x, o)) continue;
        for (int k = 0; k < 4; ++k) lmi.coeffs.emplace_back(var(l, k), hidden_basis()[static_cast<std::size_t>(k)]);
      }
      p.blocks.push_back(std::move(lmi));
    }
  }
  const std::size_t end_slack = p.blocks.size();
  // sum_lambda sigma_lambda = (sum_lambda tr sigma_lambda) sigma_B; the trace
  // component holds identically because tr sigma_B = 1.
  const auto sigma_b = basis_coordinates(a.reduced_state());
  for (int k = 1; k < 4; ++k) {
    sdp::LinearEquality eq;
    for (std::size_t l = 0; l < n_l; ++l) {
      eq.coeffs.emplace_back(var(l, k), 1.0);
      eq.coeffs.emplace_back(var(l, 0), -sigma_b[static_cast<std::size_t>(k)]);
    }
    eq.rhs = 0.0;
    p.equalities.push_back(std::move(eq));
  }

  RobustnessResult r;
  r.solution = solve_or_throw(p, opts, "csr");
  r.t_min = std::max(0.0, r.solution.primal_objective - 1.0);

  double total = 0.0;
  for (std::size_t l = 0; l < n_l; ++l) total += clip_psd(hidden_state(r.solution.y, l)).trace();
  r.model = model_from_solution(a, r.solution.y, n_l, 1.0 / total);

  double slack = -std::numeric_limits<double>::infinity();
  for (std::size_t j = first_slack; j < end_slack; ++j) {
    slack = std::max(slack, eigenvalues(sdp::lmi_value(p.blocks[j], r.solution.y)).front());
  }
  r.max_slack_eigenvalue = slack;

  std::vector<std::vector<HermitianMatrix>> members(static_cast<std::size_t>(a.n_inputs()));
  for (int x = 0; x < a.n_inputs(); ++x)
    for (int o = 0; o < a.n_outcomes(); ++o) members[static_cast<std::size_t>(x)].push_back(r.model.member(x, o));
  r.closest = Assemblage(std::move(members), a.input_weights());
  return r;
}

double s_max_restricted(const Assemblage& a, const sdp::SolverOptions& opts) {
  return assemblage_distance(a, rncsr(a, opts).closest);
}

double s_max(const Assemblage& a, const sdp::SolverOptions& opts) {
  return assemblage_distance(a, csr(a, opts).closest);
}

double s_max_restricted_bloch(const Assemblage& a, double t_min) {
  const Eigen::Vector3d q = bloch_from_state(a.reduced_state()).vec();
  const double scale = t_min / (1.0 + t_min);
  double s = 0.0;
  for (int x = 0; x < a.n_inputs(); ++x) {
    for (int o = 0; o < a.n_outcomes(); ++o) {
      const double pax = a.outcome_probability(x, o);
      if (pax <= 0.0) continue;
      const Eigen::Vector3d v = bloch_from_state(a.member(x, o)).vec();
      s += a.input_weight(x) * pax * scale * 0.5 * (v - q).norm();
    }
  }
  return s;
}

BoundsReport bounds(const Assemblage& a, const sdp::SolverOptions& opts) {
  BoundsReport r;
  r.s_min = s_min(a, opts).value;
  auto restricted = rncsr(a, opts);
  auto general = csr(a, opts);
  r.t_rncsr = restricted.t_min;
  r.t_csr = general.t_min;
  r.s_max_restricted = assemblage_distance(a, restricted.closest);
  r.s_max = assemblage_distance(a, general.closest);
  r.closest_rncsr_assemblage = std::move(restricted.closest);
  r.closest_csr_assemblage = std::move(general.closest);
  return r;
}

Assemblage apply_wiring(const Assemblage& a, const std::vector<std::vector<double>>& p_x,
                        const std::vector<std::vector<std::vector<std::vector<double>>>>& p_out,
                        const ComplexMatrix& kraus, const std::vector<double>& output_weights) {
  constexpr double kTol = 1e-10;
  const std::size_t n_xp = p_x.size();
  if (n_xp == 0) throw InvalidArgument("apply_wiring: no output inputs");
  if (p_out.size() != n_xp) throw InvalidArgument("apply_wiring: p(a'|a,x,x') has wrong shape");
  if (kraus.rows() != 2 || kraus.cols() != 2) throw InvalidArgument("apply_wiring: Kraus operator must be 2x2");
  const double kk = eigenvalues(HermitianMatrix::symmetrized(kraus.adjoint() * kraus)).front();
  if (kk > 1.0 + kTol) throw InvalidArgument("apply_wiring: K^dagger K exceeds the identity");

  std::size_t n_ap = 0;
  for (std::size_t xp = 0; xp < n_xp; ++xp) {
    if (p_x[xp].size() != static_cast<std::size_t>(a.n_inputs())) {
      throw InvalidArgument("apply_wiring: p(x|x') has wrong shape");
    }
    double sum = 0.0;
    for (double v : p_x[xp]) {
      if (v < -kTol) throw InvalidArgument("apply_wiring: negative probability in p(x|x')");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kTol) throw InvalidArgument("apply_wiring: p(x|x') is not normalized");
    if (p_out[xp].size() != static_cast<std::size_t>(a.n_inputs())) {
      throw InvalidArgument("apply_wiring: p(a'|a,x,x') has wrong shape");
    }
    for (const auto& per_x : p_out[xp]) {
      if (per_x.size() != static_cast<std::size_t>(a.n_outcomes())) {
        throw InvalidArgument("apply_wiring: p(a'|a,x,x') has wrong shape");
      }
      for (const auto& dist : per_x) {
        if (n_ap == 0) n_ap = dist.size();
        if (dist.size() != n_ap || n_ap == 0) throw InvalidArgument("apply_wiring: inconsistent output outcome count");
        double s = 0.0;
        for (double v : dist) {
          if (v < -kTol) throw InvalidArgument("apply_wiring: negative probability in p(a'|a,x,x')");
          s += v;
        }
        if (std::abs(s - 1.0) > kTol) throw InvalidArgument("apply_wiring: p(a'|a,x,x') is not normalized");
      }
    }
  }

  std::vector<std::vector<HermitianMatrix>> out(n_xp, std::vector<HermitianMatrix>(n_ap, HermitianMatrix::zero(2)));
  for (std::size_t xp = 0; xp < n_xp; ++xp) {
    for (int x = 0; x < a.n_inputs(); ++x) {
      const double px = p_x[xp][static_cast<std::size_t>(x)];
      if (px == 0.0) continue;
      for (int o = 0; o < a.n_outcomes(); ++o) {
        const HermitianMatrix kept =
            HermitianMatrix::symmetrized(kraus * a.member(x, o).matrix() * kraus.adjoint());
        const auto& dist = p_out[xp][static_cast<std::size_t>(x)][static_cast<std::size_t>(o)];
        for (std::size_t ap = 0; ap < n_ap; ++ap) {
          if (dist[ap] != 0.0) out[xp][ap] += (px * dist[ap]) * kept;
        }
      }
    }
  }
  return Assemblage(std::move(out), output_weights, Normalization::Subnormalized);
}

}  // namespace steerkit
