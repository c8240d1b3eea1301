#pragma once

// Assemblage distance and the SDP-based steering quantifiers:
//   s_min            operator-norm lower bound on the trace-distance monotone
//   rncsr            robustness against the product noise p(a|x) sigma_B
//   csr              robustness against any noise assemblage sharing sigma_B
//   s_max_restricted distance to the rncsr-optimal unsteerable assemblage
//   s_max            distance to the csr-optimal unsteerable assemblage
// with s_min <= s_max <= s_max_restricted.

#include <vector>

#include "steerkit/assemblage.hpp"
#include "steerkit/sdp.hpp"
#include "steerkit/states.hpp"

namespace steerkit {

/// members[x][a] = tr_A(rho_AB (A_{a|x} (x) 1)). Each POVM must be PSD and sum
/// to the identity within 1e-10.
Assemblage assemblage_from_state(const TwoQubitState& rho_ab, const MeasurementSet& measurements,
                                 const std::vector<double>& input_weights = {});

/// sum_{a,x} p(x) D(sigma_{a|x}, sigma'_{a|x})
double assemblage_distance(const Assemblage& a, const Assemblage& b);

struct SminResult {
  double value = 0.0;
  LhsModel model;
};

struct RobustnessResult {
  double t_min = 0.0;
  Assemblage closest;
  LhsModel model;
  /// Largest eigenvalue over the slacks of the robustness constraints at the
  /// optimum. The restricted-noise program forces these to vanish.
  double max_slack_eigenvalue = 0.0;
  sdp::SdpSolution solution;
};

SminResult s_min(const Assemblage& a, const sdp::SolverOptions& opts = {});
RobustnessResult rncsr(const Assemblage& a, const sdp::SolverOptions& opts = {});
RobustnessResult csr(const Assemblage& a, const sdp::SolverOptions& opts = {});

double s_max_restricted(const Assemblage& a, const sdp::SolverOptions& opts = {});
double s_max(const Assemblage& a, const sdp::SolverOptions& opts = {});

/// Bloch-sphere form of s_max_restricted for a given t_min:
/// sum_{a,x} p(a|x) t / (N_x (1 + t)) |p_{a|x} - q_B| / 2 with p(x) in place of
/// 1/N_x. Terms with p(a|x) = 0 are skipped.
double s_max_restricted_bloch(const Assemblage& a, double t_min);

struct BoundsReport {
  double s_min = 0.0;
  double s_max = 0.0;
  double s_max_restricted = 0.0;
  double t_rncsr = 0.0;
  double t_csr = 0.0;
  Assemblage closest_rncsr_assemblage;
  Assemblage closest_csr_assemblage;
};

BoundsReport bounds(const Assemblage& a, const sdp::SolverOptions& opts = {});

/// Restricted deterministic wiring followed by a Kraus operator on Bob:
///   sigma'_{a'|x'} = sum_{a,x} p(x|x') p(a'|a,x,x') K sigma_{a|x} K^dagger
/// p_x[x'][x] = p(x|x'); p_out[x'][x][a][a'] = p(a'|a,x,x').
/// The result is left unnormalized when K^dagger K < 1.
Assemblage apply_wiring(const Assemblage& a, const std::vector<std::vector<double>>& p_x,
                        const std::vector<std::vector<std::vector<std::vector<double>>>>& p_out,
                        const ComplexMatrix& kraus, const std::vector<double>& output_weights = {});

}  // namespace steerkit
