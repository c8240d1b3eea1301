#pragma once

// Small dense semidefinite programs over Hermitian cones:
//
//   minimize    c^T y
//   subject to  sum_i y_i A_i^(j) - B^(j)  is PSD   for every block j
//               E y = f
//
// y is a vector of free real scalars. Complex blocks are solved through their
// real symmetric embedding; blocks whose matrices are all real stay real.

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "steerkit/linalg.hpp"

namespace steerkit::sdp {

/// sum_i y_i A_i - B must be PSD.
struct LinearMatrixInequality {
  HermitianMatrix constant;                            // B
  std::vector<std::pair<int, HermitianMatrix>> coeffs;  // (i, A_i)
};

struct LinearEquality {
  std::vector<std::pair<int, double>> coeffs;
  double rhs = 0.0;
};

struct SdpProblem {
  int num_vars = 0;
  Eigen::VectorXd objective;  // c
  std::vector<LinearMatrixInequality> blocks;
  std::vector<LinearEquality> equalities;

  /// Throws InvalidArgument on dimension mismatches, bad indices or an
  /// empty variable set.
  void validate() const;
};

enum class Status { Optimal, PrimalInfeasible, DualInfeasible, IterationLimit };

std::string to_string(Status s);

struct SolverOptions {
  double gap_tol = 1e-9;
  double feas_tol = 1e-9;
  int max_iter = 200;
};

struct IterationRecord {
  int iteration = 0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;  // LMI residual of y (relative)
  double dual_residual = 0.0;    // trace-equation residual of X (relative)
  double mu = 0.0;
  double tau = 0.0;
  double kappa = 0.0;
  double step = 0.0;
};

struct SdpSolution {
  Status status = Status::IterationLimit;
  Eigen::VectorXd y;
  double primal_objective = 0.0;  // c^T y
  double dual_objective = 0.0;    // <B, X> + affine terms from equalities
  double gap = 0.0;               // primal - dual
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  /// Smallest eigenvalue over all blocks of sum_i y_i A_i - B.
  double min_slack_eigenvalue = 0.0;
  int iterations = 0;
  /// PrimalInfeasible: dual multipliers (embedded blocks) proving that no y
  /// satisfies the constraints. DualInfeasible: `ray` is a y-direction with
  /// c^T ray < 0 that keeps every LMI feasible.
  std::vector<Eigen::MatrixXd> dual_blocks;
  Eigen::VectorXd ray;
  std::vector<IterationRecord> history;
};

SdpSolution solve(const SdpProblem& problem, const SolverOptions& opts = {});

/// [[Re h, -Im h], [Im h, Re h]]
Eigen::MatrixXd embed_hermitian(const HermitianMatrix& h);

/// Value of sum_i y_i A_i - B for one block.
HermitianMatrix lmi_value(const LinearMatrixInequality& lmi, const Eigen::VectorXd& y);

/// Sparse SDPA-like dump of the embedded real problem, for cross-checking
/// against external solvers.
void write_sdpa(const SdpProblem& problem, std::ostream& out);

}  // namespace steerkit::sdp
