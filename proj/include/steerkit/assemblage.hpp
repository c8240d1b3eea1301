#pragma once

#include <vector>

#include "steerkit/linalg.hpp"

namespace steerkit {

/// Positive operator-valued measurement on a qubit: one effect per outcome.
using Povm = std::vector<HermitianMatrix>;
/// One POVM per input x.
using MeasurementSet = std::vector<Povm>;

inline constexpr double kAssemblageTol = 1e-9;

enum class Normalization {
  Normalized,     // tr sigma_B = 1
  Subnormalized,  // tr sigma_B <= 1, e.g. after a trace-decreasing Kraus map
};

/// Family {sigma_{a|x}} of subnormalized qubit states with input weights p(x).
/// The constructor enforces positivity, no-signaling and normalization.
class Assemblage {
 public:
  Assemblage() = default;
  /// members[x][a]; empty `input_weights` means uniform 1/N_x.
  Assemblage(std::vector<std::vector<HermitianMatrix>> members,
             std::vector<double> input_weights = {},
             Normalization norm = Normalization::Normalized);

  int n_inputs() const { return static_cast<int>(members_.size()); }
  int n_outcomes() const { return members_.empty() ? 0 : static_cast<int>(members_.front().size()); }

  const HermitianMatrix& member(int x, int a) const { return members_.at(x).at(a); }
  const std::vector<std::vector<HermitianMatrix>>& members() const { return members_; }
  const std::vector<double>& input_weights() const { return weights_; }
  double input_weight(int x) const { return weights_.at(x); }

  /// p(a|x) = tr sigma_{a|x}
  double outcome_probability(int x, int a) const { return member(x, a).trace(); }

  /// sigma_B = sum_a sigma_{a|x} (averaged over x to absorb rounding).
  const HermitianMatrix& reduced_state() const { return reduced_; }

  /// Same members scaled so that tr sigma_B = 1.
  Assemblage renormalized() const;

 private:
  std::vector<std::vector<HermitianMatrix>> members_;
  std::vector<double> weights_;
  HermitianMatrix reduced_;
};

/// mu * a + (1 - mu) * b. Requires equal shapes and input weights.
Assemblage mix(const Assemblage& a, const Assemblage& b, double mu);

/// Response function lambda = (lambda_x)_x, one outcome per input.
struct DeterministicStrategy {
  std::vector<int> outcomes;  // lambda_x
  bool responds(int x, int a) const { return outcomes.at(x) == a; }
};

/// All N_a^{N_x} strategies in lexicographic order (input 0 most significant).
/// Throws when the count exceeds 4096.
std::vector<DeterministicStrategy> deterministic_strategies(int n_inputs, int n_outcomes);

/// Unnormalized hidden states sigma_lambda (p(lambda) absorbed in the trace),
/// one per deterministic strategy.
struct LhsModel {
  int n_inputs = 0;
  int n_outcomes = 0;
  std::vector<HermitianMatrix> hidden_states;

  /// sum_lambda delta_{a, lambda_x} sigma_lambda
  HermitianMatrix member(int x, int a) const;
  HermitianMatrix total() const;
  /// Assemblage generated by the model (may be subnormalized).
  Assemblage assemblage(const std::vector<double>& input_weights = {}) const;
};

}  // namespace steerkit
