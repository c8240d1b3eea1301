#include "steerkit/assemblage.hpp"

#include <cmath>
#include <string>

#include "steerkit/error.hpp"

namespace steerkit {

Assemblage::Assemblage(std::vector<std::vector<HermitianMatrix>> members,
                       std::vector<double> input_weights, Normalization norm)
    : members_(std::move(members)), weights_(std::move(input_weights)) {
  if (members_.empty() || members_.front().empty()) {
    throw InvalidArgument("Assemblage: need at least one input and one outcome");
  }
  const std::size_t n_x = members_.size();
  const std::size_t n_a = members_.front().size();
  for (const auto& row : members_) {
    if (row.size() != n_a) throw InvalidArgument("Assemblage: ragged outcome lists");
    for (const auto& m : row) {
      if (m.dim() != 2) throw InvalidArgument("Assemblage: members must be 2x2");
      if (min_eigenvalue(m) < -kAssemblageTol) {
        throw InvalidArgument("Assemblage: member is not positive semidefinite");
      }
    }
  }
  if (weights_.empty()) weights_.assign(n_x, 1.0 / static_cast<double>(n_x));
  if (weights_.size() != n_x) throw InvalidArgument("Assemblage: one input weight per input");
  double wsum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw InvalidArgument("Assemblage: input weights must be non-negative");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > kAssemblageTol) {
    throw InvalidArgument("Assemblage: input weights must sum to 1");
  }

  std::vector<HermitianMatrix> marginals;
  for (const auto& row : members_) {
    HermitianMatrix s = HermitianMatrix::zero(2);
    for (const auto& m : row) s += m;
    marginals.push_back(s);
  }
  for (std::size_t x = 1; x < n_x; ++x) {
    if (trace_norm(marginals[x] - marginals[0]) > kAssemblageTol) {
      throw InvalidArgument("Assemblage: sum_a sigma_{a|x} depends on x (signaling)");
    }
  }
  reduced_ = HermitianMatrix::zero(2);
  for (const auto& s : marginals) reduced_ += s;
  reduced_ *= 1.0 / static_cast<double>(n_x);

  const double tr = reduced_.trace();
  if (norm == Normalization::Normalized && std::abs(tr - 1.0) > kAssemblageTol) {
    throw InvalidArgument("Assemblage: tr sigma_B must be 1 (got " + std::to_string(tr) + ")");
  }
  if (norm == Normalization::Subnormalized && tr > 1.0 + kAssemblageTol) {
    throw InvalidArgument("Assemblage: tr sigma_B exceeds 1");
  }
}

Assemblage Assemblage::renormalized() const {
  const double tr = reduced_.trace();
  if (!(tr > 0.0)) throw DomainError("Assemblage: cannot renormalize a zero assemblage");
  auto scaled = members_;
  for (auto& row : scaled)
    for (auto& m : row) m *= 1.0 / tr;
  return Assemblage(std::move(scaled), weights_);
}

Assemblage mix(const Assemblage& a, const Assemblage& b, double mu) {
  if (a.n_inputs() != b.n_inputs() || a.n_outcomes() != b.n_outcomes()) {
    throw InvalidArgument("mix: assemblage shapes differ");
  }
  if (a.input_weights() != b.input_weights()) throw InvalidArgument("mix: input weights differ");
  if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidArgument("mix: weight must lie in [0, 1]");
  auto members = a.members();
  for (int x = 0; x < a.n_inputs(); ++x)
    for (int a_ = 0; a_ < a.n_outcomes(); ++a_) {
      members[static_cast<std::size_t>(x)][static_cast<std::size_t>(a_)] =
          mu * a.member(x, a_) + (1.0 - mu) * b.member(x, a_);
    }
  return Assemblage(std::move(members), a.input_weights());
}

std::vector<DeterministicStrategy> deterministic_strategies(int n_inputs, int n_outcomes) {
  if (n_inputs < 1 || n_outcomes < 1) {
    throw InvalidArgument("deterministic_strategies: counts must be positive");
  }
  constexpr long long kGuard = 4096;
  long long count = 1;
  for (int i = 0; i < n_inputs; ++i) {
    count *= n_outcomes;
    if (count > kGuard) {
      throw InvalidArgument("deterministic_strategies: more than 4096 strategies");
    }
  }
  std::vector<DeterministicStrategy> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long idx = 0; idx < count; ++idx) {
    DeterministicStrategy s;
    s.outcomes.assign(static_cast<std::size_t>(n_inputs), 0);
    long long rem = idx;
    for (int x = n_inputs - 1; x >= 0; --x) {
      s.outcomes[static_cast<std::size_t>(x)] = static_cast<int>(rem % n_outcomes);
      rem /= n_outcomes;
    }
    out.push_back(std::move(s));
  }
  return out;
}

HermitianMatrix LhsModel::member(int x, int a) const {
  const auto strategies = deterministic_strategies(n_inputs, n_outcomes);
  if (strategies.size() != hidden_states.size()) {
    throw InvalidArgument("LhsModel: one hidden state per deterministic strategy is required");
  }
  HermitianMatrix out = HermitianMatrix::zero(2);
  for (std::size_t l = 0; l < strategies.size(); ++l) {
    if (strategies[l].responds(x, a)) out += hidden_states[l];
  }
  return out;
}

HermitianMatrix LhsModel::total() const {
  HermitianMatrix out = HermitianMatrix::zero(2);
  for (const auto& s : hidden_states) out += s;
  return out;
}

Assemblage LhsModel::assemblage(const std::vector<double>& input_weights) const {
  std::vector<std::vector<HermitianMatrix>> members(static_cast<std::size_t>(n_inputs));
  for (int x = 0; x < n_inputs; ++x)
    for (int a = 0; a < n_outcomes; ++a) members[static_cast<std::size_t>(x)].push_back(member(x, a));
  return Assemblage(std::move(members), input_weights, Normalization::Subnormalized);
}

}  // namespace steerkit
