#include "dismax/matroid.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace dismax {

AgentPartition::AgentPartition(std::vector<int> block_sizes, std::vector<int> budgets)
    : sizes_(std::move(block_sizes)), budgets_(std::move(budgets)) {
  if (sizes_.empty()) throw config_error("partition needs at least one agent");
  if (sizes_.size() != budgets_.size())
    throw config_error("partition: one budget per block required");
  first_.resize(sizes_.size());
  StrategyId next = 1;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] < 1) throw config_error("partition: empty block");
    if (budgets_[i] < 1 || budgets_[i] > sizes_[i])
      throw config_error("partition: budget " + std::to_string(budgets_[i]) +
                         " outside 1..block size " + std::to_string(sizes_[i]));
    first_[i] = next;
    next += sizes_[i];
    total_budget_ += budgets_[i];
  }
  n_ = next - 1;
}

std::vector<StrategyId> AgentPartition::block_strategies(AgentId i) const {
  std::vector<StrategyId> out(static_cast<std::size_t>(block_size(i)));
  std::iota(out.begin(), out.end(), block_first(i));
  return out;
}

AgentId AgentPartition::agent_of(StrategyId p) const {
  if (p < 1 || p > n_) throw config_error("strategy id out of range");
  for (std::size_t i = 0; i < sizes_.size(); ++i)
    if (p < first_[i] + sizes_[i]) return static_cast<AgentId>(i + 1);
  throw invariant_error("agent_of: partition does not cover id");
}

bool AgentPartition::is_independent(const StrategySubset& s) const {
  std::vector<int> used(sizes_.size(), 0);
  for (StrategyId p : s) {
    if (p < 1 || p > n_) throw config_error("strategy id out of range");
    if (++used[static_cast<std::size_t>(agent_of(p) - 1)] >
        budgets_[static_cast<std::size_t>(agent_of(p) - 1)])
      return false;
  }
  return true;
}

double AgentPartition::block_sum(const MembershipVector& x, AgentId i) const {
  double total = 0.0;
  for (StrategyId p = block_first(i); p <= block_last(i); ++p) total += x[p];
  return total;
}

bool AgentPartition::in_polytope(const MembershipVector& x, double tol) const {
  if (x.dim() != n_) throw config_error("membership vector dimension mismatch");
  for (StrategyId p = 1; p <= n_; ++p)
    if (x[p] < -tol || x[p] > 1.0 + tol) return false;
  for (AgentId i = 1; i <= num_agents(); ++i)
    if (block_sum(x, i) > budget(i) + tol) return false;
  return true;
}

bool AgentPartition::is_vertex(const MembershipVector& x, double tol) const {
  if (x.dim() != n_) throw config_error("membership vector dimension mismatch");
  std::vector<StrategyId> ones;
  for (StrategyId p = 1; p <= n_; ++p) {
    const double v = x[p];
    if (std::abs(v) <= tol) continue;
    if (std::abs(v - 1.0) <= tol) {
      ones.push_back(p);
      continue;
    }
    return false;
  }
  return is_independent(StrategySubset(std::move(ones)));
}

}  // namespace dismax
