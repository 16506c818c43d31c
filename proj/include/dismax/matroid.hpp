#pragma once

#include <vector>

#include "dismax/types.hpp"

namespace dismax {

// Partition of strategies 1..n into N contiguous agent blocks with per-block
// budgets: agent i owns ids first(i)..last(i) and may activate at most
// budget(i) of them. Independence and the relaxed polytope both live here.
class AgentPartition {
 public:
  AgentPartition(std::vector<int> block_sizes, std::vector<int> budgets);

  int num_agents() const { return static_cast<int>(sizes_.size()); }
  int ground_size() const { return n_; }

  int block_size(AgentId i) const { return sizes_[check_agent(i)]; }
  int budget(AgentId i) const { return budgets_[check_agent(i)]; }
  StrategyId block_first(AgentId i) const { return first_[check_agent(i)]; }
  StrategyId block_last(AgentId i) const { return first_[check_agent(i)] + sizes_[check_agent(i)] - 1; }

  // Ascending ids of agent i's block.
  std::vector<StrategyId> block_strategies(AgentId i) const;

  AgentId agent_of(StrategyId p) const;

  // Sum of budgets (the rank of the matroid).
  int total_budget() const { return total_budget_; }

  bool is_independent(const StrategySubset& s) const;

  // Block-wise budget inequalities plus box constraints, each within tol.
  bool in_polytope(const MembershipVector& x, double tol = kProbTol) const;

  // Indicator vector of an independent set (coords within tol of {0,1} and
  // feasible); non-binary or infeasible x is not a vertex.
  bool is_vertex(const MembershipVector& x, double tol = kProbTol) const;

  double block_sum(const MembershipVector& x, AgentId i) const;

 private:
  std::size_t check_agent(AgentId i) const {
    if (i < 1 || i > num_agents()) throw config_error("agent id out of range");
    return static_cast<std::size_t>(i - 1);
  }
  std::vector<int> sizes_;
  std::vector<int> budgets_;
  std::vector<StrategyId> first_;
  int n_ = 0;
  int total_budget_ = 0;
};

}  // namespace dismax
