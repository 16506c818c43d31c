#pragma once

#include <cstdint>
#include <vector>

#include "dismax/distributed_cg.hpp"
#include "dismax/graph.hpp"
#include "dismax/matroid.hpp"
#include "dismax/oracle.hpp"
#include "dismax/types.hpp"

namespace dismax {

struct BruteForceResult {
  StrategySubset best;
  double value = 0.0;
  std::uint64_t combinations = 0;
};

// Exact optimum over all per-block choices of exactly budget(i) strategies
// (monotonicity makes full budgets optimal). Ties resolve to the
// lexicographically smallest id set. Guard: the combination count must not
// exceed max_combinations.
BruteForceResult brute_force_opt(const ValueOracle& f, const AgentPartition& partition,
                                 std::uint64_t max_combinations = 1000000);

// Order in which a traveling mediator visits agents; consecutive entries must
// be adjacent in the communication graph and every agent must appear.
struct VisitSequence {
  std::string name;
  std::vector<AgentId> order;

  void validate(const CommGraph& graph) const;
};

// Sequential greedy along the visit sequence: on its first visit an agent
// greedily adds its budget(i) best strategies one at a time (ties to the
// smaller id), seeing everything chosen upstream; repeat visits pass through.
StrategySubset sequential_greedy(const ValueOracle& f, const AgentPartition& partition,
                                 const CommGraph& graph, const VisitSequence& seq);

struct CentralizedRun {
  std::vector<MembershipVector> trajectory;  // x(0) .. x(T), T+1 entries
  std::vector<std::vector<StrategySubset>> selected;  // per round, per agent block
  StrategySubset rounded;

  const MembershipVector& final_x() const { return trajectory.back(); }
};

// Single-coordinator continuous greedy with the same estimator, step size,
// tie-breaking, substream addressing, and per-block rounding as the
// distributed protocol. With consensus_rounds = diameter the distributed
// trajectory coincides with this one bit for bit; that equivalence is tested.
CentralizedRun centralized_cg(const ValueOracle& f, const AgentPartition& partition,
                              const RoundConfig& cfg);

}  // namespace dismax
