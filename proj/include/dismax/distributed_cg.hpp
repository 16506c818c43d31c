#pragma once

#include <cstdint>
#include <vector>

#include "dismax/graph.hpp"
#include "dismax/info_set.hpp"
#include "dismax/matroid.hpp"
#include "dismax/oracle.hpp"
#include "dismax/rng.hpp"
#include "dismax/sampling.hpp"
#include "dismax/types.hpp"

namespace dismax {

struct RoundConfig {
  int horizon = 50;               // ascent rounds T; step size is 1/T
  std::vector<int> samples;       // K_i per agent; a single entry broadcasts to all
  int consensus_rounds = 1;       // max-merge sweeps per ascent round (1 or diameter)
  std::uint64_t stream_seed = 0;  // trial-level seed; substreams derive from it
  bool audit = true;              // run protocol invariant checks every round

  int samples_for(AgentId i, int num_agents) const;
  void validate(int num_agents) const;
};

// Per-round protocol observables. `aggregate` is the keywise max over agents,
// equal (checked) to the concatenation of own blocks.
struct RoundTrace {
  MembershipVector aggregate;
  std::vector<double> own_block_sums;     // per agent, over its own block
  std::vector<double> disagreement;       // per agent: (1/kappa) * 1.(xbar - x_i)
  std::vector<StrategySubset> selected;   // per agent, this round's ascent picks
  std::size_t entries_broadcast = 0;      // total sparse entries sent this round
  bool polytope_ok = true;                // every x_i and xbar inside the polytope
  bool ownership_ok = true;               // copies of block i never exceed agent i's own
  bool monotone_ok = true;                // no coordinate ever decreased
};

struct DistributedRun {
  std::vector<InformationSet> info_sets;  // final per-agent states, index i-1
  std::vector<RoundTrace> rounds;         // index t, t = 0..T-1

  const MembershipVector& final_aggregate() const { return rounds.back().aggregate; }
};

// One local ascent step of agent i: sample K_i sets from its current state,
// estimate the gradient on its own block, pick the budget(i) largest entries
// (ties to the smaller id), and add step mass 1/T to each pick.
InformationSet local_ascent_step(const InformationSet& state, const ValueOracle& f,
                                 const AgentPartition& partition, AgentId i,
                                 const RoundConfig& cfg, Substream& rng,
                                 StrategySubset* picked = nullptr);

// `rounds` synchronous max-merge sweeps: every agent simultaneously replaces
// its set with the keywise max over itself and its neighbors. Double-buffered,
// so the result is independent of agent iteration order.
// entries_broadcast, when given, accumulates the total message payload.
std::vector<InformationSet> consensus_round(const std::vector<InformationSet>& states,
                                            const CommGraph& graph, int rounds = 1,
                                            std::size_t* entries_broadcast = nullptr);

// Keywise max over all agents; verifies it equals the concatenation of own
// blocks (protocol invariant) before returning it.
MembershipVector aggregate_vector(const std::vector<InformationSet>& states,
                                  const AgentPartition& partition, double tol = kProbTol);

// Full multi-round protocol: T rounds of (parallel local ascent, consensus).
// Fractional output; rounding lives in the pipage module.
DistributedRun run_distributed_cg(const ValueOracle& f, const AgentPartition& partition,
                                  const CommGraph& graph, const RoundConfig& cfg);

// Performance factor multiplying f(R*) in the final-iterate guarantee:
//   (1/c)(1 - e^{-c}) * (1 - (2*c*kappa*graph_term + c*kappa/2 + 1) * kappa / T)
// with graph_term = diameter for one merge sweep per round and 0 when every
// round runs diameter sweeps (full agreement before each step). The modular
// limit c -> 0 of (1/c)(1 - e^{-c}) is 1 and is used below c = 1e-12.
double guarantee_factor(double curvature, int total_budget, int graph_term, int horizon);

}  // namespace dismax
