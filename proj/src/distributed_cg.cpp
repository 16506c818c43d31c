#include "dismax/distributed_cg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dismax {

int RoundConfig::samples_for(AgentId i, int num_agents) const {
  if (samples.size() == 1) return samples[0];
  if (static_cast<int>(samples.size()) != num_agents)
    throw config_error("samples: give one value or one per agent");
  if (i < 1 || i > num_agents) throw config_error("agent id out of range");
  return samples[static_cast<std::size_t>(i - 1)];
}

void RoundConfig::validate(int num_agents) const {
  if (horizon < 1) throw config_error("horizon must be at least 1");
  if (consensus_rounds < 1) throw config_error("consensus_rounds must be at least 1");
  if (samples.empty()) throw config_error("samples must not be empty");
  for (AgentId i = 1; i <= num_agents; ++i)
    if (samples_for(i, num_agents) < 1)
      throw config_error("every agent needs at least one sample per round");
}

InformationSet local_ascent_step(const InformationSet& state, const ValueOracle& f,
                                 const AgentPartition& partition, AgentId i,
                                 const RoundConfig& cfg, Substream& rng,
                                 StrategySubset* picked) {
  const int n = partition.ground_size();
  if (f.ground_size() != n)
    throw config_error("oracle and partition disagree on ground set size");
  const MembershipVector x = state.to_membership(n);
  SampleBatch batch = draw_samples(x, cfg.samples_for(i, partition.num_agents()), rng);
  const std::vector<StrategyId> block = partition.block_strategies(i);
  const GradientEstimate est = estimate_gradient(f, batch, block);

  // budget(i) largest estimates; stable sort on descending value keeps the
  // smaller id first among ties.
  std::vector<std::size_t> order(block.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&est](std::size_t a, std::size_t b) {
    return est.value[a] > est.value[b];
  });

  const double step = 1.0 / static_cast<double>(cfg.horizon);
  std::vector<std::pair<StrategyId, double>> additions;
  StrategySubset chosen;
  for (int r = 0; r < partition.budget(i); ++r) {
    const StrategyId p = block[order[static_cast<std::size_t>(r)]];
    additions.emplace_back(p, step);
    chosen.insert(p);
  }
  if (picked != nullptr) *picked = chosen;
  return oplus(state, additions);
}

std::vector<InformationSet> consensus_round(const std::vector<InformationSet>& states,
                                            const CommGraph& graph, int rounds,
                                            std::size_t* entries_broadcast) {
  if (static_cast<int>(states.size()) != graph.num_agents())
    throw config_error("one information set per agent required");
  if (rounds < 1) throw config_error("consensus needs at least one sweep");
  std::vector<InformationSet> current = states;
  for (int m = 0; m < rounds; ++m) {
    if (entries_broadcast != nullptr)
      for (const InformationSet& s : current) *entries_broadcast += s.size();
    std::vector<InformationSet> next(current.size());
    for (AgentId i = 1; i <= graph.num_agents(); ++i) {
      std::vector<const InformationSet*> inputs{&current[static_cast<std::size_t>(i - 1)]};
      for (AgentId j : graph.neighbors(i))
        inputs.push_back(&current[static_cast<std::size_t>(j - 1)]);
      next[static_cast<std::size_t>(i - 1)] = max_merge(inputs);
    }
    current = std::move(next);
  }
  return current;
}

MembershipVector aggregate_vector(const std::vector<InformationSet>& states,
                                  const AgentPartition& partition, double tol) {
  if (static_cast<int>(states.size()) != partition.num_agents())
    throw config_error("one information set per agent required");
  const int n = partition.ground_size();
  MembershipVector own(n);
  MembershipVector keywise(n);
  for (AgentId i = 1; i <= partition.num_agents(); ++i) {
    const InformationSet& s = states[static_cast<std::size_t>(i - 1)];
    for (const auto& [p, v] : s.entries()) {
      if (p < 1 || p > n) throw config_error("information set key outside 1..n");
      keywise[p] = std::max(keywise[p], v);
    }
    for (StrategyId p = partition.block_first(i); p <= partition.block_last(i); ++p)
      own[p] = s.value(p);
  }
  for (StrategyId p = 1; p <= n; ++p) {
    if (std::abs(own[p] - keywise[p]) > tol)
      throw invariant_error(
          "aggregate mismatch at strategy " + std::to_string(p) +
          ": some agent holds a copy above the owner's value");
  }
  return own;
}

DistributedRun run_distributed_cg(const ValueOracle& f, const AgentPartition& partition,
                                  const CommGraph& graph, const RoundConfig& cfg) {
  const int num_agents = partition.num_agents();
  if (graph.num_agents() != num_agents)
    throw config_error("graph and partition disagree on the number of agents");
  if (f.ground_size() != partition.ground_size())
    throw config_error("oracle and partition disagree on ground set size");
  cfg.validate(num_agents);

  const int n = partition.ground_size();
  const int horizon = cfg.horizon;
  const double inv_kappa = 1.0 / static_cast<double>(partition.total_budget());

  DistributedRun run;
  run.rounds.reserve(static_cast<std::size_t>(horizon));
  std::vector<InformationSet> states(static_cast<std::size_t>(num_agents));
  MembershipVector prev_aggregate(n);

  for (int t = 0; t < horizon; ++t) {
    RoundTrace trace;
    trace.selected.resize(static_cast<std::size_t>(num_agents));

    // All agents step from their current states in parallel (order-free).
    std::vector<InformationSet> propagated(static_cast<std::size_t>(num_agents));
    for (AgentId i = 1; i <= num_agents; ++i) {
      Substream rng = make_substream(cfg.stream_seed, static_cast<std::uint32_t>(i),
                                     static_cast<std::uint32_t>(t), Phase::kSample);
      propagated[static_cast<std::size_t>(i - 1)] =
          local_ascent_step(states[static_cast<std::size_t>(i - 1)], f, partition, i, cfg,
                            rng, &trace.selected[static_cast<std::size_t>(i - 1)]);
    }

    std::size_t payload = 0;
    states = consensus_round(propagated, graph, cfg.consensus_rounds, &payload);
    trace.entries_broadcast = payload;
    trace.aggregate = aggregate_vector(states, partition);

    trace.own_block_sums.resize(static_cast<std::size_t>(num_agents));
    trace.disagreement.resize(static_cast<std::size_t>(num_agents));
    for (AgentId i = 1; i <= num_agents; ++i) {
      trace.own_block_sums[static_cast<std::size_t>(i - 1)] =
          partition.block_sum(trace.aggregate, i);
      const MembershipVector xi =
          states[static_cast<std::size_t>(i - 1)].to_membership(n);
      double gap = 0.0;
      for (StrategyId p = 1; p <= n; ++p) gap += trace.aggregate[p] - xi[p];
      trace.disagreement[static_cast<std::size_t>(i - 1)] = inv_kappa * gap;
      if (cfg.audit && !partition.in_polytope(xi)) trace.polytope_ok = false;
    }

    if (cfg.audit) {
      if (!partition.in_polytope(trace.aggregate)) trace.polytope_ok = false;
      // No copy may exceed the owner's value, no coordinate may shrink.
      for (AgentId j = 1; j <= num_agents; ++j) {
        for (const auto& [p, v] : states[static_cast<std::size_t>(j - 1)].entries())
          if (v > trace.aggregate[p] + kProbTol) trace.ownership_ok = false;
      }
      for (StrategyId p = 1; p <= n; ++p)
        if (trace.aggregate[p] < prev_aggregate[p]) trace.monotone_ok = false;
      if (!trace.polytope_ok || !trace.ownership_ok || !trace.monotone_ok)
        throw invariant_error("protocol audit failed in round " + std::to_string(t + 1));
    }

    prev_aggregate = trace.aggregate;
    run.rounds.push_back(std::move(trace));
  }

  run.info_sets = std::move(states);
  return run;
}

double guarantee_factor(double curvature, int total_budget, int graph_term,
                            int horizon) {
  if (curvature < 0.0 || curvature > 1.0)
    throw config_error("curvature must lie in [0, 1]");
  if (total_budget < 1 || horizon < 1 || graph_term < 0)
    throw config_error("guarantee_factor: bad arguments");
  const double c = curvature;
  const double kappa = static_cast<double>(total_budget);
  const double t = static_cast<double>(horizon);
  const double ratio = c < 1e-12 ? 1.0 : (1.0 - std::exp(-c)) / c;
  const double penalty =
      (2.0 * c * kappa * static_cast<double>(graph_term) + c * kappa / 2.0 + 1.0) *
      kappa / t;
  return ratio * (1.0 - penalty);
}

}  // namespace dismax
