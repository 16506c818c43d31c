#include "dismax/baselines.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "dismax/pipage.hpp"

namespace dismax {

namespace {

std::uint64_t choose_count(int n, int k) {
  // Small inputs only; long double keeps us honest about overflow.
  long double c = 1.0L;
  for (int j = 1; j <= k; ++j) c = c * static_cast<long double>(n - k + j) / j;
  return static_cast<std::uint64_t>(c + 0.5L);
}

// Lexicographic next k-combination over indices 0..m-1; false when exhausted.
bool next_combination(std::vector<int>& comb, int m) {
  const int k = static_cast<int>(comb.size());
  for (int i = k - 1; i >= 0; --i) {
    if (comb[static_cast<std::size_t>(i)] < m - k + i) {
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

BruteForceResult brute_force_opt(const ValueOracle& f, const AgentPartition& partition,
                                 std::uint64_t max_combinations) {
  if (f.ground_size() != partition.ground_size())
    throw config_error("oracle and partition disagree on ground set size");

  const int num_agents = partition.num_agents();
  long double total = 1.0L;
  for (AgentId i = 1; i <= num_agents; ++i) {
    total *= static_cast<long double>(choose_count(partition.block_size(i), partition.budget(i)));
    if (total > static_cast<long double>(max_combinations))
      throw guard_error("brute_force_opt: combination count exceeds guard of " +
                        std::to_string(max_combinations));
  }

  BruteForceResult result;
  result.value = -1.0;

  // Per-block combination state, advanced odometer-style with block 1 slowest;
  // blocks are id-contiguous and ascending, so enumeration order is
  // lexicographic on the combined id set and the first maximum found is the
  // lexicographically smallest one.
  std::vector<std::vector<int>> comb(static_cast<std::size_t>(num_agents));
  for (AgentId i = 1; i <= num_agents; ++i) {
    comb[static_cast<std::size_t>(i - 1)].resize(static_cast<std::size_t>(partition.budget(i)));
    for (int j = 0; j < partition.budget(i); ++j)
      comb[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] = j;
  }

  bool done = false;
  while (!done) {
    std::vector<StrategyId> ids;
    for (AgentId i = 1; i <= num_agents; ++i)
      for (int j : comb[static_cast<std::size_t>(i - 1)])
        ids.push_back(partition.block_first(i) + j);
    const StrategySubset candidate(std::move(ids));
    const double v = f.evaluate(candidate);
    ++result.combinations;
    if (v > result.value) {
      result.value = v;
      result.best = candidate;
    }
    // Advance the odometer from the last block.
    done = true;
    for (AgentId i = num_agents; i >= 1; --i) {
      if (next_combination(comb[static_cast<std::size_t>(i - 1)], partition.block_size(i))) {
        done = false;
        break;
      }
      for (int j = 0; j < partition.budget(i); ++j)
        comb[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] = j;
    }
  }
  return result;
}

void VisitSequence::validate(const CommGraph& graph) const {
  if (order.empty()) throw config_error("visit sequence must not be empty");
  std::set<AgentId> seen;
  for (AgentId a : order) {
    if (a < 1 || a > graph.num_agents())
      throw config_error("visit sequence names agent outside 1..N");
    seen.insert(a);
  }
  if (static_cast<int>(seen.size()) != graph.num_agents())
    throw config_error("visit sequence must reach every agent");
  for (std::size_t t = 0; t + 1 < order.size(); ++t) {
    if (order[t] == order[t + 1])
      throw config_error("visit sequence repeats an agent consecutively");
    if (!graph.has_edge(order[t], order[t + 1]))
      throw config_error("visit sequence hops between non-adjacent agents " +
                         std::to_string(order[t]) + " and " + std::to_string(order[t + 1]));
  }
}

StrategySubset sequential_greedy(const ValueOracle& f, const AgentPartition& partition,
                                 const CommGraph& graph, const VisitSequence& seq) {
  if (f.ground_size() != partition.ground_size())
    throw config_error("oracle and partition disagree on ground set size");
  if (graph.num_agents() != partition.num_agents())
    throw config_error("graph and partition disagree on the number of agents");
  seq.validate(graph);

  StrategySubset chosen;
  std::set<AgentId> acted;
  for (AgentId i : seq.order) {
    if (!acted.insert(i).second) continue;  // revisits only relay the state
    for (int r = 0; r < partition.budget(i); ++r) {
      const double base = f.evaluate(chosen);
      double best_gain = -1.0;
      StrategyId best = 0;
      for (StrategyId p = partition.block_first(i); p <= partition.block_last(i); ++p) {
        if (chosen.contains(p)) continue;
        const double gain = f.evaluate(chosen.with(p)) - base;
        if (gain > best_gain) {
          best_gain = gain;
          best = p;
        }
      }
      if (best == 0) throw invariant_error("sequential greedy found no candidate");
      chosen.insert(best);
    }
  }
  return chosen;
}

CentralizedRun centralized_cg(const ValueOracle& f, const AgentPartition& partition,
                              const RoundConfig& cfg) {
  const int num_agents = partition.num_agents();
  if (f.ground_size() != partition.ground_size())
    throw config_error("oracle and partition disagree on ground set size");
  cfg.validate(num_agents);

  const int n = partition.ground_size();
  CentralizedRun run;
  InformationSet state;
  run.trajectory.push_back(state.to_membership(n));

  const double step = 1.0 / static_cast<double>(cfg.horizon);
  for (int t = 0; t < cfg.horizon; ++t) {
    // Same per-(agent, round) streams and selection rule as the distributed
    // protocol, but every block reads the one coordinator state. All blocks
    // select against the round-start state; updates apply together afterwards.
    std::vector<StrategySubset> picks(static_cast<std::size_t>(num_agents));
    std::vector<std::pair<StrategyId, double>> additions;
    for (AgentId i = 1; i <= num_agents; ++i) {
      Substream rng = make_substream(cfg.stream_seed, static_cast<std::uint32_t>(i),
                                     static_cast<std::uint32_t>(t), Phase::kSample);
      local_ascent_step(state, f, partition, i, cfg, rng,
                        &picks[static_cast<std::size_t>(i - 1)]);
      for (StrategyId p : picks[static_cast<std::size_t>(i - 1)])
        additions.emplace_back(p, step);
    }
    state = oplus(state, additions);
    run.selected.push_back(std::move(picks));
    run.trajectory.push_back(state.to_membership(n));
  }

  // Per-block rounding with the same substreams the distributed rounding uses.
  std::vector<InformationSet> views(static_cast<std::size_t>(num_agents), state);
  run.rounded = round_all_blocks(views, partition, cfg.stream_seed);
  return run;
}

}  // namespace dismax
