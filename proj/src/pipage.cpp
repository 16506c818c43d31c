#include "dismax/pipage.hpp"

#include <cmath>
#include <string>

#include "dismax/exact.hpp"

namespace dismax {

namespace {

// Snap a just-updated coordinate to {0,1}: drop zeros, promote ones.
void settle(RoundingState& state, StrategyId p) {
  auto it = state.fractional.find(p);
  if (it == state.fractional.end()) return;
  double& v = it->second;
  if (std::abs(v) <= kProbTol) {
    state.fractional.erase(it);
    return;
  }
  if (std::abs(v - 1.0) <= kProbTol) {
    state.selected.insert(p);
    state.fractional.erase(it);
    return;
  }
  if (v < 0.0 || v > 1.0)
    throw invariant_error("rounding pushed a coordinate outside [0, 1]");
}

}  // namespace

void pipage_step(RoundingState& state, StrategyId p, StrategyId q, Substream& rng) {
  if (p == q) throw config_error("pipage_step: coordinates must differ");
  const auto ip = state.fractional.find(p);
  const auto iq = state.fractional.find(q);
  if (ip == state.fractional.end() || iq == state.fractional.end())
    throw config_error("pipage_step: both coordinates must be strictly fractional");
  double& yp = ip->second;
  double& yq = iq->second;

  const double dp = std::min(yp, 1.0 - yq);
  const double dq = std::min(1.0 - yp, yq);
  // Both in (0,1) implies dp, dq > 0; probabilities chosen so each coordinate
  // keeps its expectation.
  if (rng.uniform01() < dq / (dp + dq)) {
    yp -= dp;
    yq += dp;
  } else {
    yq -= dq;
    yp += dq;
  }
  settle(state, p);
  settle(state, q);
}

StrategySubset round_block(const InformationSet& state, const AgentPartition& partition,
                           AgentId i, Substream& rng) {
  RoundingState rounding;
  double block_total = 0.0;
  for (StrategyId p = partition.block_first(i); p <= partition.block_last(i); ++p) {
    const double v = state.value(p);
    if (v < -kProbTol || v > 1.0 + kProbTol)
      throw config_error("round_block: coordinate outside [0, 1]");
    block_total += v;
    if (std::abs(v) <= kProbTol) continue;
    if (std::abs(v - 1.0) <= kProbTol) {
      rounding.selected.insert(p);
    } else {
      rounding.fractional[p] = v;
    }
  }
  const double budget = static_cast<double>(partition.budget(i));
  if (std::abs(block_total - budget) > 1e-6)
    throw config_error("round_block: block mass " + std::to_string(block_total) +
                       " is not the full budget " + std::to_string(budget));

  while (!rounding.fractional.empty()) {
    if (rounding.fractional.size() == 1)
      throw invariant_error(
          "round_block: a single fractional coordinate cannot carry integral mass");
    // Two smallest fractional ids; map iteration is ascending.
    auto it = rounding.fractional.begin();
    const StrategyId p = it->first;
    const StrategyId q = std::next(it)->first;
    pipage_step(rounding, p, q, rng);
  }

  if (static_cast<int>(rounding.selected.size()) != partition.budget(i))
    throw invariant_error("round_block: selection size differs from the budget");
  return rounding.selected;
}

StrategySubset round_all_blocks(const std::vector<InformationSet>& states,
                                const AgentPartition& partition,
                                std::uint64_t trial_seed) {
  if (static_cast<int>(states.size()) != partition.num_agents())
    throw config_error("one information set per agent required");
  StrategySubset out;
  for (AgentId i = 1; i <= partition.num_agents(); ++i) {
    Substream rng =
        make_substream(trial_seed, static_cast<std::uint32_t>(i), 0, Phase::kPipage);
    for (StrategyId p :
         round_block(states[static_cast<std::size_t>(i - 1)], partition, i, rng))
      out.insert(p);
  }
  return out;
}

RoundingReport rounding_expectation_check(const ValueOracle& f, const MembershipVector& x,
                                          const AgentPartition& partition, int trials,
                                          Substream& rng, int max_n) {
  if (trials < 2) throw config_error("rounding_expectation_check: need at least 2 trials");
  if (!partition.in_polytope(x))
    throw config_error("rounding_expectation_check: x outside the polytope");
  const InformationSet info = InformationSet::from_membership(x);

  RoundingReport rep;
  rep.trials = trials;
  rep.exact_value = multilinear_exact(f, x, max_n);
  double sum = 0.0;
  double sumsq = 0.0;
  for (int k = 0; k < trials; ++k) {
    StrategySubset rounded;
    for (AgentId i = 1; i <= partition.num_agents(); ++i)
      for (StrategyId p : round_block(info, partition, i, rng)) rounded.insert(p);
    const double v = f.evaluate(rounded);
    sum += v;
    sumsq += v * v;
  }
  rep.mc_mean = sum / trials;
  const double var =
      std::max(0.0, (sumsq - sum * sum / trials) / (static_cast<double>(trials) - 1.0));
  rep.mc_std_error = std::sqrt(var / trials);
  rep.pass = rep.mc_mean + 3.0 * rep.mc_std_error >= rep.exact_value;
  return rep;
}

}  // namespace dismax
