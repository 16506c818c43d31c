#pragma once

#include <map>
#include <vector>

#include "dismax/info_set.hpp"
#include "dismax/matroid.hpp"
#include "dismax/oracle.hpp"
#include "dismax/rng.hpp"
#include "dismax/types.hpp"

namespace dismax {

// In-progress rounding of one agent block: fractional coordinates plus the ids
// already rounded up. Block sum stays constant throughout.
struct RoundingState {
  std::map<StrategyId, double> fractional;  // values in (0, 1)
  StrategySubset selected;                  // rounded to 1
};

// One randomized pairwise step on fractional coordinates p < q:
//   dp = min(y_p, 1 - y_q), dq = min(1 - y_p, y_q);
//   with prob dq/(dp+dq): y_p -= dp, y_q += dp;  else y_q -= dq, y_p += dq.
// Expectation-preserving per coordinate; at least one of p, q leaves (0, 1).
// Values within kProbTol of an integer snap to it afterwards.
void pipage_step(RoundingState& state, StrategyId p, StrategyId q, Substream& rng);

// Round one agent's block to exactly budget(i) ones. Repeatedly applies
// pipage_step to the two smallest fractional ids. The fractional block sum
// must be integral (= budget(i) less the already-integral ones) on entry;
// a lone fractional survivor mid-run is an internal parity error.
StrategySubset round_block(const InformationSet& state, const AgentPartition& partition,
                           AgentId i, Substream& rng);

// All agents round their own blocks independently; union of the results.
StrategySubset round_all_blocks(const std::vector<InformationSet>& states,
                                const AgentPartition& partition,
                                std::uint64_t trial_seed);

// Monte-Carlo check that rounding does not lose value in expectation:
// mean of f(rounded) over `trials` independent roundings of x, its standard
// error, the exact F(x), and the one-sided test mean + 3*SE >= F(x).
struct RoundingReport {
  double mc_mean = 0.0;
  double mc_std_error = 0.0;
  double exact_value = 0.0;
  int trials = 0;
  bool pass = false;
};

RoundingReport rounding_expectation_check(const ValueOracle& f, const MembershipVector& x,
                                          const AgentPartition& partition, int trials,
                                          Substream& rng, int max_n = 20);

}  // namespace dismax
