#pragma once

#include <cstdint>
#include <vector>

#include "dismax/oracle.hpp"
#include "dismax/rng.hpp"
#include "dismax/types.hpp"

namespace dismax {

// K independent sets drawn coordinate-wise from x. The batch keeps the vector
// it was drawn from so downstream consumers cannot pair it with the wrong x.
struct SampleBatch {
  std::vector<StrategySubset> sets;
  MembershipVector x;
  std::uint64_t stream_seed = 0;
};

// Coordinates are visited in ascending strategy id; zero coordinates consume
// no randomness, every nonzero coordinate consumes exactly one draw and is
// included iff u < x_p (so x_p = 1 always enters). Both facts are load-bearing:
// they make runs with identical supports consume identical stream prefixes.
SampleBatch draw_samples(const MembershipVector& x, int k, Substream& rng);

// Sampled gradient restricted to `support`: w_p = mean over the batch of
// f(R u {p}) - f(R \ {p}). Exactly 2 * K * |support| oracle calls.
struct GradientEstimate {
  std::vector<StrategyId> support;
  std::vector<double> value;  // aligned with support
  int sample_count = 0;

  double at(StrategyId p) const;
};

GradientEstimate estimate_gradient(const ValueOracle& f, const SampleBatch& batch,
                                   const std::vector<StrategyId>& support);

// Concentration report for the estimator at horizon T with K samples:
// per-coordinate deviation beyond f_star_bound/(2T) has probability at most
// 2*exp(-K/(8T^2)); across n coordinates and T rounds the run-level success
// probability is 1 - 2*T*n*exp(-K/(8T^2)), which can be <= 0 (vacuous) and is
// reported as computed.
struct HoeffdingReport {
  double deviation_threshold = 0.0;
  double per_coordinate_failure = 0.0;
  double aggregate_success = 0.0;
  bool vacuous() const { return aggregate_success <= 0.0; }
};

HoeffdingReport hoeffding_confidence(int k, int horizon, int n, double f_star_bound);

}  // namespace dismax
