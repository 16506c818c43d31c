#include "dismax/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace dismax {

SampleBatch draw_samples(const MembershipVector& x, int k, Substream& rng) {
  if (k < 1) throw config_error("draw_samples: need at least one sample");
  for (int p = 1; p <= x.dim(); ++p)
    if (x[p] < 0.0 || x[p] > 1.0)
      throw config_error("draw_samples: membership value outside [0, 1]");

  SampleBatch batch;
  batch.x = x;
  batch.stream_seed = rng.seed();
  batch.sets.reserve(static_cast<std::size_t>(k));
  const std::vector<StrategyId> support = x.support();
  std::vector<StrategyId> current;
  for (int s = 0; s < k; ++s) {
    current.clear();
    for (StrategyId p : support) {
      if (rng.uniform01() < x[p]) current.push_back(p);
    }
    batch.sets.push_back(StrategySubset(current));
  }
  return batch;
}

double GradientEstimate::at(StrategyId p) const {
  const auto it = std::lower_bound(support.begin(), support.end(), p);
  if (it == support.end() || *it != p)
    throw config_error("gradient estimate has no entry for requested strategy");
  return value[static_cast<std::size_t>(it - support.begin())];
}

GradientEstimate estimate_gradient(const ValueOracle& f, const SampleBatch& batch,
                                   const std::vector<StrategyId>& support) {
  if (support.empty()) throw config_error("estimate_gradient: empty support");
  if (batch.sets.empty()) throw config_error("estimate_gradient: empty batch");
  if (batch.x.dim() != f.ground_size())
    throw config_error("estimate_gradient: batch drawn for a different ground set");
  if (!std::is_sorted(support.begin(), support.end()))
    throw config_error("estimate_gradient: support must be ascending");

  GradientEstimate est;
  est.support = support;
  est.sample_count = static_cast<int>(batch.sets.size());
  est.value.resize(support.size());
  for (std::size_t j = 0; j < support.size(); ++j) {
    const StrategyId p = support[j];
    if (p < 1 || p > f.ground_size())
      throw config_error("estimate_gradient: support id outside ground set");
    double total = 0.0;
    for (const StrategySubset& r : batch.sets)
      total += f.evaluate(r.with(p)) - f.evaluate(r.without(p));
    est.value[j] = total / static_cast<double>(est.sample_count);
  }
  return est;
}

HoeffdingReport hoeffding_confidence(int k, int horizon, int n, double f_star_bound) {
  if (k < 1 || horizon < 1 || n < 1)
    throw config_error("hoeffding_confidence: k, horizon, n must be positive");
  if (!(f_star_bound >= 0.0))
    throw config_error("hoeffding_confidence: f_star_bound must be nonnegative");
  HoeffdingReport rep;
  rep.deviation_threshold = f_star_bound / (2.0 * horizon);
  const double t = static_cast<double>(horizon);
  rep.per_coordinate_failure = 2.0 * std::exp(-static_cast<double>(k) / (8.0 * t * t));
  rep.aggregate_success =
      1.0 - 2.0 * t * static_cast<double>(n) * std::exp(-static_cast<double>(k) / (8.0 * t * t));
  return rep;
}

}  // namespace dismax
