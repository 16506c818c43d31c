#include "dismax/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

namespace dismax {

namespace {

// Eager table budget; above this the coverage oracle scans per call.
constexpr std::size_t kMaskTableBudgetBytes = 128ull << 20;

double dist2d(Point2 a, Point2 b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

double marginal_gain(const ValueOracle& f, StrategyId p, const StrategySubset& base) {
  if (base.contains(p)) return 0.0;
  return f.evaluate(base.with(p)) - f.evaluate(base);
}

CoverageUtility::CoverageUtility(std::vector<Point2> sources, std::vector<Point2> sites,
                                 std::vector<int> site_of_strategy, Point2 depot)
    : ValueOracle(static_cast<int>(site_of_strategy.size())),
      sources_(std::move(sources)),
      sites_(std::move(sites)),
      site_of_(std::move(site_of_strategy)),
      depot_(depot) {
  if (sources_.empty()) throw config_error("coverage utility needs at least one source");
  if (sites_.empty()) throw config_error("coverage utility needs at least one site");
  if (sites_.size() > 63) throw config_error("coverage utility supports at most 63 sites");
  for (int s : site_of_) {
    if (s < 1 || s > static_cast<int>(sites_.size()))
      throw config_error("strategy mapped to a site index outside 1..#sites");
  }

  const std::size_t nd = sources_.size();
  depot_dist_.resize(nd);
  for (std::size_t d = 0; d < nd; ++d) depot_dist_[d] = dist2d(depot_, sources_[d]);
  dist_.assign(sites_.size(), std::vector<double>(nd));
  for (std::size_t k = 0; k < sites_.size(); ++k)
    for (std::size_t d = 0; d < nd; ++d) dist_[k][d] = dist2d(sites_[k], sources_[d]);

  baseline_cost_ = 0.0;
  for (double v : depot_dist_) baseline_cost_ += v;

  const std::size_t num_masks = std::size_t{1} << sites_.size();
  eager_ = num_masks * nd * sizeof(double) <= kMaskTableBudgetBytes;
  if (eager_) {
    // m[mask*nd + d] = min distance from source d to {depot} u sites(mask),
    // built by stripping the lowest set bit. Only the L sums are kept.
    std::vector<double> m(num_masks * nd);
    mask_cost_.resize(num_masks);
    std::memcpy(m.data(), depot_dist_.data(), nd * sizeof(double));
    mask_cost_[0] = baseline_cost_;
    for (std::size_t mask = 1; mask < num_masks; ++mask) {
      const int low = std::countr_zero(mask);
      const std::size_t prev = mask & (mask - 1);
      const double* prow = &m[prev * nd];
      const double* srow = dist_[static_cast<std::size_t>(low)].data();
      double* row = &m[mask * nd];
      double total = 0.0;
      for (std::size_t d = 0; d < nd; ++d) {
        row[d] = std::min(prow[d], srow[d]);
        total += row[d];
      }
      mask_cost_[mask] = total;
    }
  }
}

std::uint64_t CoverageUtility::mask_of(const StrategySubset& s) const {
  std::uint64_t mask = 0;
  for (StrategyId p : s) mask |= std::uint64_t{1} << (site_of_[static_cast<std::size_t>(p - 1)] - 1);
  return mask;
}

double CoverageUtility::cost_of_mask(std::uint64_t mask) const {
  if (eager_) return mask_cost_[mask];
  double total = 0.0;
  std::uint64_t m = mask;
  std::vector<const double*> rows;
  while (m != 0) {
    rows.push_back(dist_[static_cast<std::size_t>(std::countr_zero(m))].data());
    m &= m - 1;
  }
  for (std::size_t d = 0; d < sources_.size(); ++d) {
    double best = depot_dist_[d];
    for (const double* r : rows) best = std::min(best, r[d]);
    total += best;
  }
  return total;
}

double CoverageUtility::value_of(const StrategySubset& s) const {
  check_subset(s);
  return baseline_cost_ - cost_of_mask(mask_of(s));
}

int CoverageUtility::covered_sites(const StrategySubset& s) const {
  check_subset(s);
  return std::popcount(mask_of(s));
}

WeightedCoverageUtility::WeightedCoverageUtility(std::vector<double> element_weights,
                                                 std::vector<std::vector<int>> covers)
    : ValueOracle(static_cast<int>(covers.size())),
      weights_(std::move(element_weights)),
      covers_(std::move(covers)) {
  if (weights_.empty()) throw config_error("weighted coverage needs a nonempty universe");
  for (double w : weights_)
    if (!(w >= 0.0)) throw config_error("element weights must be nonnegative");
  const int u = universe_size();
  words_ = static_cast<std::size_t>((u + 63) / 64);
  mask_.assign(covers_.size(), std::vector<std::uint64_t>(words_, 0));
  for (std::size_t p = 0; p < covers_.size(); ++p) {
    std::sort(covers_[p].begin(), covers_[p].end());
    covers_[p].erase(std::unique(covers_[p].begin(), covers_[p].end()), covers_[p].end());
    for (int e : covers_[p]) {
      if (e < 1 || e > u) throw config_error("cover references element outside 1..U");
      mask_[p][static_cast<std::size_t>((e - 1) / 64)] |= std::uint64_t{1} << ((e - 1) % 64);
    }
  }
}

double WeightedCoverageUtility::value_of(const StrategySubset& s) const {
  check_subset(s);
  std::uint64_t stack_words[4] = {0, 0, 0, 0};
  std::vector<std::uint64_t> heap_words;
  std::uint64_t* acc = stack_words;
  if (words_ > 4) {
    heap_words.assign(words_, 0);
    acc = heap_words.data();
  }
  for (StrategyId p : s) {
    const auto& m = mask_[static_cast<std::size_t>(p - 1)];
    for (std::size_t w = 0; w < words_; ++w) acc[w] |= m[w];
  }
  double total = 0.0;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = acc[w];
    while (bits != 0) {
      const int b = std::countr_zero(bits);
      total += weights_[w * 64 + static_cast<std::size_t>(b)];
      bits &= bits - 1;
    }
  }
  return total;
}

}  // namespace dismax
