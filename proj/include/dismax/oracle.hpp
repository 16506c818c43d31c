#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "dismax/types.hpp"

namespace dismax {

// Value oracle for a normalized monotone set function on strategies 1..n.
// Every evaluate() ticks the call counter, including repeated arguments; the
// counter is the cost model every solver reports against.
class ValueOracle {
 public:
  virtual ~ValueOracle() = default;

  double evaluate(const StrategySubset& s) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return value_of(s);
  }

  int ground_size() const { return n_; }

  std::uint64_t eval_count() const { return calls_.load(std::memory_order_relaxed); }
  void reset_eval_count() const { calls_.store(0, std::memory_order_relaxed); }

 protected:
  explicit ValueOracle(int n) : n_(n) {
    if (n < 1) throw config_error("ground set must contain at least one strategy");
  }
  virtual double value_of(const StrategySubset& s) const = 0;

  void check_subset(const StrategySubset& s) const {
    if (!s.empty() && (*s.begin() < 1 || *std::prev(s.end()) > n_))
      throw config_error("subset contains strategy ids outside 1..n");
  }

 private:
  int n_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

// f(S | have) = f(S u have) - f(have); two oracle calls, or zero when p is
// already in the base set (the gain is identically 0).
double marginal_gain(const ValueOracle& f, StrategyId p, const StrategySubset& base);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Facility-location coverage on the plane. Each strategy activates one site;
// demand sources connect to the nearest active site or the always-on depot:
//   f(S) = L({depot}) - L(sites(S) u {depot}),  L = sum of per-source min distances.
// Monotone, submodular, f(empty) = 0. Value depends only on the set of distinct
// covered sites, so evaluation reduces a subset to a site bitmask; when the
// per-mask cost table fits in the memory budget it is precomputed by DP over
// masks, otherwise each call scans distances directly.
class CoverageUtility : public ValueOracle {
 public:
  CoverageUtility(std::vector<Point2> sources, std::vector<Point2> sites,
                  std::vector<int> site_of_strategy, Point2 depot);

  int num_sites() const { return static_cast<int>(sites_.size()); }
  const std::vector<Point2>& sources() const { return sources_; }
  const std::vector<Point2>& sites() const { return sites_; }
  const std::vector<int>& site_of_strategy() const { return site_of_; }
  Point2 depot() const { return depot_; }

  // Number of distinct sites activated by s.
  int covered_sites(const StrategySubset& s) const;

  // Cost of serving all sources from the depot alone; f(P) <= this bound.
  double baseline_cost() const { return baseline_cost_; }

 protected:
  double value_of(const StrategySubset& s) const override;

 private:
  std::uint64_t mask_of(const StrategySubset& s) const;
  double cost_of_mask(std::uint64_t mask) const;

  std::vector<Point2> sources_;
  std::vector<Point2> sites_;
  std::vector<int> site_of_;  // per strategy, 1-based site index
  Point2 depot_;
  double baseline_cost_ = 0.0;
  // dist_[k][d]: distance from site k+1 to source d; depot_dist_[d] likewise.
  std::vector<std::vector<double>> dist_;
  std::vector<double> depot_dist_;
  std::vector<double> mask_cost_;  // L by site mask when eager table is built
  bool eager_ = false;
};

// Weighted set coverage: f(S) = total weight of the union of the strategies'
// element sets. Elements are 1..U; weights nonnegative. Monotone, submodular,
// and modular exactly when the element sets are pairwise disjoint.
class WeightedCoverageUtility : public ValueOracle {
 public:
  WeightedCoverageUtility(std::vector<double> element_weights,
                          std::vector<std::vector<int>> covers);

  int universe_size() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& element_weights() const { return weights_; }
  const std::vector<std::vector<int>>& covers() const { return covers_; }

 protected:
  double value_of(const StrategySubset& s) const override;

 private:
  std::vector<double> weights_;
  std::vector<std::vector<int>> covers_;       // per strategy, sorted element ids
  std::vector<std::vector<std::uint64_t>> mask_;  // per strategy, bitmask words
  std::size_t words_ = 0;
};

}  // namespace dismax
