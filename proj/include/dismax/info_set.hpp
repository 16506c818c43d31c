#pragma once

#include <map>
#include <utility>
#include <vector>

#include "dismax/types.hpp"

namespace dismax {

// Sparse knowledge state of an agent: the nonzero coordinates of its local
// membership vector as (strategy, probability) pairs. This is also the wire
// format of a consensus message; agents never exchange dense vectors.
class InformationSet {
 public:
  InformationSet() = default;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // 0 when absent.
  double value(StrategyId p) const;
  bool contains(StrategyId p) const { return entries_.count(p) != 0; }

  // Ascending by strategy id; iteration order is part of the sampling contract.
  const std::map<StrategyId, double>& entries() const { return entries_; }

  MembershipVector to_membership(int n) const;

  static InformationSet from_membership(const MembershipVector& x);

  friend bool operator==(const InformationSet& a, const InformationSet& b) = default;

 private:
  friend InformationSet oplus(const InformationSet& base,
                              const std::vector<std::pair<StrategyId, double>>& additions);
  friend InformationSet max_merge(const std::vector<const InformationSet*>& sets);
  std::map<StrategyId, double> entries_;
};

// Accumulate probability mass: absent keys are inserted, present keys add.
// A result above 1 by at most kProbTol clamps to exactly 1; anything larger is
// a protocol violation. Additions must be strictly positive.
InformationSet oplus(const InformationSet& base,
                     const std::vector<std::pair<StrategyId, double>>& additions);

// Keywise maximum; the consensus MAX operator. Empty input yields empty set.
InformationSet max_merge(const std::vector<const InformationSet*>& sets);

}  // namespace dismax
