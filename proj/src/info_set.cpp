#include "dismax/info_set.hpp"

#include <string>

namespace dismax {

double InformationSet::value(StrategyId p) const {
  const auto it = entries_.find(p);
  return it == entries_.end() ? 0.0 : it->second;
}

MembershipVector InformationSet::to_membership(int n) const {
  MembershipVector x(n);
  for (const auto& [p, v] : entries_) {
    if (p < 1 || p > n) throw config_error("information set key outside 1..n");
    x[p] = v;
  }
  return x;
}

InformationSet InformationSet::from_membership(const MembershipVector& x) {
  InformationSet s;
  for (int p = 1; p <= x.dim(); ++p) {
    const double v = x[p];
    if (v == 0.0) continue;
    if (v < 0.0 || v > 1.0 + kProbTol)
      throw config_error("membership value outside [0, 1]");
    s.entries_[p] = std::min(v, 1.0);
  }
  return s;
}

InformationSet oplus(const InformationSet& base,
                     const std::vector<std::pair<StrategyId, double>>& additions) {
  InformationSet out = base;
  for (const auto& [p, alpha] : additions) {
    if (p < 1) throw config_error("oplus: bad strategy id");
    if (!(alpha > 0.0)) throw config_error("oplus: additions must be strictly positive");
    double& slot = out.entries_[p];
    slot += alpha;
    if (slot > 1.0) {
      if (slot > 1.0 + kProbTol)
        throw invariant_error("oplus: coordinate " + std::to_string(p) +
                              " accumulated to " + std::to_string(slot) + " > 1");
      slot = 1.0;  // step-count rounding dust only
    }
  }
  return out;
}

InformationSet max_merge(const std::vector<const InformationSet*>& sets) {
  InformationSet out;
  for (const InformationSet* s : sets) {
    if (s == nullptr) throw invariant_error("max_merge: null information set");
    for (const auto& [p, v] : s->entries_) {
      auto [it, inserted] = out.entries_.try_emplace(p, v);
      if (!inserted && v > it->second) it->second = v;
    }
  }
  return out;
}

}  // namespace dismax
