#include "dismax/exact.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace dismax {

namespace {

void check_enumerable(const ValueOracle& f, int max_n, const char* who) {
  if (f.ground_size() > max_n)
    throw guard_error(std::string(who) + ": ground set of " +
                      std::to_string(f.ground_size()) +
                      " exceeds enumeration guard " + std::to_string(max_n));
}

StrategySubset subset_of_mask(const std::vector<StrategyId>& ids, std::uint64_t mask) {
  std::vector<StrategyId> out;
  std::uint64_t m = mask;
  while (m != 0) {
    const int b = std::countr_zero(m);
    out.push_back(ids[static_cast<std::size_t>(b)]);
    m &= m - 1;
  }
  return StrategySubset(std::move(out));
}

// Probability of drawing exactly subset `mask` of `ids` under x; 0 short-circuits.
double mask_probability(const MembershipVector& x, const std::vector<StrategyId>& ids,
                        std::uint64_t mask) {
  double prob = 1.0;
  for (std::size_t b = 0; b < ids.size(); ++b) {
    const double xp = x[ids[b]];
    prob *= (mask >> b) & 1 ? xp : 1.0 - xp;
    if (prob == 0.0) return 0.0;
  }
  return prob;
}

}  // namespace

double multilinear_exact(const ValueOracle& f, const MembershipVector& x, int max_n) {
  check_enumerable(f, max_n, "multilinear_exact");
  if (x.dim() != f.ground_size())
    throw config_error("membership vector dimension does not match ground set");
  std::vector<StrategyId> ids;
  for (int p = 1; p <= f.ground_size(); ++p) ids.push_back(p);
  double total = 0.0;
  const std::uint64_t top = std::uint64_t{1} << ids.size();
  for (std::uint64_t mask = 0; mask < top; ++mask) {
    const double prob = mask_probability(x, ids, mask);
    if (prob == 0.0) continue;
    total += prob * f.evaluate(subset_of_mask(ids, mask));
  }
  return total;
}

double partial_exact(const ValueOracle& f, const MembershipVector& x, StrategyId p,
                     int max_n) {
  check_enumerable(f, max_n, "partial_exact");
  if (x.dim() != f.ground_size())
    throw config_error("membership vector dimension does not match ground set");
  if (p < 1 || p > f.ground_size()) throw config_error("partial_exact: bad strategy id");
  std::vector<StrategyId> others;
  for (int q = 1; q <= f.ground_size(); ++q)
    if (q != p) others.push_back(q);
  double total = 0.0;
  const std::uint64_t top = std::uint64_t{1} << others.size();
  for (std::uint64_t mask = 0; mask < top; ++mask) {
    const double prob = mask_probability(x, others, mask);
    if (prob == 0.0) continue;
    const StrategySubset r = subset_of_mask(others, mask);
    total += prob * (f.evaluate(r.with(p)) - f.evaluate(r));
  }
  return total;
}

double second_partial_exact(const ValueOracle& f, const MembershipVector& x, StrategyId p,
                            StrategyId q, int max_n) {
  check_enumerable(f, max_n, "second_partial_exact");
  if (x.dim() != f.ground_size())
    throw config_error("membership vector dimension does not match ground set");
  if (p < 1 || p > f.ground_size() || q < 1 || q > f.ground_size())
    throw config_error("second_partial_exact: bad strategy id");
  if (p == q) throw config_error("second_partial_exact: coordinates must differ");
  std::vector<StrategyId> others;
  for (int r = 1; r <= f.ground_size(); ++r)
    if (r != p && r != q) others.push_back(r);
  double total = 0.0;
  const std::uint64_t top = std::uint64_t{1} << others.size();
  for (std::uint64_t mask = 0; mask < top; ++mask) {
    const double prob = mask_probability(x, others, mask);
    if (prob == 0.0) continue;
    const StrategySubset r = subset_of_mask(others, mask);
    total += prob * (f.evaluate(r.with(p).with(q)) - f.evaluate(r.with(q)) -
                     f.evaluate(r.with(p)) + f.evaluate(r));
  }
  return total;
}

double total_curvature(const ValueOracle& f, int max_n) {
  check_enumerable(f, max_n, "total_curvature");
  const int n = f.ground_size();
  std::vector<double> singleton(static_cast<std::size_t>(n));
  bool any_useful = false;
  const double f_empty = f.evaluate(StrategySubset{});
  for (int p = 1; p <= n; ++p) {
    singleton[static_cast<std::size_t>(p - 1)] =
        f.evaluate(StrategySubset{p}) - f_empty;
    if (singleton[static_cast<std::size_t>(p - 1)] != 0.0) any_useful = true;
  }
  if (!any_useful)
    throw config_error("total_curvature: every singleton gain is zero, curvature undefined");

  std::vector<StrategyId> ids;
  for (int p = 1; p <= n; ++p) ids.push_back(p);
  double min_ratio = 1.0;
  const std::uint64_t top = std::uint64_t{1} << n;
  // Iterate base sets S; each p outside S contributes the ratio f(p|S)/f(p|0).
  for (std::uint64_t mask = 0; mask < top; ++mask) {
    const StrategySubset s = subset_of_mask(ids, mask);
    const double fs = f.evaluate(s);
    for (int p = 1; p <= n; ++p) {
      if ((mask >> (p - 1)) & 1) continue;
      const double base = singleton[static_cast<std::size_t>(p - 1)];
      if (base == 0.0) continue;
      const double gain = f.evaluate(s.with(p)) - fs;
      min_ratio = std::min(min_ratio, gain / base);
    }
  }
  return 1.0 - min_ratio;
}

}  // namespace dismax
