#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dismax {

// Strategies are numbered 1..n, agents 1..N. All public interfaces are 1-based;
// raw std::vector storage inside implementations is 0-based.
using StrategyId = int;
using AgentId = int;

// Bad user-supplied configuration (files, flags, incompatible dimensions). CLI exit 1.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A resource guard tripped (enumeration too large, table too big). CLI exit 2.
struct guard_error : std::runtime_error {
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

// A protocol/math invariant that should be unconditionally true failed. CLI exit 3.
struct invariant_error : std::runtime_error {
  explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

// Absolute tolerance for probability/feasibility comparisons throughout.
inline constexpr double kProbTol = 1e-9;

// Sorted duplicate-free set of strategy ids.
class StrategySubset {
 public:
  StrategySubset() = default;
  StrategySubset(std::initializer_list<StrategyId> ids) : ids_(ids) { normalize(); }
  explicit StrategySubset(std::vector<StrategyId> ids) : ids_(std::move(ids)) { normalize(); }

  bool contains(StrategyId p) const {
    return std::binary_search(ids_.begin(), ids_.end(), p);
  }

  // In-place insert; no-op if already present.
  void insert(StrategyId p) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), p);
    if (it == ids_.end() || *it != p) ids_.insert(it, p);
  }

  StrategySubset with(StrategyId p) const {
    StrategySubset s = *this;
    s.insert(p);
    return s;
  }

  StrategySubset without(StrategyId p) const {
    StrategySubset s = *this;
    auto it = std::lower_bound(s.ids_.begin(), s.ids_.end(), p);
    if (it != s.ids_.end() && *it == p) s.ids_.erase(it);
    return s;
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<StrategyId>& ids() const { return ids_; }

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  friend bool operator==(const StrategySubset& a, const StrategySubset& b) = default;
  // Lexicographic on the sorted id lists; used for deterministic tie-breaking.
  friend bool operator<(const StrategySubset& a, const StrategySubset& b) {
    return a.ids_ < b.ids_;
  }

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }
  std::vector<StrategyId> ids_;
};

// Point in [0,1]^n indexed by strategy id.
class MembershipVector {
 public:
  MembershipVector() = default;
  explicit MembershipVector(int n) : values_(static_cast<std::size_t>(n), 0.0) {
    if (n < 0) throw config_error("membership vector dimension must be nonnegative");
  }

  int dim() const { return static_cast<int>(values_.size()); }

  double operator[](StrategyId p) const { return values_[index(p)]; }
  double& operator[](StrategyId p) { return values_[index(p)]; }

  // Strategy ids with nonzero value, ascending.
  std::vector<StrategyId> support() const {
    std::vector<StrategyId> s;
    for (int p = 1; p <= dim(); ++p)
      if (values_[static_cast<std::size_t>(p - 1)] != 0.0) s.push_back(p);
    return s;
  }

  double sum() const {
    double t = 0.0;
    for (double v : values_) t += v;
    return t;
  }

  friend bool operator==(const MembershipVector& a, const MembershipVector& b) = default;

 private:
  std::size_t index(StrategyId p) const {
    if (p < 1 || p > dim()) throw invariant_error("strategy id out of range");
    return static_cast<std::size_t>(p - 1);
  }
  std::vector<double> values_;
};

}  // namespace dismax
