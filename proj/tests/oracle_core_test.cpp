#include <cmath>
#include <vector>

#include "dismax/exact.hpp"
#include "dismax/oracle.hpp"
#include "dismax/scenario.hpp"
#include "dismax/types.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace dismax;
using testutil::make_modular;
using testutil::make_random_coverage;
using testutil::reference_cost;
using testutil::reference_multilinear;
using testutil::subset_of_mask;

namespace {

MembershipVector vec(const std::vector<double>& v) {
  MembershipVector x(static_cast<int>(v.size()));
  for (int p = 1; p <= x.dim(); ++p) x[p] = v[static_cast<std::size_t>(p - 1)];
  return x;
}

std::unique_ptr<ValueOracle> materialized_ring_coverage() {
  Scenario s = default_scenario(42);
  s.trials = 1;
  return s.materialize(derive_trial_seed(42, 0));
}

}  // namespace

TEST_CASE("oracle_core: normalized, monotone, submodular on small oracles") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    auto f = make_random_coverage(seed, 6, 5);
    CHECK(f.evaluate({}) == 0.0);
    CHECK(testutil::exhaustive_submodular_monotone(f, 6));
  }
  CoverageUtility cov({{0.1, 0.1}, {0.9, 0.8}, {0.4, 0.6}}, {{0.2, 0.2}, {0.8, 0.9}},
                      {1, 2}, Point2{0.5, 0.5});
  CHECK(cov.evaluate({}) == 0.0);
  CHECK(testutil::exhaustive_submodular_monotone(cov, 2));
}

TEST_CASE("oracle_core: marginal gain basics and call accounting") {
  WeightedCoverageUtility f({3.0}, {{1}});
  CHECK(marginal_gain(f, 1, StrategySubset{}) == 3.0);

  auto g = make_random_coverage(7, 5, 4);
  StrategySubset s;
  s.insert(2);
  const auto before = g.eval_count();
  CHECK(marginal_gain(g, 2, s) == 0.0);  // member: zero gain, zero oracle calls
  CHECK(g.eval_count() == before);
  marginal_gain(g, 3, s);
  CHECK(g.eval_count() == before + 2);

  CHECK_THROWS_AS(marginal_gain(g, 9, s), config_error);
}

TEST_CASE("oracle_core: coverage marginal matches direct cost evaluation") {
  auto oracle = materialized_ring_coverage();
  auto* cov = dynamic_cast<CoverageUtility*>(oracle.get());
  REQUIRE(cov != nullptr);
  // Independent evaluation of the serve-cost definition: the gain of a lone
  // site equals cost({depot}) - cost({depot, site}).
  const auto& sites = cov->sites();
  const std::vector<Point2> depot_only = {cov->depot()};
  for (StrategyId p : {1, 4, 10}) {
    const int site = cov->site_of_strategy()[static_cast<std::size_t>(p - 1)];
    const std::vector<Point2> with_site = {cov->depot(),
                                           sites[static_cast<std::size_t>(site - 1)]};
    const double expected = reference_cost(cov->sources(), depot_only) -
                            reference_cost(cov->sources(), with_site);
    CHECK(marginal_gain(*cov, p, StrategySubset{}) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("oracle_core: total curvature endpoints and enumeration") {
  CHECK(total_curvature(make_modular({1.0, 2.0, 0.5})) == doctest::Approx(0.0));

  // Two identical strategies: the duplicate's gain vanishes, curvature 1.
  WeightedCoverageUtility dup({2.0, 1.0}, {{1}, {1}});
  CHECK(total_curvature(dup) == doctest::Approx(1.0));

  // Partial overlaps: check against an independent min over all (p, S) pairs.
  WeightedCoverageUtility f({1.5, 2.0, 1.0, 0.5}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  double worst = 1.0;
  for (StrategyId p = 1; p <= 4; ++p) {
    const double solo = f.evaluate(StrategySubset{}.with(p));
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
      if (mask & (1u << (p - 1))) continue;
      auto s = subset_of_mask(mask);
      worst = std::min(worst, (f.evaluate(s.with(p)) - f.evaluate(s)) / solo);
    }
  }
  CHECK(total_curvature(f) == doctest::Approx(1.0 - worst).epsilon(1e-12));

  // All singleton values zero: no denominator survives, curvature undefined.
  WeightedCoverageUtility zero({0.0}, {{1}});
  CHECK_THROWS_AS(total_curvature(zero), config_error);
}

TEST_CASE("oracle_core: multilinear extension exact values") {
  auto f = make_random_coverage(21, 6, 5);
  CHECK(multilinear_exact(f, vec({0, 0, 0, 0, 0, 0})) == 0.0);

  // Vertices reproduce f exactly.
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    std::vector<double> x(6, 0.0);
    for (int p = 1; p <= 6; ++p)
      if (mask & (1u << (p - 1))) x[static_cast<std::size_t>(p - 1)] = 1.0;
    CHECK(multilinear_exact(f, vec(x)) ==
          doctest::Approx(f.evaluate(subset_of_mask(mask))).epsilon(1e-12));
  }

  // Quarter-sum identity at (0.5, 0.5).
  WeightedCoverageUtility g({1.0, 2.0, 4.0}, {{1, 2}, {2, 3}});
  const double expected = 0.25 * (g.evaluate({}) + g.evaluate(subset_of_mask(1)) +
                                  g.evaluate(subset_of_mask(2)) + g.evaluate(subset_of_mask(3)));
  CHECK(multilinear_exact(g, vec({0.5, 0.5})) == doctest::Approx(expected).epsilon(1e-12));

  // Independent enumeration agrees on random fractional points.
  Substream rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<double> x(6);
    for (double& v : x) v = rng.uniform01();
    CHECK(multilinear_exact(f, vec(x)) ==
          doctest::Approx(reference_multilinear(f, vec(x))).epsilon(1e-10));
  }

  CHECK_THROWS_AS(multilinear_exact(f, vec({0.5, 0.5})), config_error);  // dim mismatch
  std::vector<double> big(21, 0.5);
  auto h = make_random_coverage(3, 21, 4);
  CHECK_THROWS_AS(multilinear_exact(h, vec(big), 20), guard_error);
}

TEST_CASE("oracle_core: first partial derivative") {
  // Modular: derivative is the weight, independent of x everywhere.
  auto mod = make_modular({1.0, 2.5, 0.5});
  for (double t : {0.0, 0.3, 1.0}) {
    CHECK(partial_exact(mod, vec({t, 0.7, 0.2}), 2) == doctest::Approx(2.5).epsilon(1e-12));
  }

  // Independence from the own coordinate.
  auto f = make_random_coverage(31, 5, 4);
  const double a = partial_exact(f, vec({0.2, 0.4, 0.6, 0.1, 0.9}), 3);
  const double b = partial_exact(f, vec({0.2, 0.4, 0.0, 0.1, 0.9}), 3);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));

  // 3-strategy instance against a direct 4-subset expectation over P \ {p}.
  WeightedCoverageUtility g({2.0, 3.0, 1.0}, {{1}, {1, 2}, {2, 3}});
  const MembershipVector x = vec({0.3, 0.6, 0.1});
  double expected = 0.0;
  for (int m2 = 0; m2 < 2; ++m2)
    for (int m3 = 0; m3 < 2; ++m3) {
      const double prob = (m2 ? 0.6 : 0.4) * (m3 ? 0.1 : 0.9);
      StrategySubset base;
      if (m2) base.insert(2);
      if (m3) base.insert(3);
      expected += prob * (g.evaluate(base.with(1)) - g.evaluate(base));
    }
  CHECK(partial_exact(g, x, 1) == doctest::Approx(expected).epsilon(1e-12));

  // Finite-difference identity of multilinearity.
  for (StrategyId p = 1; p <= 5; ++p) {
    std::vector<double> base = {0.2, 0.4, 0.6, 0.1, 0.9};
    auto hi = base, lo = base;
    hi[static_cast<std::size_t>(p - 1)] = 1.0;
    lo[static_cast<std::size_t>(p - 1)] = 0.0;
    CHECK(partial_exact(f, vec(base), p) ==
          doctest::Approx(multilinear_exact(f, vec(hi)) - multilinear_exact(f, vec(lo)))
              .epsilon(1e-9));
  }
}

TEST_CASE("oracle_core: second partial derivative") {
  auto mod = make_modular({1.0, 2.0});
  CHECK(second_partial_exact(mod, vec({0.4, 0.7}), 1, 2) == doctest::Approx(0.0));

  // Identical coverage, shared weight w: cross-derivative is exactly -w.
  WeightedCoverageUtility dup({3.0}, {{1}, {1}});
  CHECK(second_partial_exact(dup, vec({0.5, 0.5}), 1, 2) == doctest::Approx(-3.0));

  CHECK_THROWS_AS(second_partial_exact(dup, vec({0.5, 0.5}), 1, 1), config_error);

  // Sign property on a random submodular instance.
  auto f = make_random_coverage(41, 5, 4);
  Substream rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> x(5);
    for (double& v : x) v = rng.uniform01();
    const StrategyId p = 1 + static_cast<StrategyId>(rng.uniform01() * 5);
    StrategyId q = 1 + static_cast<StrategyId>(rng.uniform01() * 5);
    if (q == p) q = p == 5 ? 1 : p + 1;
    CHECK(second_partial_exact(f, vec(x), p, q) <= 1e-12);
  }
}

TEST_CASE("oracle_core: derivative bounds and directional convexity") {
  for (std::uint64_t seed : {51u, 52u}) {
    auto f = make_random_coverage(seed, 6, 5);
    const double c = total_curvature(f);
    // f(R*) for the unconstrained lattice is f of the full set (monotone).
    std::vector<double> full(6, 1.0);
    const double f_star = multilinear_exact(f, vec(full));
    Substream rng(seed + 100);
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> x(6);
      for (double& v : x) v = rng.uniform01();
      const StrategyId p = 1 + static_cast<StrategyId>(rng.uniform01() * 6);
      StrategyId q = 1 + static_cast<StrategyId>(rng.uniform01() * 6);
      if (q == p) q = p == 6 ? 1 : p + 1;
      StrategySubset solo;
      solo.insert(p);
      CHECK(partial_exact(f, vec(x), p) >= (1.0 - c) * f.evaluate(solo) - 1e-9);
      const double d2 = second_partial_exact(f, vec(x), p, q);
      CHECK(d2 <= 1e-12);
      CHECK(d2 >= -c * f_star - 1e-9);
    }

    // lambda -> F(x + lambda * (e_p - e_q)) has nonnegative second differences.
    Substream rng2(seed + 200);
    std::vector<double> x(6);
    for (double& v : x) v = 0.25 + 0.5 * rng2.uniform01();
    const StrategyId p = 2, q = 5;
    const double lo = -std::min(x[p - 1] - 0.0, 1.0 - x[q - 1]);
    const double hi = std::min(1.0 - x[p - 1], x[q - 1] - 0.0);
    std::vector<double> values;
    for (int k = 0; k < 10; ++k) {
      const double lambda = lo + (hi - lo) * k / 9.0;
      auto y = x;
      y[p - 1] += lambda;
      y[q - 1] -= lambda;
      values.push_back(multilinear_exact(f, vec(y)));
    }
    for (std::size_t k = 2; k < values.size(); ++k)
      CHECK(values[k] - 2 * values[k - 1] + values[k - 2] >= -1e-9);
  }
}

TEST_CASE("oracle_core: oracle call counter ticks once per evaluation") {
  auto f = make_random_coverage(61, 4, 3);
  f.reset_eval_count();
  f.evaluate({});
  StrategySubset s;
  s.insert(1);
  f.evaluate(s);
  f.evaluate(s);  // repeats still count
  CHECK(f.eval_count() == 3);
}

TEST_CASE("oracle_core: utility instance files round-trip") {
  CoverageUtility cov({{0.1, 0.2}, {0.8, 0.7}}, {{0.25, 0.25}, {0.75, 0.75}}, {1, 2},
                      Point2{0.5, 0.5});
  auto back = utility_from_json(utility_to_json(cov));
  auto* cov2 = dynamic_cast<CoverageUtility*>(back.get());
  REQUIRE(cov2 != nullptr);
  CHECK(cov2->sources().size() == 2);
  StrategySubset s;
  s.insert(2);
  CHECK(cov2->evaluate(s) == cov.evaluate(s));

  auto f = make_random_coverage(71, 5, 4);
  auto back2 = utility_from_json(utility_to_json(f));
  for (std::uint32_t mask = 0; mask < 32; ++mask) {
    auto sub = subset_of_mask(mask);
    CHECK(back2->evaluate(sub) == f.evaluate(sub));
  }
}
