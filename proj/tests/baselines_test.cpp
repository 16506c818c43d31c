#include <cmath>
#include <vector>

#include "dismax/baselines.hpp"
#include "dismax/distributed_cg.hpp"
#include "dismax/exact.hpp"
#include "dismax/graph.hpp"
#include "dismax/matroid.hpp"
#include "dismax/pipage.hpp"
#include "dismax/rng.hpp"
#include "dismax/types.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace dismax;
using testutil::make_modular;
using testutil::make_random_coverage;
using testutil::subset_of_mask;

TEST_CASE("baselines: brute force on tiny instances") {
  // Single block, budget 1: the best singleton wins, ties to the lower id.
  auto f = make_modular({2.0, 5.0, 5.0});
  AgentPartition part({3}, {1});
  auto r = brute_force_opt(f, part);
  CHECK(r.best == StrategySubset{2});
  CHECK(r.value == 5.0);
  CHECK(r.combinations == 3);

  // Modular weights: optimum is the top-budget weights per block.
  auto g = make_modular({1.0, 4.0, 2.0, 8.0, 16.0, 3.0});
  AgentPartition p2({3, 3}, {2, 1});
  auto r2 = brute_force_opt(g, p2);
  CHECK(r2.best == StrategySubset{2, 3, 5});
  CHECK(r2.value == doctest::Approx(4 + 2 + 16).epsilon(1e-12));
  CHECK(r2.combinations == 9);  // C(3,2) * C(3,1)
}

TEST_CASE("baselines: brute force agrees with direct enumeration") {
  auto f = make_random_coverage(191, 6, 5);
  AgentPartition part({3, 3}, {1, 2});
  auto r = brute_force_opt(f, part);

  double best = -1.0;
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    auto s = subset_of_mask(mask);
    if (!part.is_independent(s)) continue;
    best = std::max(best, f.evaluate(s));
  }
  CHECK(r.value == doctest::Approx(best).epsilon(1e-12));
  CHECK(part.is_independent(r.best));
  CHECK(f.evaluate(r.best) == r.value);
}

TEST_CASE("baselines: brute force guard") {
  auto f = make_random_coverage(201, 20, 4);
  AgentPartition part({10, 10}, {5, 5});
  CHECK_THROWS_AS(brute_force_opt(f, part, 100), guard_error);  // 252^2 > 100
}

TEST_CASE("baselines: visit sequence validation") {
  CommGraph ring = CommGraph::ring(5);
  VisitSequence ok{"a", {1, 2, 3, 4, 5}};
  ok.validate(ring);  // no throw
  VisitSequence back{"f", {1, 5, 4, 3, 2}};
  back.validate(ring);

  VisitSequence hop{"bad-hop", {1, 3, 4, 5, 2}};
  CHECK_THROWS_AS(hop.validate(ring), config_error);  // 1-3 not a ring edge
  VisitSequence missing{"missing", {1, 2, 3, 4}};
  CHECK_THROWS_AS(missing.validate(ring), config_error);
  VisitSequence twice{"stutter", {1, 1, 2, 3, 4, 5}};
  CHECK_THROWS_AS(twice.validate(ring), config_error);
  VisitSequence empty{"empty", {}};
  CHECK_THROWS_AS(empty.validate(ring), config_error);

  // Walks may revisit agents as long as hops follow edges.
  VisitSequence wander{"wander", {1, 2, 1, 5, 4, 3}};
  wander.validate(ring);
}

TEST_CASE("baselines: sequential greedy with one agent is the classic greedy") {
  // Weighted coverage where greedy is textbook: picks by marginal gain.
  WeightedCoverageUtility f({4.0, 3.0, 2.0, 1.0},
                            {{1, 2}, {3}, {1}, {2, 3, 4}});
  AgentPartition part({4}, {2});
  CommGraph solo = CommGraph::complete(1);
  auto s = sequential_greedy(f, part, solo, VisitSequence{"solo", {1}});
  // Gains: {1,2} worth 7 first; then {2,3,4} adds 2 + 1 = 3; strategy 2 adds 2.
  CHECK(s == StrategySubset{1, 4});
  CHECK(part.is_independent(s));
}

TEST_CASE("baselines: sequential greedy respects budgets and order") {
  auto f = make_random_coverage(211, 9, 6);
  AgentPartition part({3, 3, 3}, {1, 2, 1});
  CommGraph path = CommGraph::path(3);

  auto fwd = sequential_greedy(f, part, path, VisitSequence{"fwd", {1, 2, 3}});
  CHECK(part.is_independent(fwd));
  CHECK(fwd.size() == 4);

  auto rev = sequential_greedy(f, part, path, VisitSequence{"rev", {3, 2, 1}});
  CHECK(part.is_independent(rev));

  // Modular utility: the result is order-independent (each block's top
  // weights), even though the walk differs.
  auto mod = make_modular({5, 1, 2, 9, 4, 3, 8, 7, 6});
  auto a = sequential_greedy(mod, part, path, VisitSequence{"fwd", {1, 2, 3}});
  auto b = sequential_greedy(mod, part, path, VisitSequence{"rev", {3, 2, 1}});
  CHECK(a == b);
  CHECK(a == StrategySubset{1, 4, 5, 7});

  CHECK_THROWS_AS(
      sequential_greedy(f, part, path, VisitSequence{"skip", {1, 3, 2}}),
      config_error);  // path has no 1-3 edge
}

TEST_CASE("baselines: sequential greedy sees upstream picks") {
  // Agent 2 owns a duplicate of agent 1's best strategy; visiting after
  // agent 1 makes the duplicate worthless, so agent 2 takes its other option.
  WeightedCoverageUtility f({10.0, 1.0}, {{1}, {1}, {2}});
  AgentPartition part({1, 2}, {1, 1});
  CommGraph g = CommGraph::complete(2);
  auto s = sequential_greedy(f, part, g, VisitSequence{"fwd", {1, 2}});
  CHECK(s == StrategySubset{1, 3});
  // Visiting agent 2 first: it grabs the duplicate (10 > 1).
  auto rot = sequential_greedy(f, part, g, VisitSequence{"rot", {2, 1}});
  CHECK(rot == StrategySubset{1, 2});
}

TEST_CASE("baselines: centralized continuous greedy, modular exactness") {
  // T = 1 with a modular oracle: one full-mass step to the top weights, then
  // rounding is the identity. Must equal brute force.
  auto f = make_modular({3.0, 1.0, 4.0, 1.0, 5.0});
  AgentPartition part({3, 2}, {1, 1});
  RoundConfig cfg;
  cfg.horizon = 1;
  cfg.samples = {6};
  cfg.stream_seed = derive_trial_seed(41, 0);
  auto run = centralized_cg(f, part, cfg);
  REQUIRE(run.trajectory.size() == 2);
  CHECK(run.trajectory.front() == MembershipVector(5));
  CHECK(run.rounded == brute_force_opt(f, part).best);
  CHECK(run.final_x()[3] == 1.0);
  CHECK(run.final_x()[5] == 1.0);
  CHECK(part.is_vertex(run.final_x()));
}

TEST_CASE("baselines: centralized run stays feasible and lands near the optimum") {
  auto f = make_random_coverage(221, 6, 5);
  AgentPartition part({3, 3}, {1, 1});
  RoundConfig cfg;
  cfg.horizon = 40;
  cfg.samples = {2000};
  cfg.stream_seed = derive_trial_seed(43, 0);

  auto run = centralized_cg(f, part, cfg);
  REQUIRE(run.trajectory.size() == 41);
  for (const auto& x : run.trajectory) CHECK(part.in_polytope(x));
  CHECK(part.is_independent(run.rounded));

  auto brute = brute_force_opt(f, part);
  const double c = total_curvature(f);
  const double factor = guarantee_factor(c, part.total_budget(), 0, cfg.horizon);
  const double frac = multilinear_exact(f, run.final_x());
  CHECK(frac >= factor * brute.value - 1e-9);
  CHECK(f.evaluate(run.rounded) <= brute.value + 1e-12);
}

TEST_CASE("baselines: centralized equals distributed with diameter sweeps") {
  auto f = make_random_coverage(231, 8, 6);
  AgentPartition part({4, 4}, {2, 1});
  CommGraph path = CommGraph::path(2);
  RoundConfig cfg;
  cfg.horizon = 15;
  cfg.samples = {50};
  cfg.consensus_rounds = path.diameter();
  cfg.stream_seed = derive_trial_seed(47, 6);

  auto central = centralized_cg(f, part, cfg);
  auto dist = run_distributed_cg(f, part, path, cfg);

  // Same seed, same estimator, full agreement every round: identical
  // trajectories, coordinate for coordinate, and identical selections.
  REQUIRE(central.trajectory.size() == dist.rounds.size() + 1);
  for (std::size_t t = 0; t < dist.rounds.size(); ++t) {
    CHECK(central.trajectory[t + 1] == dist.rounds[t].aggregate);
    CHECK(central.selected[t] == dist.rounds[t].selected);
  }

  // And the rounded sets coincide: rounding reads the same substreams.
  auto rounded = round_all_blocks(dist.info_sets, part, cfg.stream_seed);
  CHECK(central.rounded == rounded);
}
