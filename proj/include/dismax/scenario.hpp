#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dismax/graph.hpp"
#include "dismax/matroid.hpp"
#include "dismax/oracle.hpp"
#include "dismax/rng.hpp"
#include "dismax/types.hpp"

namespace dismax {

// Fixed utility instances serialize to JSON ("kind": "coverage2d" or
// "weighted_coverage", 1-based ids everywhere); scenarios either embed one or
// name a generator that redraws geometry per trial.

std::unique_ptr<ValueOracle> utility_from_json(const std::string& json_text);
std::string utility_to_json(const ValueOracle& f);

std::unique_ptr<ValueOracle> load_utility(const std::string& path);
void save_utility(const ValueOracle& f, const std::string& path);

// Random planar coverage generator config. Sites are grouped per agent by
// explicit 1-based site lists; strategy ids are assigned block-contiguously in
// list order. Sources and sites are redrawn each trial inside the field.
struct CoverageGenerator {
  int num_sources = 2000;
  int num_sites = 10;
  double field_min[2] = {0.0, 0.0};
  double field_max[2] = {1.0, 1.0};
  // Minimum pairwise site distance (rejection sampling; shrinks by 5% after
  // every 200 failed draws so generation always terminates). 0 disables it.
  // Separation keeps every site individually worthwhile, mirroring instances
  // built so that the optimum uses all distinct locations.
  double site_min_separation = 0.0;
  // Minimum site-to-depot distance, same shrink rule. Sites too close to the
  // depot contribute almost nothing and would make covering them pointless.
  double depot_min_separation = 0.0;
  // "uniform": rejection-sampled uniform sites (separation knobs above).
  // "ring": sites on a circle of ring_radius around the depot, at regular
  // angular slots with a random rotation and a random slot-to-site labeling;
  // ring_jitter displaces each site by up to half a slot width. The ring
  // layout gives every site a catchment wedge of comparable worth, so the
  // instance rewards covering all sites instead of crowding a lucrative few.
  std::string site_layout = "uniform";
  double ring_radius = 0.30;
  double ring_jitter = 0.0;                     // in slot widths, >= 0
  std::optional<Point2> depot;                  // default: field centroid
  std::vector<std::vector<int>> site_blocks;    // per agent, accessible sites
};

struct Scenario {
  std::string id;
  std::optional<CoverageGenerator> generator;    // exactly one of generator /
  std::string utility_json;                      // embedded fixed instance
  std::vector<int> block_sizes;
  std::vector<int> budgets;
  std::string graph_kind = "ring";               // ring | path | complete | custom
  std::vector<std::pair<AgentId, AgentId>> graph_edges;  // for custom
  int horizon = 50;
  std::vector<int> samples = {1000};
  std::string consensus_mode = "1";              // "1" | "diam"
  int trials = 1;
  std::vector<std::string> solvers = {"ds"};
  std::map<std::string, std::vector<AgentId>> visit_sequences;
  std::uint64_t master_seed = 1;
  bool trace = false;
  bool verify_bounds = false;

  AgentPartition partition() const;
  CommGraph graph() const;
  int consensus_rounds() const;  // resolved against the graph

  // Instance for one trial: the embedded utility, or a fresh draw from the
  // generator on the trial's kInstance substream.
  std::unique_ptr<ValueOracle> materialize(std::uint64_t trial_seed) const;

  // Content hash over everything that determines results (excludes id).
  std::string content_hash() const;

  void validate() const;
};

Scenario scenario_from_json(const std::string& json_text);
std::string scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

// The headline experiment: 2000 sources, 10 sites, 5 ring agents with nested
// site access (10/5/3/2/2) and budgets (5,2,1,1,1) giving n = 22 strategies;
// T = 50, K = 1000, 50 trials, solvers ds plus six mediator routes.
Scenario default_scenario(std::uint64_t master_seed = 1);

}  // namespace dismax
