#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dismax/distributed_cg.hpp"
#include "dismax/scenario.hpp"
#include "dismax/types.hpp"

namespace dismax {

// One (trial, solver) outcome. `seed` is the derived trial seed: together with
// the scenario file it replays this record in isolation.
struct ResultRecord {
  std::string scenario_id;  // scenario id + content hash
  std::string solver;
  std::uint64_t seed = 0;
  std::uint32_t trial = 0;
  double value = 0.0;
  int sites_covered = 0;
  std::uint64_t oracle_calls = 0;
  double wall_ms = 0.0;
  std::string bound_ok = "na";  // "1" | "0" | "na" | "error"
  std::string error;            // reason when bound_ok == "error"
};

struct TraceFile {
  std::string solver;
  std::uint32_t trial = 0;
  std::string json;  // per-round aggregates, block sums, disagreement
};

struct ExperimentOutput {
  std::vector<ResultRecord> records;
  std::vector<TraceFile> traces;  // only when scenario.trace
};

// Runs trials x solvers. Deterministic: records (wall time aside) depend only
// on the scenario content and master seed. Solver errors produce an "error"
// record instead of aborting the batch.
ExperimentOutput run_experiment(const Scenario& scenario);

// Pinned 8-column schema. zero_wall_ms replaces timings with 0 so two runs of
// the same scenario produce byte-identical files.
std::string results_to_csv(const std::vector<ResultRecord>& records, bool zero_wall_ms = false);
void write_results_csv(const std::vector<ResultRecord>& records, const std::string& path,
                       bool zero_wall_ms = false);

// Final-iterate and rounding bound verification on brute-force-sized
// instances: per trial, the exact optimum and curvature, F at the fractional
// output, the guarantee factor, and a Monte-Carlo check that rounded values
// clear the same bound. Guards trip to "skipped" entries, never to aborts.
struct BoundTrialReport {
  std::uint32_t trial = 0;
  double f_star = 0.0;
  double curvature = 0.0;
  double factor = 0.0;          // guarantee multiplier on f_star
  double f_fractional = 0.0;    // exact F at the protocol output
  bool fractional_ok = false;   // f_fractional >= factor * f_star
  double rounded_mean = 0.0;
  double rounded_se = 0.0;
  bool rounded_ok = false;      // rounded_mean + 3*SE >= factor * f_star
  double aggregate_success = 0.0;  // concentration qualifier (can be <= 0)
  bool skipped = false;
  std::string note;
};

struct BoundReport {
  std::vector<BoundTrialReport> trials;
  bool all_ok = true;   // over non-skipped trials
  int rounding_trials = 2000;
};

BoundReport verify_bounds(const Scenario& scenario, int rounding_trials = 2000,
                          int max_n = 20, std::uint64_t max_combinations = 1000000);

std::string bound_report_to_json(const BoundReport& report);

}  // namespace dismax
