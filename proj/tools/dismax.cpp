#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dismax/experiment.hpp"
#include "dismax/scenario.hpp"
#include "dismax/types.hpp"

namespace {

struct Overrides {
  std::vector<std::string> solvers;
  int trials = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int horizon = -1;
  int samples = -1;
  std::string consensus;
  std::string trace;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--solver", ov.solvers, "solver to run (repeatable): ds, centralized, brute, seq:<name>");
  cmd->add_option("--trials", ov.trials, "number of trials");
  cmd->add_option("--seed", ov.seed, "master seed")->each([&ov](const std::string&) {
    ov.seed_set = true;
  });
  cmd->add_option("--T", ov.horizon, "ascent rounds (step size 1/T)");
  cmd->add_option("--samples", ov.samples, "gradient samples per agent per round");
  cmd->add_option("--consensus-rounds", ov.consensus, "max-merge sweeps per round: 1 or diam")
      ->check(CLI::IsMember({"1", "diam"}));
  cmd->add_option("--trace", ov.trace, "write per-round trace files: on or off")
      ->check(CLI::IsMember({"on", "off"}));
}

void apply(const Overrides& ov, dismax::Scenario& s) {
  if (!ov.solvers.empty()) s.solvers = ov.solvers;
  if (ov.trials >= 0) s.trials = ov.trials;
  if (ov.seed_set) s.master_seed = ov.seed;
  if (ov.horizon >= 0) s.horizon = ov.horizon;
  if (ov.samples >= 0) s.samples = {ov.samples};
  if (!ov.consensus.empty()) s.consensus_mode = ov.consensus;
  if (ov.trace == "on") s.trace = true;
  if (ov.trace == "off") s.trace = false;
  s.validate();
}

int run_command(const std::string& scenario_path, const Overrides& ov,
                const std::string& out_path, bool zero_wall_ms) {
  dismax::Scenario scenario = dismax::load_scenario(scenario_path);
  apply(ov, scenario);
  const dismax::ExperimentOutput output = dismax::run_experiment(scenario);
  dismax::write_results_csv(output.records, out_path, zero_wall_ms);

  for (const dismax::TraceFile& tf : output.traces) {
    const std::string path =
        out_path + ".trace." + tf.solver + "." + std::to_string(tf.trial) + ".json";
    std::ofstream f(path);
    if (!f) throw dismax::config_error("cannot write " + path);
    f << tf.json;
  }

  // Per-solver mean value / mean sites summary.
  std::map<std::string, std::pair<double, double>> sums;
  std::map<std::string, int> counts;
  for (const auto& r : output.records) {
    if (r.bound_ok == "error") continue;
    sums[r.solver].first += r.value;
    sums[r.solver].second += r.sites_covered;
    counts[r.solver] += 1;
  }
  for (const auto& [solver, s] : sums) {
    const int c = counts[solver];
    std::printf("%-14s trials=%-4d mean value=%.6f mean sites=%.3f\n", solver.c_str(), c,
                s.first / c, s.second / c);
  }
  std::printf("wrote %s (%zu records)\n", out_path.c_str(), output.records.size());
  return 0;
}

int verify_command(const std::string& scenario_path, const Overrides& ov,
                   const std::string& out_path, int rounding_trials) {
  dismax::Scenario scenario = dismax::load_scenario(scenario_path);
  apply(ov, scenario);
  const dismax::BoundReport report = dismax::verify_bounds(scenario, rounding_trials);
  for (const auto& t : report.trials) {
    if (t.skipped) {
      std::printf("trial %u: skipped (%s)\n", t.trial, t.note.c_str());
      continue;
    }
    std::printf(
        "trial %u: f*=%.6f c=%.4f factor=%.4f F(final)=%.6f %s | rounded mean=%.6f "
        "(se %.4f) %s | success prob qualifier=%.3g%s\n",
        t.trial, t.f_star, t.curvature, t.factor, t.f_fractional,
        t.fractional_ok ? "OK" : "VIOLATED", t.rounded_mean, t.rounded_se,
        t.rounded_ok ? "OK" : "VIOLATED", t.aggregate_success,
        t.aggregate_success <= 0.0 ? " (vacuous)" : "");
  }
  std::printf("overall: %s\n", report.all_ok ? "all bounds hold" : "BOUND VIOLATION");
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw dismax::config_error("cannot write " + out_path);
    f << dismax::bound_report_to_json(report);
    std::printf("wrote %s\n", out_path.c_str());
  }
  return 0;
}

int gen_command(const std::string& out_path, const Overrides& ov) {
  dismax::Scenario scenario = dismax::default_scenario(ov.seed_set ? ov.seed : 1);
  apply(ov, scenario);
  dismax::save_scenario(scenario, out_path);
  std::printf("wrote %s (n=%d strategies, %d agents, %d trials)\n", out_path.c_str(),
              scenario.partition().ground_size(), scenario.partition().num_agents(),
              scenario.trials);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed submodular maximization simulator"};
  app.require_subcommand(1);

  Overrides run_ov;
  std::string run_scenario;
  std::string run_out = "results.csv";
  bool zero_wall_ms = false;
  CLI::App* run = app.add_subcommand("run", "run solvers over a scenario, write results CSV");
  run->add_option("--scenario", run_scenario, "scenario JSON file")->required();
  run->add_option("--out", run_out, "results CSV path");
  run->add_flag("--zero-wall-ms", zero_wall_ms,
                "write wall_ms as 0 so reruns are byte-identical");
  add_override_flags(run, run_ov);

  Overrides verify_ov;
  std::string verify_scenario;
  std::string verify_out;
  int rounding_trials = 2000;
  CLI::App* verify =
      app.add_subcommand("verify", "check optimality-gap and rounding bounds per trial");
  verify->add_option("--scenario", verify_scenario, "scenario JSON file")->required();
  verify->add_option("--out", verify_out, "bound report JSON path");
  verify->add_option("--rounding-trials", rounding_trials,
                     "Monte-Carlo roundings per trial");
  add_override_flags(verify, verify_ov);

  Overrides gen_ov;
  std::string gen_out = "scenario.json";
  CLI::App* gen = app.add_subcommand(
      "gen-scenario", "write the default coverage scenario (5 ring agents, 22 strategies)");
  gen->add_option("--out", gen_out, "scenario JSON path");
  add_override_flags(gen, gen_ov);

  try {
    app.parse(argc, argv);
    if (run->parsed()) return run_command(run_scenario, run_ov, run_out, zero_wall_ms);
    if (verify->parsed())
      return verify_command(verify_scenario, verify_ov, verify_out, rounding_trials);
    if (gen->parsed()) return gen_command(gen_out, gen_ov);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // config errors exit 1 (help exits 0)
  } catch (const dismax::guard_error& e) {
    std::fprintf(stderr, "guard exceeded: %s\n", e.what());
    return 2;
  } catch (const dismax::invariant_error& e) {
    std::fprintf(stderr, "internal invariant violation: %s\n", e.what());
    return 3;
  } catch (const dismax::config_error& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
}
