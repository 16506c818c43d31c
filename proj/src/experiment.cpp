#include "dismax/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dismax/baselines.hpp"
#include "dismax/exact.hpp"
#include "dismax/pipage.hpp"
#include "json.hpp"

namespace dismax {

namespace {

using nlohmann::json;

struct SolveOutcome {
  double value = 0.0;
  StrategySubset set;
  std::unique_ptr<DistributedRun> run;  // ds only
};

RoundConfig config_for(const Scenario& s, std::uint64_t trial_seed) {
  RoundConfig cfg;
  cfg.horizon = s.horizon;
  cfg.samples = s.samples;
  cfg.consensus_rounds = s.consensus_rounds();
  cfg.stream_seed = trial_seed;
  return cfg;
}

SolveOutcome dispatch(const std::string& solver, const ValueOracle& f,
                      const AgentPartition& partition, const CommGraph& graph,
                      const Scenario& s, std::uint64_t trial_seed) {
  SolveOutcome out;
  if (solver == "ds") {
    out.run = std::make_unique<DistributedRun>(
        run_distributed_cg(f, partition, graph, config_for(s, trial_seed)));
    out.set = round_all_blocks(out.run->info_sets, partition, trial_seed);
    out.value = f.evaluate(out.set);
    return out;
  }
  if (solver == "centralized") {
    const CentralizedRun run = centralized_cg(f, partition, config_for(s, trial_seed));
    out.set = run.rounded;
    out.value = f.evaluate(out.set);
    return out;
  }
  if (solver == "brute") {
    BruteForceResult res = brute_force_opt(f, partition);
    out.set = std::move(res.best);
    out.value = res.value;
    return out;
  }
  if (solver.rfind("seq:", 0) == 0) {
    const std::string name = solver.substr(4);
    const auto it = s.visit_sequences.find(name);
    if (it == s.visit_sequences.end())
      throw config_error("unknown visit sequence \"" + name + "\"");
    out.set = sequential_greedy(f, partition, graph, VisitSequence{name, it->second});
    out.value = f.evaluate(out.set);
    return out;
  }
  throw config_error("unknown solver \"" + solver + "\"");
}

int sites_metric(const ValueOracle& f, const StrategySubset& set) {
  if (const auto* cov = dynamic_cast<const CoverageUtility*>(&f))
    return cov->covered_sites(set);
  return static_cast<int>(set.size());
}

// Inline final-iterate bound check for a finished ds run; "na" when any guard
// stops it.
std::string bound_flag(const ValueOracle& f, const AgentPartition& partition,
                       const Scenario& s, const DistributedRun& run) {
  try {
    const BruteForceResult opt = brute_force_opt(f, partition);
    const double c = total_curvature(f);
    const CommGraph graph = s.graph();
    const int diam = graph.diameter();
    const int graph_term = s.consensus_rounds() >= diam ? 0 : diam;
    const double factor =
        guarantee_factor(c, partition.total_budget(), graph_term, s.horizon);
    const double f_frac = multilinear_exact(f, run.final_aggregate());
    return f_frac >= factor * opt.value - 1e-12 ? "1" : "0";
  } catch (const guard_error&) {
    return "na";
  }
}

json trace_json(const DistributedRun& run, const ValueOracle& f,
                const AgentPartition& partition) {
  json rounds = json::array();
  const bool with_exact = f.ground_size() <= 16;
  for (std::size_t t = 0; t < run.rounds.size(); ++t) {
    const RoundTrace& rt = run.rounds[t];
    json r;
    r["round"] = t + 1;
    json agg = json::array();
    for (int p = 1; p <= rt.aggregate.dim(); ++p) agg.push_back(rt.aggregate[p]);
    r["aggregate"] = std::move(agg);
    r["own_block_sums"] = rt.own_block_sums;
    r["disagreement"] = rt.disagreement;
    json sel = json::array();
    for (const StrategySubset& s : rt.selected) sel.push_back(s.ids());
    r["selected"] = std::move(sel);
    r["entries_broadcast"] = rt.entries_broadcast;
    if (with_exact) r["exact_f"] = multilinear_exact(f, rt.aggregate);
    rounds.push_back(std::move(r));
  }
  json j;
  j["rounds"] = std::move(rounds);
  j["total_budget"] = partition.total_budget();
  return j;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

ExperimentOutput run_experiment(const Scenario& scenario) {
  scenario.validate();
  const AgentPartition partition = scenario.partition();
  const CommGraph graph = scenario.graph();
  const std::string tagged_id = scenario.id + "-" + scenario.content_hash();

  ExperimentOutput out;
  for (int trial = 0; trial < scenario.trials; ++trial) {
    const std::uint64_t trial_seed =
        derive_trial_seed(scenario.master_seed, static_cast<std::uint32_t>(trial));
    const std::unique_ptr<ValueOracle> f = scenario.materialize(trial_seed);
    for (const std::string& solver : scenario.solvers) {
      ResultRecord rec;
      rec.scenario_id = tagged_id;
      rec.solver = solver;
      rec.seed = trial_seed;
      rec.trial = static_cast<std::uint32_t>(trial);
      const std::uint64_t calls_before = f->eval_count();
      const auto t0 = std::chrono::steady_clock::now();
      try {
        SolveOutcome res = dispatch(solver, *f, partition, graph, scenario, trial_seed);
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        rec.oracle_calls = f->eval_count() - calls_before;
        rec.value = res.value;
        rec.sites_covered = sites_metric(*f, res.set);
        if (res.run != nullptr && scenario.verify_bounds)
          rec.bound_ok = bound_flag(*f, partition, scenario, *res.run);
        if (res.run != nullptr && scenario.trace) {
          TraceFile tf;
          tf.solver = solver;
          tf.trial = rec.trial;
          tf.json = trace_json(*res.run, *f, partition).dump(2);
          out.traces.push_back(std::move(tf));
        }
      } catch (const std::exception& err) {
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        rec.oracle_calls = f->eval_count() - calls_before;
        rec.bound_ok = "error";
        rec.error = err.what();
        std::cerr << "solver " << solver << " trial " << trial << " failed: " << err.what()
                  << "\n";
      }
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

std::string results_to_csv(const std::vector<ResultRecord>& records, bool zero_wall_ms) {
  std::ostringstream csv;
  csv << "scenario_id,solver,seed,value,sites_covered,oracle_calls,wall_ms,bound_ok\n";
  for (const ResultRecord& r : records) {
    csv << r.scenario_id << ',' << r.solver << ',' << r.seed << ',';
    if (r.bound_ok == "error") {
      csv << ",,";  // value and sites unavailable
    } else {
      csv << format_double(r.value) << ',' << r.sites_covered << ',';
    }
    csv << r.oracle_calls << ',';
    char wall[32];
    std::snprintf(wall, sizeof(wall), "%.3f", zero_wall_ms ? 0.0 : r.wall_ms);
    csv << wall << ',' << r.bound_ok << '\n';
  }
  return csv.str();
}

void write_results_csv(const std::vector<ResultRecord>& records, const std::string& path,
                       bool zero_wall_ms) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write " + path);
  out << results_to_csv(records, zero_wall_ms);
}

BoundReport verify_bounds(const Scenario& scenario, int rounding_trials, int max_n,
                          std::uint64_t max_combinations) {
  scenario.validate();
  if (rounding_trials < 2)
    throw config_error("verify_bounds: need at least 2 rounding trials");
  const AgentPartition partition = scenario.partition();
  const CommGraph graph = scenario.graph();
  const int diam = graph.diameter();
  const int graph_term = scenario.consensus_rounds() >= diam ? 0 : diam;

  BoundReport report;
  report.rounding_trials = rounding_trials;
  for (int trial = 0; trial < scenario.trials; ++trial) {
    const std::uint64_t trial_seed =
        derive_trial_seed(scenario.master_seed, static_cast<std::uint32_t>(trial));
    BoundTrialReport rep;
    rep.trial = static_cast<std::uint32_t>(trial);
    const std::unique_ptr<ValueOracle> f = scenario.materialize(trial_seed);
    try {
      const BruteForceResult opt = brute_force_opt(*f, partition, max_combinations);
      rep.f_star = opt.value;
      rep.curvature = total_curvature(*f, max_n);
      rep.factor = guarantee_factor(rep.curvature, partition.total_budget(),
                                        graph_term, scenario.horizon);
      const DistributedRun run =
          run_distributed_cg(*f, partition, graph, config_for(scenario, trial_seed));
      rep.f_fractional = multilinear_exact(*f, run.final_aggregate(), max_n);
      const double bound = rep.factor * rep.f_star;
      rep.fractional_ok = rep.f_fractional >= bound - 1e-12;

      Substream aux = make_substream(trial_seed, 0, 0, Phase::kAux);
      double sum = 0.0;
      double sumsq = 0.0;
      for (int k = 0; k < rounding_trials; ++k) {
        StrategySubset rounded;
        for (AgentId i = 1; i <= partition.num_agents(); ++i)
          for (StrategyId p :
               round_block(run.info_sets[static_cast<std::size_t>(i - 1)], partition, i, aux))
            rounded.insert(p);
        const double v = f->evaluate(rounded);
        sum += v;
        sumsq += v * v;
      }
      rep.rounded_mean = sum / rounding_trials;
      const double var = std::max(
          0.0, (sumsq - sum * sum / rounding_trials) / (rounding_trials - 1.0));
      rep.rounded_se = std::sqrt(var / rounding_trials);
      rep.rounded_ok = rep.rounded_mean + 3.0 * rep.rounded_se >= bound;

      int min_k = scenario.samples[0];
      for (int k : scenario.samples) min_k = std::min(min_k, k);
      rep.aggregate_success =
          hoeffding_confidence(min_k, scenario.horizon, f->ground_size(), rep.f_star)
              .aggregate_success;
      if (rep.factor <= 0.0) rep.note = "factor nonpositive: bound vacuous at this horizon";
      if (!rep.fractional_ok || !rep.rounded_ok) report.all_ok = false;
    } catch (const guard_error& g) {
      rep.skipped = true;
      rep.note = g.what();
    }
    report.trials.push_back(std::move(rep));
  }
  return report;
}

std::string bound_report_to_json(const BoundReport& report) {
  json trials = json::array();
  for (const BoundTrialReport& r : report.trials) {
    json t;
    t["trial"] = r.trial;
    t["skipped"] = r.skipped;
    if (!r.note.empty()) t["note"] = r.note;
    if (!r.skipped) {
      t["f_star"] = r.f_star;
      t["curvature"] = r.curvature;
      t["factor"] = r.factor;
      t["f_fractional"] = r.f_fractional;
      t["fractional_ok"] = r.fractional_ok;
      t["rounded_mean"] = r.rounded_mean;
      t["rounded_se"] = r.rounded_se;
      t["rounded_ok"] = r.rounded_ok;
      t["aggregate_success"] = r.aggregate_success;
    }
    trials.push_back(std::move(t));
  }
  json j;
  j["trials"] = std::move(trials);
  j["all_ok"] = report.all_ok;
  j["rounding_trials"] = report.rounding_trials;
  return j.dump(2);
}

}  // namespace dismax
