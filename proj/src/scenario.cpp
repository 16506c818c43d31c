#include "dismax/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <fstream>
#include <sstream>

#include "dismax/baselines.hpp"
#include "json.hpp"

namespace dismax {

namespace {

using nlohmann::json;

json utility_json_object(const ValueOracle& f) {
  if (const auto* cov = dynamic_cast<const CoverageUtility*>(&f)) {
    json j;
    j["kind"] = "coverage2d";
    for (const Point2& s : cov->sources()) j["sources"].push_back({s.x, s.y});
    for (const Point2& s : cov->sites()) j["sites"].push_back({s.x, s.y});
    j["site_of_strategy"] = cov->site_of_strategy();
    j["depot"] = {cov->depot().x, cov->depot().y};
    return j;
  }
  if (const auto* wc = dynamic_cast<const WeightedCoverageUtility*>(&f)) {
    json j;
    j["kind"] = "weighted_coverage";
    j["element_weights"] = wc->element_weights();
    j["covers"] = wc->covers();
    return j;
  }
  throw config_error("utility type has no serialization");
}

std::vector<Point2> parse_points(const json& arr, const char* what) {
  std::vector<Point2> out;
  if (!arr.is_array()) throw config_error(std::string(what) + " must be an array");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2)
      throw config_error(std::string(what) + " entries must be [x, y] pairs");
    out.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  return out;
}

std::unique_ptr<ValueOracle> utility_from_json_object(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw config_error("utility object needs a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "coverage2d") {
    const auto depot_arr = j.at("depot");
    if (!depot_arr.is_array() || depot_arr.size() != 2)
      throw config_error("coverage2d depot must be [x, y]");
    return std::make_unique<CoverageUtility>(
        parse_points(j.at("sources"), "sources"), parse_points(j.at("sites"), "sites"),
        j.at("site_of_strategy").get<std::vector<int>>(),
        Point2{depot_arr[0].get<double>(), depot_arr[1].get<double>()});
  }
  if (kind == "weighted_coverage") {
    return std::make_unique<WeightedCoverageUtility>(
        j.at("element_weights").get<std::vector<double>>(),
        j.at("covers").get<std::vector<std::vector<int>>>());
  }
  throw config_error("unknown utility kind \"" + kind + "\"");
}

json parse_text(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw config_error(std::string("invalid JSON in ") + what);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write " + path);
  out << text;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace

std::unique_ptr<ValueOracle> utility_from_json(const std::string& json_text) {
  return utility_from_json_object(parse_text(json_text, "utility"));
}

std::string utility_to_json(const ValueOracle& f) {
  return utility_json_object(f).dump(2);
}

std::unique_ptr<ValueOracle> load_utility(const std::string& path) {
  return utility_from_json(read_file(path));
}

void save_utility(const ValueOracle& f, const std::string& path) {
  write_file(path, utility_to_json(f) + "\n");
}

AgentPartition Scenario::partition() const {
  if (generator.has_value()) {
    std::vector<int> sizes;
    for (const auto& block : generator->site_blocks)
      sizes.push_back(static_cast<int>(block.size()));
    return AgentPartition(sizes, budgets);
  }
  return AgentPartition(block_sizes, budgets);
}

CommGraph Scenario::graph() const {
  const int num_agents = static_cast<int>(budgets.size());
  if (graph_kind == "ring") return CommGraph::ring(num_agents);
  if (graph_kind == "path") return CommGraph::path(num_agents);
  if (graph_kind == "complete") return CommGraph::complete(num_agents);
  if (graph_kind == "custom") return CommGraph(num_agents, graph_edges);
  throw config_error("unknown graph kind \"" + graph_kind + "\"");
}

int Scenario::consensus_rounds() const {
  if (consensus_mode == "1") return 1;
  if (consensus_mode == "diam") return graph().diameter();
  throw config_error("consensus mode must be \"1\" or \"diam\"");
}

std::unique_ptr<ValueOracle> Scenario::materialize(std::uint64_t trial_seed) const {
  if (!generator.has_value()) return utility_from_json(utility_json);
  const CoverageGenerator& g = *generator;
  Substream rng = make_substream(trial_seed, 0, 0, Phase::kInstance);
  const auto draw_point = [&rng, &g]() {
    Point2 p;
    p.x = g.field_min[0] + rng.uniform01() * (g.field_max[0] - g.field_min[0]);
    p.y = g.field_min[1] + rng.uniform01() * (g.field_max[1] - g.field_min[1]);
    return p;
  };
  std::vector<Point2> sources(static_cast<std::size_t>(g.num_sources));
  for (Point2& p : sources) p = draw_point();
  const Point2 depot = g.depot.value_or(Point2{(g.field_min[0] + g.field_max[0]) / 2.0,
                                               (g.field_min[1] + g.field_max[1]) / 2.0});
  std::vector<Point2> sites;
  sites.reserve(static_cast<std::size_t>(g.num_sites));
  if (g.site_layout == "ring") {
    const double rotation = rng.uniform01() * 2.0 * std::numbers::pi;
    std::vector<int> slot(static_cast<std::size_t>(g.num_sites));
    for (int k = 0; k < g.num_sites; ++k) slot[static_cast<std::size_t>(k)] = k;
    for (int k = g.num_sites - 1; k > 0; --k) {
      const int j = static_cast<int>(rng.uniform01() * (k + 1));
      std::swap(slot[static_cast<std::size_t>(k)], slot[static_cast<std::size_t>(j)]);
    }
    for (int k = 0; k < g.num_sites; ++k) {
      const double wobble = (rng.uniform01() - 0.5) * g.ring_jitter;
      const double angle =
          rotation + 2.0 * std::numbers::pi * (slot[static_cast<std::size_t>(k)] + wobble) / g.num_sites;
      sites.push_back(Point2{depot.x + g.ring_radius * std::cos(angle),
                             depot.y + g.ring_radius * std::sin(angle)});
    }
  } else {
    double sep = g.site_min_separation;
    double depot_sep = g.depot_min_separation;
    int misses = 0;
    while (static_cast<int>(sites.size()) < g.num_sites) {
      const Point2 cand = draw_point();
      bool ok = std::hypot(cand.x - depot.x, cand.y - depot.y) >= depot_sep;
      if (ok)
        for (const Point2& s : sites)
          if (std::hypot(cand.x - s.x, cand.y - s.y) < sep) {
            ok = false;
            break;
          }
      if (ok) {
        sites.push_back(cand);
        misses = 0;
      } else if (++misses >= 200) {
        sep *= 0.95;
        depot_sep *= 0.95;
        misses = 0;
      }
    }
  }
  std::vector<int> site_of;
  for (const auto& block : g.site_blocks)
    for (int s : block) site_of.push_back(s);
  return std::make_unique<CoverageUtility>(std::move(sources), std::move(sites),
                                           std::move(site_of), depot);
}

void Scenario::validate() const {
  if (id.empty()) throw config_error("scenario needs an id");
  if (budgets.empty()) throw config_error("scenario needs at least one agent budget");
  if (generator.has_value() == !utility_json.empty())
    throw config_error("scenario needs exactly one of generator / embedded utility");
  if (generator.has_value()) {
    const CoverageGenerator& g = *generator;
    if (g.num_sources < 1 || g.num_sites < 1)
      throw config_error("generator needs positive source and site counts");
    if (g.field_max[0] <= g.field_min[0] || g.field_max[1] <= g.field_min[1])
      throw config_error("generator field must have positive extent");
    if (g.site_min_separation < 0.0)
      throw config_error("site_min_separation must be nonnegative");
    if (g.depot_min_separation < 0.0)
      throw config_error("depot_min_separation must be nonnegative");
    if (g.site_layout != "uniform" && g.site_layout != "ring")
      throw config_error("site_layout must be \"uniform\" or \"ring\"");
    if (g.site_layout == "ring") {
      if (!(g.ring_radius > 0.0)) throw config_error("ring_radius must be positive");
      if (g.ring_jitter < 0.0) throw config_error("ring_jitter must be nonnegative");
      const double cx = g.depot.has_value() ? g.depot->x : (g.field_min[0] + g.field_max[0]) / 2.0;
      const double cy = g.depot.has_value() ? g.depot->y : (g.field_min[1] + g.field_max[1]) / 2.0;
      if (cx - g.ring_radius < g.field_min[0] || cx + g.ring_radius > g.field_max[0] ||
          cy - g.ring_radius < g.field_min[1] || cy + g.ring_radius > g.field_max[1])
        throw config_error("ring layout does not fit inside the field");
    }
    if (g.site_blocks.size() != budgets.size())
      throw config_error("generator needs one site block per agent");
    for (const auto& block : g.site_blocks) {
      if (block.empty()) throw config_error("generator site blocks must not be empty");
      for (int s : block)
        if (s < 1 || s > g.num_sites)
          throw config_error("site block references site outside 1..num_sites");
    }
    if (!block_sizes.empty()) {
      if (block_sizes.size() != g.site_blocks.size())
        throw config_error("block_sizes contradicts generator site blocks");
      for (std::size_t i = 0; i < block_sizes.size(); ++i)
        if (block_sizes[i] != static_cast<int>(g.site_blocks[i].size()))
          throw config_error("block_sizes contradicts generator site blocks");
    }
  } else {
    if (block_sizes.size() != budgets.size())
      throw config_error("need one block size per agent");
    const auto f = utility_from_json(utility_json);
    int total = 0;
    for (int s : block_sizes) total += s;
    if (f->ground_size() != total)
      throw config_error("utility ground set does not match the partition");
  }

  const AgentPartition part = partition();  // validates sizes vs budgets
  const CommGraph net = graph();
  (void)consensus_rounds();
  if (horizon < 1) throw config_error("horizon must be at least 1");
  if (trials < 1) throw config_error("trials must be at least 1");
  RoundConfig rc;
  rc.horizon = horizon;
  rc.samples = samples;
  rc.validate(part.num_agents());
  if (solvers.empty()) throw config_error("scenario needs at least one solver");
  for (const std::string& s : solvers) {
    if (s == "ds" || s == "centralized" || s == "brute") continue;
    if (s.rfind("seq:", 0) == 0) {
      const std::string name = s.substr(4);
      const auto it = visit_sequences.find(name);
      if (it == visit_sequences.end())
        throw config_error("solver " + s + " names an unknown visit sequence");
      VisitSequence{name, it->second}.validate(net);
      continue;
    }
    throw config_error("unknown solver \"" + s + "\"");
  }
}

Scenario scenario_from_json(const std::string& json_text) {
  const json j = parse_text(json_text, "scenario");
  Scenario s;
  s.id = j.value("id", "");
  if (j.contains("generator")) {
    const json& g = j.at("generator");
    CoverageGenerator gen;
    gen.num_sources = g.value("num_sources", gen.num_sources);
    gen.num_sites = g.value("num_sites", gen.num_sites);
    if (g.contains("field")) {
      const json& f = g.at("field");
      if (!f.is_array() || f.size() != 2 || f[0].size() != 2 || f[1].size() != 2)
        throw config_error("generator field must be [[xmin,xmax],[ymin,ymax]]");
      gen.field_min[0] = f[0][0].get<double>();
      gen.field_max[0] = f[0][1].get<double>();
      gen.field_min[1] = f[1][0].get<double>();
      gen.field_max[1] = f[1][1].get<double>();
    }
    gen.site_min_separation = g.value("site_min_separation", gen.site_min_separation);
    gen.depot_min_separation = g.value("depot_min_separation", gen.depot_min_separation);
    gen.site_layout = g.value("site_layout", gen.site_layout);
    gen.ring_radius = g.value("ring_radius", gen.ring_radius);
    gen.ring_jitter = g.value("ring_jitter", gen.ring_jitter);
    if (g.contains("depot")) {
      const json& d = g.at("depot");
      if (!d.is_array() || d.size() != 2)
        throw config_error("generator depot must be [x, y]");
      gen.depot = Point2{d[0].get<double>(), d[1].get<double>()};
    }
    gen.site_blocks = g.at("site_blocks").get<std::vector<std::vector<int>>>();
    s.generator = std::move(gen);
  }
  if (j.contains("utility")) s.utility_json = j.at("utility").dump();
  s.block_sizes = j.value("block_sizes", std::vector<int>{});
  s.budgets = j.at("budgets").get<std::vector<int>>();
  if (j.contains("graph")) {
    const json& g = j.at("graph");
    s.graph_kind = g.value("kind", "ring");
    if (g.contains("edges"))
      for (const auto& e : g.at("edges"))
        s.graph_edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  s.horizon = j.value("horizon", s.horizon);
  if (j.contains("samples")) {
    if (j.at("samples").is_array())
      s.samples = j.at("samples").get<std::vector<int>>();
    else
      s.samples = {j.at("samples").get<int>()};
  }
  s.consensus_mode = j.value("consensus", s.consensus_mode);
  s.trials = j.value("trials", s.trials);
  s.solvers = j.value("solvers", s.solvers);
  if (j.contains("visit_sequences"))
    for (const auto& [name, order] : j.at("visit_sequences").items())
      s.visit_sequences[name] = order.get<std::vector<AgentId>>();
  s.master_seed = j.value("master_seed", s.master_seed);
  s.trace = j.value("trace", s.trace);
  s.verify_bounds = j.value("verify_bounds", s.verify_bounds);
  s.validate();
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["id"] = s.id;
  if (s.generator.has_value()) {
    const CoverageGenerator& g = *s.generator;
    json gj;
    gj["num_sources"] = g.num_sources;
    gj["num_sites"] = g.num_sites;
    gj["field"] = {{g.field_min[0], g.field_max[0]}, {g.field_min[1], g.field_max[1]}};
    gj["site_min_separation"] = g.site_min_separation;
    gj["depot_min_separation"] = g.depot_min_separation;
    gj["site_layout"] = g.site_layout;
    gj["ring_radius"] = g.ring_radius;
    gj["ring_jitter"] = g.ring_jitter;
    if (g.depot.has_value()) gj["depot"] = {g.depot->x, g.depot->y};
    gj["site_blocks"] = g.site_blocks;
    j["generator"] = std::move(gj);
  } else {
    j["utility"] = parse_text(s.utility_json, "utility");
    j["block_sizes"] = s.block_sizes;
  }
  j["budgets"] = s.budgets;
  json gj;
  gj["kind"] = s.graph_kind;
  if (!s.graph_edges.empty()) {
    for (const auto& [a, b] : s.graph_edges) gj["edges"].push_back({a, b});
  }
  j["graph"] = std::move(gj);
  j["horizon"] = s.horizon;
  if (s.samples.size() == 1)
    j["samples"] = s.samples[0];
  else
    j["samples"] = s.samples;
  j["consensus"] = s.consensus_mode;
  j["trials"] = s.trials;
  j["solvers"] = s.solvers;
  if (!s.visit_sequences.empty()) {
    json vj;
    for (const auto& [name, order] : s.visit_sequences) vj[name] = order;
    j["visit_sequences"] = std::move(vj);
  }
  j["master_seed"] = s.master_seed;
  j["trace"] = s.trace;
  j["verify_bounds"] = s.verify_bounds;
  return j.dump(2);
}

std::string Scenario::content_hash() const {
  Scenario copy = *this;
  copy.id = "";
  const std::uint64_t h = fnv1a(scenario_to_json(copy));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 8);  // first 8 hex digits are plenty for an id tag
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_json(read_file(path));
}

void save_scenario(const Scenario& s, const std::string& path) {
  s.validate();
  write_file(path, scenario_to_json(s) + "\n");
}

Scenario default_scenario(std::uint64_t master_seed) {
  Scenario s;
  s.id = "coverage-ring5";
  CoverageGenerator gen;
  gen.num_sources = 2000;
  gen.num_sites = 10;
  gen.site_layout = "ring";
  gen.ring_radius = 0.30;
  gen.site_blocks = {
      {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {1, 2, 3, 4, 5}, {1, 2, 3}, {1, 2}, {1, 2}};
  s.generator = std::move(gen);
  s.budgets = {5, 2, 1, 1, 1};
  s.graph_kind = "ring";
  s.horizon = 50;
  s.samples = {1000};
  s.consensus_mode = "1";
  s.trials = 50;
  s.solvers = {"ds", "seq:a", "seq:b", "seq:c", "seq:d", "seq:e", "seq:f"};
  s.visit_sequences = {
      {"a", {1, 2, 3, 4, 5}}, {"b", {2, 3, 4, 5, 1}}, {"c", {3, 4, 5, 1, 2}},
      {"d", {4, 5, 1, 2, 3}}, {"e", {5, 1, 2, 3, 4}}, {"f", {1, 5, 4, 3, 2}}};
  s.master_seed = master_seed;
  s.validate();
  return s;
}

}  // namespace dismax
