// Command-line runner for the multi-virus contact process toolkit:
//   simulate | sweep | bounds | oracle | verify
// Exit codes: 0 success, 1 verify-check failure, 2 invalid configuration,
// 3 internal error.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "mvcp/analysis.hpp"
#include "mvcp/bounds.hpp"
#include "mvcp/engine.hpp"
#include "mvcp/random_walk.hpp"
#include "mvcp/trees.hpp"
#include "mvcp/version.hpp"

using json = nlohmann::ordered_json;
using namespace mvcp;

namespace {

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw config_error(std::string(what) + ": empty entry");
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw config_error(std::string(what) + ": cannot parse '" + item + "'");
    }
    if (pos != item.size())
      throw config_error(std::string(what) + ": trailing junk in '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw config_error(std::string(what) + ": empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (double v : parse_double_list(text, what)) {
    int iv = static_cast<int>(v);
    if (static_cast<double>(iv) != v)
      throw config_error(std::string(what) + ": expected integers");
    out.push_back(iv);
  }
  return out;
}

DeathProfile parse_phi(const std::string& text) {
  return DeathProfile(parse_double_list(text, "phi"));
}

// Tree grammar: "finite:d:n" or "ball:d:D".
TreeSpec parse_tree(const std::string& text) {
  std::stringstream ss(text);
  std::string kind, a, b;
  if (!std::getline(ss, kind, ':') || !std::getline(ss, a, ':') ||
      !std::getline(ss, b, ':'))
    throw config_error("tree: expected finite:d:n or ball:d:D, got '" + text + "'");
  int x, y;
  try {
    x = std::stoi(a);
    y = std::stoi(b);
  } catch (const std::exception&) {
    throw config_error("tree: non-numeric field in '" + text + "'");
  }
  if (kind == "finite") return TreeSpec::finite_offspring(x, y);
  if (kind == "ball") return TreeSpec::truncated_regular(x, y);
  throw config_error("tree: unknown kind '" + kind + "'");
}

// Init grammar: "root:k", "id:count[,id:count...]", or "@path" with
// "id count" lines.
std::vector<std::pair<VertexId, std::int32_t>> parse_init(const std::string& text) {
  std::vector<std::pair<VertexId, std::int32_t>> out;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw config_error("init: cannot open file " + text.substr(1));
    VertexId id;
    std::int32_t count;
    while (in >> id >> count) out.emplace_back(id, count);
    if (!in.eof() && in.fail()) throw config_error("init: malformed line in file");
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw config_error("init: expected id:count, got '" + item + "'");
    std::string key = item.substr(0, colon);
    std::string val = item.substr(colon + 1);
    try {
      std::int32_t count = std::stoi(val);
      VertexId id = (key == "root") ? 0 : static_cast<VertexId>(std::stoul(key));
      out.emplace_back(id, count);
    } catch (const std::exception&) {
      throw config_error("init: cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw config_error("init: empty specification");
  return out;
}

void apply_init(GraphState& g,
                const std::vector<std::pair<VertexId, std::int32_t>>& init,
                const DeathProfile& profile) {
  for (auto [id, count] : init) {
    if (id >= g.vertex_count())
      throw config_error("init: vertex " + std::to_string(id) + " does not exist");
    if (count < 0) throw config_error("init: negative infection count");
    if (count > profile.cutoff() - 1)
      throw config_error("init: count " + std::to_string(count) +
                         " exceeds M-1 = " + std::to_string(profile.cutoff() - 1));
    g.set_infections(id, count);
  }
}

unsigned threads_from_env() {
  if (const char* env = std::getenv("MVCP_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;  // hardware concurrency
}

std::uint64_t fnv1a64(const std::vector<std::uint64_t>& seeds) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint64_t s : seeds) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (s >> (8 * byte)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

struct OutputSink {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit OutputSink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file.open(path, std::ios::binary);
      if (!file) throw config_error("cannot open output file: " + path);
      stream = &file;
    }
  }
  std::ostream& out() { return *stream; }
};

// Shared graph/config assembly for simulate-style commands.
struct ModelArgs {
  std::string tree_text;
  std::string graph_path;
  std::string init_text = "root:1";
  std::string phi_text;
  double lambda = 0.0;

  GraphState make_graph(const DeathProfile& profile) const {
    if (!tree_text.empty() && !graph_path.empty())
      throw config_error("give either --tree or --graph, not both");
    GraphState g = !tree_text.empty()   ? build_tree(parse_tree(tree_text))
                   : !graph_path.empty() ? load_edge_list_file(graph_path)
                                         : throw config_error(
                                               "one of --tree or --graph is required");
    apply_init(g, parse_init(init_text), profile);
    return g;
  }

  MvcpConfig make_config() const {
    if (!(lambda > 0.0)) throw config_error("lambda must be positive");
    return MvcpConfig(lambda, parse_phi(phi_text));
  }

  json describe() const {
    json j;
    if (!tree_text.empty()) j["tree"] = tree_text;
    if (!graph_path.empty()) j["graph"] = graph_path;
    j["init"] = init_text;
    j["lambda"] = lambda;
    j["phi"] = parse_double_list(phi_text, "phi");
    return j;
  }
};

// ---------------------------------------------------------------- simulate

int cmd_simulate(const ModelArgs& margs, std::optional<double> horizon,
                 std::optional<std::uint64_t> max_events, bool stop_boundary,
                 bool thin, std::uint64_t seed, const std::string& out_path) {
  MvcpConfig cfg = margs.make_config();
  GraphState g = margs.make_graph(cfg.profile);

  StopRule stop;
  stop.time_horizon = horizon;
  stop.max_events = max_events;
  stop.on_boundary_hit = stop_boundary;
  if (stop_boundary && !g.has_boundary_flags())
    throw config_error("--stop-boundary needs a truncated regular tree");

  OutputSink sink(out_path);
  json header = margs.describe();
  header["type"] = "config";
  header["command"] = "simulate";
  header["version"] = kVersion;
  header["seed"] = seed;
  header["thin"] = thin;
  if (horizon) header["horizon"] = *horizon;
  if (max_events) header["max_events"] = *max_events;
  header["stop_boundary"] = stop_boundary;
  sink.out() << header.dump() << "\n";

  RunOptions opts;
  opts.thin = thin;
  Trajectory tr = run(g, cfg, stop, seed, opts);

  for (const Event& ev : tr.events) {
    json line;
    line["t"] = ev.time;
    if (ev.kind == Event::Kind::Heal) {
      line["kind"] = "heal";
      line["x"] = ev.x;
    } else {
      line["kind"] = "transmit";
      line["x"] = ev.x;
      line["y"] = ev.y;
      line["outcome"] =
          ev.outcome == TransmissionOutcome::Infected ? "infected" : "killed";
      line["pre_count"] = ev.pre_count;
    }
    sink.out() << line.dump() << "\n";
  }

  json summary;
  summary["type"] = "summary";
  switch (tr.summary.kind) {
    case Summary::Kind::Extinction:
      summary["kind"] = "extinction";
      break;
    case Summary::Kind::HorizonReached:
      summary["kind"] = "horizon";
      summary["remaining_infections"] = tr.summary.remaining_infections;
      break;
    case Summary::Kind::BoundaryHit:
      summary["kind"] = "boundary_hit";
      summary["vertex"] = tr.summary.vertex;
      break;
  }
  summary["t"] = tr.summary.time;
  summary["events"] = tr.event_count;
  sink.out() << summary.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------- bounds

int cmd_bounds(int d, const std::string& phi_text, const std::string& out_path) {
  DeathProfile profile = parse_phi(phi_text);
  BoundSet bs = [&] {
    try {
      return compute_bounds(d, profile);
    } catch (const std::domain_error& e) {
      throw config_error(e.what());
    }
  }();

  auto opt_json = [](const std::optional<double>& v) {
    json j;
    j["defined"] = v.has_value();
    if (v) j["value"] = *v;
    return j;
  };

  json out;
  out["type"] = "bounds";
  out["version"] = kVersion;
  out["d"] = d;
  out["phi"] = profile.table();
  out["cutoff"] = profile.cutoff();
  out["extinction_assumption"] = bs.extinction_assumption_holds;
  out["lambda_star_lower"] = opt_json(bs.lambda_star_lower);
  out["survival_assumption"] = bs.survival_assumption_holds;
  out["lambda_star_upper"] = opt_json(bs.lambda_star_upper);
  out["dead_branch_bound"] = opt_json(bs.dead_branch);
  json loads = json::object();
  for (const auto& [i, v] : bs.lambda_i_bounds) loads[std::to_string(i)] = v;
  out["lambda_i_bounds"] = loads;
  if (bs.lambda_star_lower && bs.dead_branch)
    out["dead_branch_exceeds_lower"] = *bs.dead_branch > *bs.lambda_star_lower;

  OutputSink sink(out_path);
  sink.out() << out.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- oracle

int cmd_oracle(double lambda, const std::string& phi_text,
               std::optional<double> p_up_override, std::int64_t start,
               std::uint64_t horizon_jumps, std::size_t replicas,
               std::uint64_t seed, const std::string& out_path) {
  DeathProfile profile = parse_phi(phi_text);
  if (!(lambda > 0.0)) throw config_error("lambda must be positive");
  double p_w = dominating_up_probability(lambda, profile);
  double p_up = p_up_override.value_or(p_w);
  WalkSpec spec(p_up, start);

  double analytic = absorption_probability(spec);
  double solved = ruin_probability_linear_system(p_up, start, 10000);

  std::uint64_t absorbed = 0;
  for (std::size_t k = 0; k < replicas; ++k)
    if (simulate_walk(spec, horizon_jumps, seed + k).absorbed) ++absorbed;

  json out;
  out["type"] = "oracle";
  out["version"] = kVersion;
  out["lambda"] = lambda;
  out["phi"] = profile.table();
  out["p_w"] = p_w;
  out["walk"] = {{"p_up", p_up}, {"start", start}};
  out["absorption_probability"] = analytic;
  out["linear_system"] = {{"value", solved},
                          {"abs_diff", std::abs(analytic - solved)},
                          {"truncation", 10000}};
  out["simulated"] = {{"replicas", replicas},
                      {"horizon_jumps", horizon_jumps},
                      {"absorbed", absorbed},
                      {"absorbed_fraction",
                       replicas ? absorbed / double(replicas) : 0.0},
                      {"seed", seed}};

  OutputSink sink(out_path);
  sink.out() << out.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(int d, const std::string& depths_text, const std::string& phi_text,
              const std::string& lambdas_text, std::size_t replicas,
              std::uint64_t seed, int root_load, std::uint64_t max_events,
              const std::string& out_path, unsigned threads) {
  DeathProfile profile = parse_phi(phi_text);
  std::vector<int> depths = parse_int_list(depths_text, "depths");
  std::vector<double> lambdas = parse_double_list(lambdas_text, "lambdas");

  StopRule stop;
  stop.on_boundary_hit = true;
  stop.max_events = max_events;

  json config;
  config["command"] = "sweep";
  config["version"] = kVersion;
  config["d"] = d;
  config["depths"] = depths;
  config["phi"] = profile.table();
  config["lambdas"] = lambdas;
  config["replicas"] = replicas;
  config["seed"] = seed;
  config["root_load"] = root_load;
  config["max_events"] = max_events;

  OutputSink sink(out_path);
  sink.out() << "# mvcp " << kVersion << " " << config.dump() << "\n";
  sink.out() << "lambda,depth,boundary_hits,replicas,estimate,ci_lower,ci_upper,"
                "seed_hash\n";

  std::uint64_t hash = fnv1a64(seed_range(seed, replicas));
  for (int depth : depths) {
    SweepResult res = lambda_sweep(TreeSpec::truncated_regular(d, depth), profile,
                                   lambdas, stop, replicas, seed, root_load,
                                   threads);
    for (const SweepCell& cell : res.cells) {
      sink.out() << json(cell.lambda).dump() << "," << depth << ","
                 << cell.estimate.successes << "," << cell.estimate.replicas << ","
                 << json(cell.estimate.point).dump() << ","
                 << json(cell.estimate.lower).dump() << ","
                 << json(cell.estimate.upper).dump() << "," << std::hex << hash
                 << std::dec << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyContext {
  bool quick;
  std::ostream& out;
  int failures = 0;

  void report(const std::string& name, bool pass, json detail) {
    json line;
    line["type"] = "check";
    line["name"] = name;
    line["pass"] = pass;
    line["detail"] = std::move(detail);
    out << line.dump() << "\n";
    if (!pass) ++failures;
  }
};

void verify_model_invariants(VerifyContext& ctx) {
  const int seeds = ctx.quick ? 20 : 50;
  GraphState g = build_tree(TreeSpec::finite_offspring(3, 19));
  g.set_infections(0, 1);
  MvcpConfig cfg(2.0, DeathProfile({0.1, 0.5, 1.0}));
  bool pass = true;
  std::string error;
  std::uint64_t events = 0;
  try {
    for (int k = 0; k < seeds; ++k) {
      RunOptions opts;
      opts.verify_rates = true;
      GraphState final_state(1);
      opts.final_state = &final_state;
      Trajectory tr = run(g, cfg, StopRule::extinction_only(), 52000 + k, opts);
      events += tr.event_count;
      final_state.check_invariants();
      if (tr.summary.kind != Summary::Kind::Extinction ||
          final_state.total_infections() != 0 || !(replay(g, tr) == final_state)) {
        pass = false;
        break;
      }
      double prev = 0.0;
      for (const Event& ev : tr.events) {
        if (!(ev.time > prev)) pass = false;
        prev = ev.time;
      }
    }
  } catch (const std::exception& e) {
    pass = false;
    error = e.what();
  }
  json detail{{"replicas", seeds}, {"events", events}};
  if (!error.empty()) detail["error"] = error;
  ctx.report("model-invariants", pass, detail);
}

void verify_boundary_count(VerifyContext& ctx) {
  const int depth = ctx.quick ? 3 : 4;
  const std::size_t max_size = ctx.quick ? 4 : 6;
  const int random_subsets = ctx.quick ? 2000 : 10000;
  auto spec = TreeSpec::truncated_regular(3, depth);
  GraphState ball = build_tree(spec);
  auto depths = tree_depths(spec);
  std::vector<VertexId> interior;
  for (VertexId v = 0; v < ball.vertex_count(); ++v)
    if (depths[v] < depth) interior.push_back(v);

  GraphState interior_graph = induced_live_subgraph(ball, interior);
  auto sets = enumerate_connected_subsets(interior_graph, max_size);
  bool equality = true;
  for (const auto& a : sets) {
    auto b = boundary_count(ball, a);
    std::int64_t expected =
        3 * std::int64_t(a.size()) - 2 * (std::int64_t(a.size()) - 1);
    if (b.boundary_edges != expected) equality = false;
  }

  SplitMix64 rng(99);
  bool inequality = true;
  for (int t = 0; t < random_subsets; ++t) {
    std::vector<VertexId> a;
    for (VertexId v : interior)
      if (rng.uniform01() < 0.5) a.push_back(v);
    if (a.empty()) continue;
    auto b = boundary_count(ball, a);
    if (b.boundary_edges <
        3 * std::int64_t(a.size()) - 2 * (std::int64_t(a.size()) - 1))
      inequality = false;
  }
  ctx.report("boundary-count", equality && inequality,
             {{"depth", depth},
              {"connected_subsets", sets.size()},
              {"equality", equality},
              {"random_subsets", random_subsets},
              {"inequality", inequality}});
}

void verify_drift_fixtures(VerifyContext& ctx) {
  const std::size_t replicas = ctx.quick ? 100000 : 1000000;
  bool pass = true;
  json detail;

  // Single infected interior vertex.
  GraphState single = build_tree(TreeSpec::truncated_regular(3, 2));
  single.set_infections(0, 1);
  MvcpConfig cfg0(1.0, DeathProfile({0.0, 0.0, 0.0, 0.0, 0.0, 1.0}));
  double gen_single = drift_generator(single, cfg0, 0.5).drift;
  double closed_single = drift_closed_form_uniform(1, 3, 1, cfg0, 0.5);
  pass &= std::abs(gen_single - (-0.25)) <= 1e-12;
  pass &= std::abs(closed_single - (-0.5)) <= 1e-12;
  detail["single_vertex"] = {{"generator", gen_single},
                             {"closed_form", closed_single}};

  // Isolated pair: perfect matching, the two routes agree.
  GraphState pair(2);
  pair.add_edge(0, 1);
  pair.set_infections(0, 1);
  pair.set_infections(1, 1);
  MvcpConfig cfg1(1.0, DeathProfile({0.1, 0.5, 1.0}));
  double gen_pair = drift_generator(pair, cfg1, 0.5).drift;
  double closed_pair = drift_closed_form_uniform(2, 0, 1, cfg1, 0.5);
  pass &= std::abs(gen_pair - 0.625) <= 1e-12;
  pass &= std::abs(gen_pair - closed_pair) <= 1e-12;
  detail["isolated_pair"] = {{"generator", gen_pair}, {"closed_form", closed_pair}};

  // Matched two-class fixture.
  GraphState ball = build_tree(TreeSpec::truncated_regular(3, 3));
  VertexId child0 = ball.neighbors(0)[0];
  VertexId child1 = ball.neighbors(0)[1];
  VertexId grand = 0;
  for (VertexId nb : ball.neighbors(child1))
    if (nb != 0) {
      grand = nb;
      break;
    }
  ball.set_infections(0, 1);
  ball.set_infections(child0, 1);
  ball.set_infections(child1, 2);
  ball.set_infections(grand, 2);
  MvcpConfig cfg2(1.0, DeathProfile({0.1, 0.3, 0.6, 1.0}));
  double gen_two = drift_generator(ball, cfg2, 0.5).drift;
  double closed_two = drift_closed_form_two_class(2, 2, 4, 4, 1, 1, 2, cfg2, 0.5);
  pass &= std::abs(gen_two - 0.15234375) <= 1e-12;
  pass &= std::abs(gen_two - closed_two) <= 1e-12;
  detail["matched_two_class"] = {{"generator", gen_two},
                                 {"closed_form", closed_two}};

  // Monte Carlo finite differences against the generator.
  DriftFdReport fd = drift_fd_check(single, cfg0, 0.5, 1e-3, replicas, 640000);
  pass &= fd.pass;
  detail["fd_single"] = {{"exact", fd.exact},
                         {"fd_dt", fd.fd_dt},
                         {"se_dt", fd.se_dt},
                         {"pass", fd.pass}};
  ctx.report("drift-fixtures", pass, detail);
}

void verify_immortality(VerifyContext& ctx) {
  const std::size_t replicas = ctx.quick ? 10000 : 100000;
  GraphState g(2);
  g.add_edge(0, 1);
  g.set_infections(0, 1);
  MvcpConfig cfg(5.0, DeathProfile({0.2, 0.5, 1.0}));
  ImmortalityReport rep = immortality_check(g, cfg, 1, 4, replicas, 730000);
  ctx.report("immortality-bound", rep.pass,
             {{"replicas", replicas},
              {"estimate", rep.estimate},
              {"bound", rep.bound},
              {"bound_stderr", rep.std_error},
              {"reached", rep.reached},
              {"low_power", rep.low_power}});
}

void verify_domination(VerifyContext& ctx) {
  const std::size_t seeds = ctx.quick ? 20 : 100;
  struct Fixture {
    double lambda;
    std::vector<double> phi;
  };
  const Fixture fixtures[] = {{10.0, {0.0, 0.0, 1.0}},
                              {10.0, {0.1, 0.3, 1.0}},
                              {5.0, {0.2, 0.5, 1.0}}};
  bool pass = true;
  json rows = json::array();
  int fixture_index = 0;
  for (const Fixture& f : fixtures) {
    GraphState g = build_tree(TreeSpec::finite_offspring(3, 19));
    g.set_infections(0, 1);
    MvcpConfig cfg(f.lambda, DeathProfile(f.phi));
    DominationReport rep =
        domination_ensemble(g, cfg, StopRule::at_events(2000000),
                            seed_range(810000 + 1000 * fixture_index, seeds));
    pass &= rep.pass;
    rows.push_back({{"lambda", f.lambda},
                    {"phi", f.phi},
                    {"events", rep.events},
                    {"up_fraction", rep.up_fraction},
                    {"p_w", rep.p_w},
                    {"threshold", rep.threshold},
                    {"pass", rep.pass}});
    ++fixture_index;
  }
  ctx.report("domination", pass, {{"ensembles", rows}, {"seeds_each", seeds}});
}

void verify_gamblers_ruin(VerifyContext& ctx) {
  bool pass = true;
  json detail;
  double worst = 0.0;
  for (double p : {0.55, 0.6, 0.75})
    for (std::int64_t start : {1, 2, 5}) {
      double analytic = absorption_probability(WalkSpec(p, start));
      double solved = ruin_probability_linear_system(p, start, 10000);
      worst = std::max(worst, std::abs(analytic - solved));
    }
  pass &= worst <= 1e-10;
  detail["linear_system_max_abs_diff"] = worst;

  const std::size_t replicas = ctx.quick ? 20000 : 100000;
  const std::uint64_t horizon = 10000;
  json sims = json::array();
  for (double p : {0.3, 0.5, 0.6}) {
    std::uint64_t absorbed = 0;
    for (std::size_t k = 0; k < replicas; ++k)
      if (simulate_walk(WalkSpec(p, 1), horizon, 910000 + k).absorbed) ++absorbed;
    double freq = absorbed / double(replicas);
    // At p = 1/2 the absorption-time tail is heavy; the analytic target for
    // a horizon-limited frequency is the within-horizon probability.
    double target = (p == 0.5) ? absorption_within_horizon(p, 1, horizon)
                               : absorption_probability(WalkSpec(p, 1));
    double se = std::sqrt(std::max(target * (1.0 - target), 1.0 / replicas) /
                          double(replicas));
    bool ok = std::abs(freq - target) <= 4 * se;
    pass &= ok;
    sims.push_back({{"p_up", p},
                    {"frequency", freq},
                    {"target", target},
                    {"four_se", 4 * se},
                    {"pass", ok}});
  }
  detail["simulated"] = sims;
  detail["replicas"] = replicas;
  ctx.report("gamblers-ruin", pass, detail);
}

int cmd_verify(bool quick, const std::string& out_path) {
  OutputSink sink(out_path);
  json header;
  header["type"] = "config";
  header["command"] = "verify";
  header["version"] = kVersion;
  header["mode"] = quick ? "quick" : "full";
  sink.out() << header.dump() << "\n";

  VerifyContext ctx{quick, sink.out()};
  verify_model_invariants(ctx);
  verify_boundary_count(ctx);
  verify_drift_fixtures(ctx);
  verify_immortality(ctx);
  verify_domination(ctx);
  verify_gamblers_ruin(ctx);

  json result;
  result["type"] = "result";
  result["pass"] = ctx.failures == 0;
  result["checks"] = 6;
  result["failed"] = ctx.failures;
  sink.out() << result.dump() << "\n";
  return ctx.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulator and verification suite for the multi-virus "
               "contact process with death"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  // Precedence: command-line flags override config-file values, which
  // override built-in defaults. Config entries live in [subcommand] sections.
  app.set_config("--config", "", "INI config file ([simulate] lambda=1 ...)");

  unsigned threads = threads_from_env();

  // simulate
  auto* sim = app.add_subcommand("simulate", "run one seeded trajectory");
  ModelArgs margs;
  std::optional<double> horizon;
  std::optional<std::uint64_t> max_events;
  bool stop_boundary = false, thin = false;
  std::uint64_t sim_seed = 1;
  std::string sim_out;
  sim->add_option("--tree", margs.tree_text, "finite:d:n or ball:d:D");
  sim->add_option("--graph", margs.graph_path, "edge-list file");
  sim->add_option("--init", margs.init_text, "root:k, id:count list, or @file");
  sim->add_option("--lambda", margs.lambda, "infection rate")->required();
  sim->add_option("--phi", margs.phi_text, "death probabilities phi(1..M)")
      ->required();
  sim->add_option("--horizon", horizon, "stop at simulated time T");
  sim->add_option("--max-events", max_events, "stop after K events");
  sim->add_flag("--stop-boundary", stop_boundary,
                "stop when a boundary vertex gets infected");
  sim->add_flag("--thin", thin, "record only the summary");
  sim->add_option("--seed", sim_seed, "replica seed");
  sim->add_option("--out", sim_out, "output path (default stdout)");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "closed-form lambda bounds");
  int bounds_d = 0;
  std::string bounds_phi, bounds_out;
  bnd->add_option("--d", bounds_d, "tree degree (>= 3)")->required();
  bnd->add_option("--phi", bounds_phi, "death probabilities phi(1..M)")->required();
  bnd->add_option("--out", bounds_out, "output path (default stdout)");

  // oracle
  auto* orc = app.add_subcommand("oracle", "dominating-walk quantities");
  double orc_lambda = 0.0;
  std::string orc_phi, orc_out;
  std::optional<double> orc_p_up;
  std::int64_t orc_start = 1;
  std::uint64_t orc_horizon = 10000, orc_seed = 1;
  std::size_t orc_replicas = 100000;
  orc->add_option("--lambda", orc_lambda, "infection rate")->required();
  orc->add_option("--phi", orc_phi, "death probabilities phi(1..M)")->required();
  orc->add_option("--p-up", orc_p_up, "override the walk's up probability");
  orc->add_option("--start", orc_start, "walk start (>= 1)");
  orc->add_option("--horizon-jumps", orc_horizon, "simulation horizon");
  orc->add_option("--replicas", orc_replicas, "simulated walks");
  orc->add_option("--seed", orc_seed, "base seed");
  orc->add_option("--out", orc_out, "output path (default stdout)");

  // sweep
  auto* swp = app.add_subcommand(
      "sweep", "boundary-hit probability over a lambda grid and ball depths");
  int swp_d = 3, swp_root_load = 1;
  std::string swp_depths = "3,4,5", swp_phi, swp_lambdas, swp_out;
  std::size_t swp_replicas = 1000;
  std::uint64_t swp_seed = 1, swp_max_events = 10000000;
  swp->add_option("--d", swp_d, "regular-tree degree");
  swp->add_option("--depths", swp_depths, "comma list of ball depths");
  swp->add_option("--phi", swp_phi, "death probabilities phi(1..M)")->required();
  swp->add_option("--lambdas", swp_lambdas, "strictly increasing lambda grid")
      ->required();
  swp->add_option("--replicas", swp_replicas, "replicas per (lambda, depth)");
  swp->add_option("--seed", swp_seed, "base seed");
  swp->add_option("--init-root", swp_root_load, "initial infections on the root");
  swp->add_option("--max-events", swp_max_events, "safety cap per replica");
  swp->add_option("--out", swp_out, "output path (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "run the self-check suite");
  bool ver_quick = false;
  std::string ver_out;
  ver->add_flag("--quick", ver_quick, "reduced replica counts");
  ver->add_option("--out", ver_out, "output path (default stdout)");

  for (auto* sub : {sim, bnd, orc, swp, ver})
    sub->add_option("--threads", threads,
                    "worker threads (default: MVCP_THREADS or hardware)");

  try {
    app.parse(argc, argv);
    if (sim->parsed())
      return cmd_simulate(margs, horizon, max_events, stop_boundary, thin,
                          sim_seed, sim_out);
    if (bnd->parsed()) return cmd_bounds(bounds_d, bounds_phi, bounds_out);
    if (orc->parsed())
      return cmd_oracle(orc_lambda, orc_phi, orc_p_up, orc_start, orc_horizon,
                        orc_replicas, orc_seed, orc_out);
    if (swp->parsed())
      return cmd_sweep(swp_d, swp_depths, swp_phi, swp_lambdas, swp_replicas,
                       swp_seed, swp_root_load, swp_max_events, swp_out, threads);
    if (ver->parsed()) return cmd_verify(ver_quick, ver_out);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
