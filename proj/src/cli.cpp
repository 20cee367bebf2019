#include "rotset/cli.hpp"

#include "rotset/graph_io.hpp"
#include "rotset/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace rotset {

namespace {

class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string map;
  std::string mode;
  std::string vector;
  std::optional<std::uint64_t> seed;
  long points = 1000;
  long iterates = 1000;
  long samples = 100000;
  int grid = 64;
  double epsilon = 0.05;
  int directions = kDefaultDirections;
  int depth = kDefaultDepth;
  double tol = kDefaultResidualTol;
  int max_len = 50;
  double member_tol = 1e-3;
  std::optional<double> keps;
  std::string start = "0,0";
  std::string target;
  std::string disp = "0,0";
  std::string targets;
  std::string x = "0,0";
  std::string json_out;
  std::string svg_out;
  std::string out_dir;
  std::string zoo_action;
  std::string export_graph;
  std::string config_file;
  bool no_timestamp = false;
};

json config_json(const RunConfig& c) {
  json j = {{"command", c.command}, {"map", c.map},           {"mode", c.mode},
            {"points", c.points},   {"iterates", c.iterates}, {"samples", c.samples},
            {"grid", c.grid},       {"epsilon", c.epsilon},   {"directions", c.directions},
            {"depth", c.depth},     {"tol", c.tol},           {"max-len", c.max_len},
            {"member-tol", c.member_tol}};
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["keps"] = c.keps ? json(*c.keps) : json(nullptr);
  if (!c.vector.empty()) j["vector"] = c.vector;
  if (c.command == "chain") {
    j["start"] = c.start;
    j["target"] = c.target.empty() ? c.start : c.target;
    j["disp"] = c.disp;
    j["targets"] = c.targets;
  }
  if (c.command == "estimate") j["x"] = c.x;
  return j;
}

// Options that may also come from a --config JSON file; flags win.
class ConfigRegistry {
 public:
  template <typename T>
  void add(CLI::App* app, const std::string& name, T& field, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + name, field, help);
    entries_[app][name] = {opt, [&field](const json& v) { field = v.get<T>(); }};
  }
  template <typename T>
  void add(CLI::App* app, const std::string& name, std::optional<T>& field, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + name, field, help);
    entries_[app][name] = {opt, [&field](const json& v) { field = v.get<T>(); }};
  }

  void apply(CLI::App* app, const json& cfg) {
    auto& entries = entries_[app];
    for (const auto& [key, value] : cfg.items()) {
      auto it = entries.find(key);
      if (it == entries.end()) throw BadInput("config: unknown key '" + key + "' for " + app->get_name());
      if (it->second.option->count() > 0) continue;
      try {
        it->second.set(value);
      } catch (const json::exception& e) {
        throw BadInput("config: bad value for '" + key + "': " + e.what());
      }
    }
  }

 private:
  struct Entry {
    CLI::Option* option;
    std::function<void(const json&)> set;
  };
  std::map<const CLI::App*, std::map<std::string, Entry>> entries_;
};

std::pair<std::int64_t, std::int64_t> parse_int_pair(const std::string& s, const char* what) {
  std::istringstream is(s);
  std::int64_t a = 0, b = 0;
  char comma = 0;
  if (!(is >> a >> comma >> b) || comma != ',' || !(is >> std::ws).eof())
    throw BadInput(std::string(what) + ": expected 'a,b', got '" + s + "'");
  return {a, b};
}

Vec2 parse_real_pair(const std::string& s, const char* what) {
  std::istringstream is(s);
  double a = 0, b = 0;
  char comma = 0;
  if (!(is >> a >> comma >> b) || comma != ',' || !(is >> std::ws).eof())
    throw BadInput(std::string(what) + ": expected 'x,y', got '" + s + "'");
  return {a, b};
}

LiftMap parse_map_or_throw(const std::string& spec) {
  if (spec.empty()) throw BadInput("--map is required");
  try {
    return parse_map(spec);
  } catch (const MapSpecError& e) {
    throw BadInput(e.what());
  }
}

RationalVector parse_vector_or_throw(const std::string& text) {
  if (text.empty()) throw BadInput("--vector is required");
  try {
    return RationalVector::parse(text);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
}

std::uint64_t require_seed(const RunConfig& c) {
  if (!c.seed) throw BadInput("--seed is required for stochastic commands");
  return *c.seed;
}

void check_ranges(const RunConfig& c) {
  if (c.points < 1) throw BadInput("--points must be >= 1");
  if (c.iterates < 1) throw BadInput("--iterates must be >= 1");
  if (c.samples < 2) throw BadInput("--samples must be >= 2");
  if (c.grid < 2 || c.grid > 4096) throw BadInput("--grid must be in [2, 4096]");
  if (!(c.epsilon > 0.0)) throw BadInput("--epsilon must be > 0");
  if (c.directions < 3) throw BadInput("--directions must be >= 3");
  if (c.depth < 1 || c.depth > 14) throw BadInput("--depth must be in [1, 14]");
  if (!(c.tol > 0.0)) throw BadInput("--tol must be > 0");
  if (c.max_len < 1) throw BadInput("--max-len must be >= 1");
  if (!(c.member_tol >= 0.0)) throw BadInput("--member-tol must be >= 0");
  if (c.keps && !(*c.keps >= 0.0)) throw BadInput("--keps must be >= 0");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const RunConfig& c, json report, std::ostream& out) {
  report["config"] = config_json(c);
  if (!c.no_timestamp) report["timestamp"] = utc_timestamp();
  const std::string text = report.dump(2) + "\n";
  if (c.json_out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.json_out, std::ios::binary);
  if (!f) throw BadInput("cannot write " + c.json_out);
  f << text;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw BadInput("cannot write " + path);
  f << text;
}

int cmd_zoo(std::ostream& out) {
  for (const auto& e : zoo_entries()) out << to_json(e).dump() << "\n";
  return kExitOk;
}

int cmd_estimate(const RunConfig& c, std::ostream& out) {
  const LiftMap f = parse_map_or_throw(c.map);
  const std::string mode = c.mode.empty() ? "sample" : c.mode;
  json result = json::object();
  json diagnostics = json::object();
  std::optional<std::uint64_t> seed;
  std::optional<RotationSetEstimate> inner, outer;
  std::optional<MeanRotationResult> mean;
  double slack = 0.0;

  if (mode == "birkhoff") {
    const auto r = birkhoff_rotation_vector(f, parse_real_pair(c.x, "--x"), c.iterates);
    result["vector"] = to_json(r.vector);
    diagnostics = to_json(r);
  }
  if (mode == "sample" || mode == "all") {
    seed = require_seed(c);
    inner = sample_rotation_set(f, c.points, c.iterates, *seed, c.directions);
    result["hull_vertices"] = to_json(inner->hull_vertices);
    result["support"] = to_json(*inner)["support"];
    diagnostics["sample_count"] = inner->samples.size();
    diagnostics["hull_area"] = polygon_area(inner->hull_vertices);
  }
  if (mode == "mean" || mode == "all") {
    seed = require_seed(c);
    mean = mean_rotation_vector(f, c.samples, *seed);
    result["vector"] = to_json(mean->vector);
    diagnostics["standard_error"] = to_json(mean->standard_error);
    diagnostics["mean_sample_count"] = mean->sample_count;
  }
  if (mode == "graph" || mode == "all") {
    const GridDigraph g = build_chain_graph(f, c.grid, c.epsilon);
    outer = rotation_set_outer(g, c.directions);
    diagnostics["graph"] = graph_summary(g);
    slack = g.effective_epsilon();
    diagnostics["slack"] = slack;
    if (outer) {
      result["outer"] = to_json(*outer);
    } else {
      result["outer"] = nullptr;
      diagnostics["outer_absent"] = "graph has no cycle";
    }
  }
  if (result.empty()) throw BadInput("--mode must be one of sample, graph, mean, birkhoff, all");
  if (inner && outer) {
    diagnostics["outer_contains_inner"] = convex_contains_all(outer->hull_vertices, inner->hull_vertices, 1e-9);
    diagnostics["inflated_outer_contains_inner"] =
        convex_contains_all(outer->hull_vertices, inner->hull_vertices, slack);
  }
  if (inner && mean) {
    const double inflate = 3.0 * mean->standard_error.norm();
    diagnostics["mean_in_inner"] = convex_contains(inner->hull_vertices, mean->vector, inflate + 1e-12);
  }

  if (!c.svg_out.empty()) {
    std::vector<SvgLayer> layers;
    if (inner) layers.push_back({inner->hull_vertices, "blue"});
    if (outer) layers.push_back({outer->hull_vertices, "red"});
    write_text_file(c.svg_out, render_svg(inner ? inner->samples : std::vector<Vec2>{}, layers));
  }
  emit(c, make_report(f.spec(), mode, config_json(c), seed, result, diagnostics), out);
  return kExitOk;
}

json chain_with_replay(const LiftMap& f, const GridDigraph& g, const Chain& ch) {
  json j = to_json(ch, g.grid());
  const auto res = replay_chain(f, g.grid(), ch);
  double worst = 0.0;
  for (double r : res) worst = std::max(worst, r);
  j["replay_residuals"] = res;
  j["max_replay_residual"] = worst;
  j["sound"] = worst < g.effective_epsilon();
  return j;
}

int cmd_chain(const RunConfig& c, std::ostream& out) {
  const LiftMap f = parse_map_or_throw(c.map);
  const GridDigraph g = build_chain_graph(f, c.grid, c.epsilon);
  if (!c.export_graph.empty()) {
    std::ofstream bin(c.export_graph, std::ios::binary);
    if (!bin) throw BadInput("cannot write " + c.export_graph);
    write_graph_binary(bin, g);
  }
  const int n = g.grid().resolution();
  auto cell_arg = [&](const std::string& s, const char* what) {
    const auto [i, j] = parse_int_pair(s, what);
    if (i < 0 || j < 0 || i >= n || j >= n) throw BadInput(std::string(what) + ": cell index outside the grid");
    return g.grid().id(static_cast<int>(i), static_cast<int>(j));
  };

  const std::string mode = c.mode.empty() ? "periodic" : c.mode;
  json result = json::object();
  json diagnostics = {{"graph", graph_summary(g)}, {"slack", g.effective_epsilon()}};
  bool found = false;

  if (mode == "target") {
    const int start = cell_arg(c.start, "--start");
    const int target = c.target.empty() ? start : cell_arg(c.target, "--target");
    const auto [dx, dy] = parse_int_pair(c.disp, "--disp");
    const auto res = find_chain_to_target(g, start, target, LatticeVec(dx, dy), c.max_len);
    diagnostics["states_explored"] = res.states_explored;
    diagnostics["budget_exhausted"] = res.budget_exhausted;
    diagnostics["window"] = res.window;
    found = res.chain.has_value();
    result["chain"] = found ? chain_with_replay(f, g, *res.chain) : json(nullptr);
  } else if (mode == "periodic") {
    const auto res = find_periodic_chain(g, c.max_len);
    diagnostics["states_explored"] = res.states_explored;
    diagnostics["budget_exhausted"] = res.budget_exhausted;
    found = res.chain.has_value();
    result["chain"] = found ? chain_with_replay(f, g, *res.chain) : json(nullptr);
  } else if (mode == "combine") {
    // Chains start -> start with ledgers w_i, glued with Steinitz weights.
    const int start = cell_arg(c.start, "--start");
    std::vector<LatticeVec> ws;
    std::stringstream ss(c.targets);
    for (std::string item; std::getline(ss, item, ';');) {
      const auto [a, b] = parse_int_pair(item, "--targets");
      ws.emplace_back(a, b);
    }
    if (ws.empty()) throw BadInput("--targets: expected 'm,n;m,n;...'");
    const auto comb = steinitz_combination(ws);
    result["weights"] = comb ? json(comb->weights) : json(nullptr);
    std::vector<Chain> pieces;
    json piece_json = json::array();
    for (const auto& w : ws) {
      const auto res = find_chain_to_target(g, start, start, w, c.max_len);
      if (!res.chain) break;
      piece_json.push_back(to_json(*res.chain, g.grid()));
      pieces.push_back(*res.chain);
    }
    result["pieces"] = piece_json;
    found = comb && pieces.size() == ws.size();
    result["chain"] = found ? chain_with_replay(f, g, combine_chains(pieces, comb->weights)) : json(nullptr);
  } else {
    throw BadInput("--mode must be one of target, periodic, combine");
  }
  emit(c, make_report(f.spec(), "chain-" + mode, config_json(c), std::nullopt, result, diagnostics), out);
  return found ? kExitOk : kExitAbsent;
}

int cmd_realize(const RunConfig& c, std::ostream& out) {
  const LiftMap f = parse_map_or_throw(c.map);
  const RationalVector nu = parse_vector_or_throw(c.vector);
  const auto rep = realize_rational_vector(f, nu, c.depth, c.tol);
  json result = rep ? to_json(*rep) : json(nullptr);
  emit(c, make_report(f.spec(), "realize", config_json(c), std::nullopt, result, {{"target", to_json(nu)}}), out);
  return rep ? kExitOk : kExitAbsent;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  VerifyTheoremConfig vc;
  vc.map_spec = parse_map_or_throw(c.map).spec();
  vc.nu = parse_vector_or_throw(c.vector);
  vc.seed = require_seed(c);
  vc.num_points = c.points;
  vc.iterates = c.iterates;
  vc.mean_samples = c.samples;
  vc.grid = c.grid;
  vc.epsilon = c.epsilon;
  vc.directions = c.directions;
  vc.depth = c.depth;
  vc.tol = c.tol;
  vc.member_tol = c.member_tol;
  vc.keps = c.keps;
  const auto rep = verify_theorem(vc);
  json report = to_json(rep);
  report["schema"] = kSchema;
  report["seed"] = vc.seed;
  emit(c, report, out);
  return rep.pass ? kExitOk : kExitAbsent;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"rotset: rotation sets and periodic orbits of torus maps"};
  app.require_subcommand(1);
  ConfigRegistry registry;

  auto common = [&](CLI::App* sub) {
    registry.add(sub, "map", cfg.map, "map expression, e.g. hshear(0.25,0.5)");
    sub->add_option("--config", cfg.config_file, "JSON file of option values; flags take precedence");
    sub->add_option("--json", cfg.json_out, "write the report here instead of stdout");
    sub->add_option("--out-dir", cfg.out_dir, "write <command>.json (and <command>.svg) into this directory");
    sub->add_flag("--no-timestamp", cfg.no_timestamp, "omit the timestamp field");
  };

  CLI::App* zoo = app.add_subcommand("zoo", "list the built-in maps");
  zoo->add_option("action", cfg.zoo_action, "optional 'list'")->check(CLI::IsMember({"list"}));

  CLI::App* est = app.add_subcommand("estimate", "rotation vector, rotation set and mean rotation estimates");
  common(est);
  registry.add(est, "mode", cfg.mode, "sample | graph | mean | birkhoff | all");
  registry.add(est, "seed", cfg.seed, "random seed (required for sample, mean, all)");
  registry.add(est, "points", cfg.points, "orbits sampled for the inner hull");
  registry.add(est, "iterates", cfg.iterates, "iterates per orbit");
  registry.add(est, "samples", cfg.samples, "Monte-Carlo samples for the mean rotation vector");
  registry.add(est, "grid", cfg.grid, "grid resolution N");
  registry.add(est, "epsilon", cfg.epsilon, "chain epsilon");
  registry.add(est, "directions", cfg.directions, "support directions");
  registry.add(est, "x", cfg.x, "start point 'x,y' for birkhoff mode");
  est->add_option("--svg", cfg.svg_out, "write an SVG plot");

  CLI::App* chn = app.add_subcommand("chain", "epsilon-chain searches on the grid digraph");
  common(chn);
  registry.add(chn, "mode", cfg.mode, "periodic | target | combine");
  registry.add(chn, "grid", cfg.grid, "grid resolution N");
  registry.add(chn, "epsilon", cfg.epsilon, "chain epsilon");
  registry.add(chn, "max-len", cfg.max_len, "maximum chain length");
  registry.add(chn, "directions", cfg.directions, "support directions");
  registry.add(chn, "start", cfg.start, "start cell 'i,j'");
  registry.add(chn, "target", cfg.target, "target cell 'i,j' (default: start)");
  registry.add(chn, "disp", cfg.disp, "target lattice displacement 'm,n'");
  registry.add(chn, "targets", cfg.targets, "combine mode: displacements 'm,n;m,n;...'");
  chn->add_option("--export-graph", cfg.export_graph, "write the graph in RSGD binary format");

  CLI::App* rea = app.add_subcommand("realize", "find a periodic orbit with a rational rotation vector");
  common(rea);
  registry.add(rea, "vector", cfg.vector, "target 'p/q,r/q'");
  registry.add(rea, "depth", cfg.depth, "quadtree depth");
  registry.add(rea, "tol", cfg.tol, "residual tolerance");

  CLI::App* ver = app.add_subcommand("verify-theorem", "end-to-end check: membership and periodic orbit");
  common(ver);
  registry.add(ver, "vector", cfg.vector, "target 'p/q,r/q'");
  registry.add(ver, "seed", cfg.seed, "random seed");
  registry.add(ver, "points", cfg.points, "orbits sampled for the inner hull");
  registry.add(ver, "iterates", cfg.iterates, "iterates per orbit");
  registry.add(ver, "samples", cfg.samples, "Monte-Carlo samples for the mean rotation vector");
  registry.add(ver, "grid", cfg.grid, "grid resolution N");
  registry.add(ver, "epsilon", cfg.epsilon, "chain epsilon");
  registry.add(ver, "directions", cfg.directions, "support directions");
  registry.add(ver, "depth", cfg.depth, "quadtree depth");
  registry.add(ver, "tol", cfg.tol, "residual tolerance");
  registry.add(ver, "member-tol", cfg.member_tol, "membership tolerance for the sampled hull");
  registry.add(ver, "keps", cfg.keps, "also test membership in the hull with the ball of this radius");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (cfg.command == "zoo") return cmd_zoo(out);
    if (!cfg.config_file.empty()) {
      std::ifstream f(cfg.config_file);
      if (!f) throw BadInput("cannot read config " + cfg.config_file);
      json j;
      try {
        j = json::parse(f);
      } catch (const json::exception& e) {
        throw BadInput(std::string("config: ") + e.what());
      }
      if (!j.is_object()) throw BadInput("config must be a JSON object");
      registry.apply(sub, j);
    }
    check_ranges(cfg);
    if (!cfg.out_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(cfg.out_dir, ec);
      if (ec) throw BadInput("cannot create " + cfg.out_dir + ": " + ec.message());
      const std::filesystem::path dir(cfg.out_dir);
      if (cfg.json_out.empty()) cfg.json_out = (dir / (cfg.command + ".json")).string();
      if (cfg.svg_out.empty() && cfg.command == "estimate") cfg.svg_out = (dir / (cfg.command + ".svg")).string();
    }
    if (cfg.command == "estimate") return cmd_estimate(cfg, out);
    if (cfg.command == "chain") return cmd_chain(cfg, out);
    if (cfg.command == "realize") return cmd_realize(cfg, out);
    if (cfg.command == "verify-theorem") return cmd_verify(cfg, out);
  } catch (const BadInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace rotset
