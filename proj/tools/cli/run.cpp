#include "run.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <new>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "citenet/dimension.hpp"
#include "citenet/error.hpp"
#include "citenet/intervals.hpp"
#include "citenet/io.hpp"
#include "citenet/rng.hpp"
#include "citenet/sprinkle.hpp"
#include "citenet/transitive.hpp"
#include "output.hpp"
#include "reports.hpp"

namespace citenet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Thread count is left out: it never changes results.
json echo(const RunConfig& c) {
  json j = {{"subcommand", c.subcommand}, {"out", c.out}, {"seed", c.seed}};
  auto set_if = [&](const char* key, const std::string& value) {
    if (!value.empty()) j[key] = value;
  };
  set_if("nodes", c.nodes);
  set_if("edges", c.edges);
  set_if("source", c.source);
  set_if("target", c.target);
  set_if("figure", c.figure);
  set_if("report", c.report);
  j["keep_equal_time"] = c.keep_equal_time;
  const auto& s = c.subcommand;
  if (s == "interval" || s == "dimension") {
    j["include_endpoints"] = c.include_endpoints;
  }
  if (s == "dimension") {
    j["method"] = c.method;
    j["num_pairs"] = c.num_pairs;
    j["min_interval_size"] = c.min_interval_size;
  }
  if (s == "closure") j["edge_budget"] = c.edge_budget;
  if (s == "rank") j["top_k"] = c.top_k;
  if (s == "tr" || s == "closure" || s == "rank" || s == "export") {
    j["chunk_size"] = c.chunk_size;
  }
  if (s == "sprinkle") {
    j["geometry"] = c.geometry;
    j["dim"] = c.dim;
    j["n"] = c.n;
  }
  return j;
}

class Run {
 public:
  Run(const RunConfig& config, std::ostream& log)
      : config_(config), log_(log), out_dir_(config.out) {
    metadata_ = {{"tool", kToolName},
                 {"version", kToolVersion},
                 {"rng", Rng::kName},
                 {"config", echo(config)},
                 {"inputs", json::object()}};
  }

  void validate_inputs(std::initializer_list<const std::string*> paths) {
    for (const std::string* p : paths) {
      if (p->empty()) continue;
      std::error_code ec;
      if (!fs::is_regular_file(*p, ec)) {
        throw DataError("input file not found: " + *p);
      }
      std::ifstream probe(*p);
      if (!probe) throw DataError("input file not readable: " + *p);
    }
  }

  void prepare_output() {
    std::error_code ec;
    fs::create_directories(out_dir_, ec);
    if (!fs::is_directory(out_dir_)) {
      throw UsageError("cannot create output directory " + out_dir_.string());
    }
  }

  void record_inputs() {
    for (const std::string* p : {&config_.nodes, &config_.edges, &config_.report}) {
      if (!p->empty()) metadata_["inputs"][*p] = sha256_file(*p);
    }
  }

  BuildResult load() {
    if (config_.nodes.empty() || config_.edges.empty()) {
      throw UsageError("--nodes and --edges are required");
    }
    BuildOptions options;
    options.keep_equal_time = config_.keep_equal_time;
    auto result = load_graph(config_.nodes, config_.edges, options);
    if (result.report.equal_time_cycle) {
      log_ << "warning: equal-time edges form a cycle and were dropped\n";
    }
    return result;
  }

  SweepOptions sweep() const {
    SweepOptions s;
    s.threads = config_.threads;
    s.chunk_size = config_.chunk_size;
    return s;
  }

  json with_metadata(json body) const {
    body["metadata"] = metadata_;
    return body;
  }

  void write_json(const std::string& name, const json& body) {
    write_file_atomic(out_dir_ / name, with_metadata(body).dump(2) + "\n");
    outputs_.push_back(name);
  }

  template <typename Fn>
  void write_stream(const std::string& name, Fn&& fn) {
    AtomicFile file(out_dir_ / name);
    fn(file.stream());
    file.commit();
    outputs_.push_back(name);
  }

  void add_output(const std::string& name) { outputs_.push_back(name); }

  void finish() {
    json run = metadata_;
    run["schema_version"] = kSchemaVersion;
    json digests = json::object();
    for (const auto& name : outputs_) digests[name] = sha256_file(out_dir_ / name);
    run["outputs"] = std::move(digests);
    // the digest covers the document without its own field
    run["digest"] = sha256_hex(run.dump());
    write_file_atomic(out_dir_ / "run.json", run.dump(2) + "\n");
  }

  const fs::path& out_dir() const { return out_dir_; }

 private:
  const RunConfig& config_;
  std::ostream& log_;
  fs::path out_dir_;
  json metadata_;
  std::vector<std::string> outputs_;
};

void cmd_ingest(const RunConfig&, Run& run, std::ostream& out) {
  auto result = run.load();
  run.write_json("ingest_report.json", to_json(result.report));
  out << "accepted " << result.report.edges_accepted << " of "
      << result.report.edges_total << " edges\n";
}

void cmd_tr(const RunConfig&, Run& run, std::ostream& out) {
  const auto result = run.load();
  const CitationGraph reduced = transitive_reduction(result.graph, run.sweep());
  const TrReport report = tr_report(result.graph, reduced);
  run.write_stream("reduced_edges.tsv",
                   [&](std::ostream& s) { write_edge_tsv(s, reduced); });
  run.write_json("tr_report.json", to_json(report));
  run.write_stream("degree_hist.csv", [&](std::ostream& s) {
    write_degree_csv(s, citation_histogram(result.graph, reduced));
  });
  out << "edges " << report.edges_before << " -> " << report.edges_after
      << " (loss " << report.edge_loss_fraction << ")\n";
}

void cmd_closure(const RunConfig& c, Run& run, std::ostream& out) {
  const auto result = run.load();
  ClosureOptions options;
  options.sweep = run.sweep();
  options.edge_budget = c.edge_budget;
  const CitationGraph closure = transitive_closure(result.graph, options);
  run.write_stream("closure_edges.tsv",
                   [&](std::ostream& s) { write_edge_tsv(s, closure); });
  out << "closure has " << closure.edge_count() << " edges\n";
}

void cmd_interval(const RunConfig& c, Run& run, std::ostream& out) {
  if (c.source.empty() || c.target.empty()) {
    throw UsageError("--source and --target are required");
  }
  const auto result = run.load();
  const auto& g = result.graph;
  IntervalOptions options;
  options.include_endpoints = c.include_endpoints;
  IntervalAnalysis analysis(g, g.at(c.source), g.at(c.target), options);
  run.write_json("interval.json",
                 to_json(g, analysis.summary(), analysis.midpoint()));
  out << "N = " << analysis.size() << ", P = " << analysis.relations() << "\n";
}

void cmd_dimension(const RunConfig& c, Run& run, std::ostream& out) {
  const auto result = run.load();
  FieldOptions options;
  options.method = parse_method(c.method);
  options.num_pairs = c.num_pairs;
  options.min_interval_size = c.min_interval_size;
  options.seed = c.seed;
  options.threads = c.threads;
  options.interval.include_endpoints = c.include_endpoints;
  const auto report = estimate_field_dimension(result.graph, options);
  const json body = to_json(result.graph, report);
  run.write_json("dimension_report.json", body);
  run.write_stream("dimension_estimates.csv",
                   [&](std::ostream& s) { write_estimates_csv(s, body); });
  if (report.summary) {
    out << "median D = " << report.summary->median
        << " (IQR " << report.summary->iqr() << ") from "
        << report.num_pairs_accepted << " intervals\n";
  } else {
    out << "no interval reached the minimum size\n";
  }
}

void cmd_sprinkle(const RunConfig& c, Run& run, std::ostream& out) {
  SprinkleSpec spec;
  spec.geometry = parse_geometry(c.geometry);
  spec.D = c.dim;
  spec.n = c.n;
  spec.seed = c.seed;
  spec.threads = c.threads;
  const Sprinkling s = sprinkle(spec);
  run.write_stream("nodes.tsv",
                   [&](std::ostream& o) { write_node_tsv(o, s.graph); });
  run.write_stream("edges.tsv",
                   [&](std::ostream& o) { write_edge_tsv(o, s.graph); });
  run.write_json("sprinkle.json", {{"schema_version", kSchemaVersion},
                                   {"geometry", to_string(spec.geometry)},
                                   {"D", spec.D},
                                   {"n", spec.n},
                                   {"seed", spec.seed},
                                   {"rng", Rng::kName},
                                   {"edges", s.graph.edge_count()}});
  out << "sprinkled " << s.size() << " points, " << s.graph.edge_count()
      << " relations\n";
}

void cmd_rank(const RunConfig& c, Run& run, std::ostream& out) {
  if (c.top_k < 1) throw UsageError("--top-k must be >= 1");
  const auto result = run.load();
  const auto ranking = post_tr_ranking(result.graph, c.top_k, run.sweep());
  run.write_stream("ranking.csv",
                   [&](std::ostream& s) { write_scatter_csv(s, ranking); });
  out << "ranked " << ranking.size() << " nodes\n";
}

void cmd_export(const RunConfig& c, Run& run, std::ostream& out) {
  const Figure figure = parse_figure(c.figure);
  const std::string name = c.figure + ".csv";
  if (figure == Figure::f5_dim_hist) {
    if (c.report.empty()) throw UsageError("f5_dim_hist needs --report");
    std::ifstream in(c.report);
    json report;
    try {
      report = json::parse(in);
    } catch (const json::exception& e) {
      throw DataError(c.report + ": " + e.what());
    }
    export_figure_data(CitationGraph{}, figure, run.out_dir() / name, &report);
  } else {
    const auto result = run.load();
    export_figure_data(result.graph, figure, run.out_dir() / name, nullptr,
                       run.sweep());
  }
  run.add_output(name);
  out << "wrote " << name << "\n";
}

}  // namespace

void execute(const RunConfig& config, std::ostream& out) {
  using Command = void (*)(const RunConfig&, Run&, std::ostream&);
  static const std::map<std::string, Command> commands = {
      {"ingest", cmd_ingest},     {"tr", cmd_tr},
      {"closure", cmd_closure},   {"interval", cmd_interval},
      {"dimension", cmd_dimension}, {"sprinkle", cmd_sprinkle},
      {"rank", cmd_rank},         {"export", cmd_export},
  };
  auto it = commands.find(config.subcommand);
  if (it == commands.end()) {
    throw UsageError("unknown subcommand '" + config.subcommand + "'");
  }
  Run run(config, out);
  run.validate_inputs({&config.nodes, &config.edges, &config.report});
  run.prepare_output();
  run.record_inputs();
  it->second(config, run, out);
  run.finish();
}

namespace {

void add_graph_inputs(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--nodes", c.nodes, "node TSV (id<TAB>time)");
  cmd->add_option("--edges", c.edges, "edge TSV (citing<TAB>cited)");
  cmd->add_flag("--keep-equal-time", c.keep_equal_time,
                "keep edges between equal-time nodes when acyclic");
}

void add_sweep(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--chunk-size", c.chunk_size,
                  "target nodes per reachability stripe")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig c;
  CLI::App app{"Causal analysis of citation DAGs", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  app.add_option("--out", c.out, "output directory")->capture_default_str();
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads (0 = all cores)");

  auto* ingest = app.add_subcommand("ingest", "build the DAG and report dropped edges");
  add_graph_inputs(ingest, c);

  auto* tr = app.add_subcommand("tr", "transitive reduction and edge-loss report");
  add_graph_inputs(tr, c);
  add_sweep(tr, c);

  auto* closure = app.add_subcommand("closure", "transitive closure");
  add_graph_inputs(closure, c);
  add_sweep(closure, c);
  closure->add_option("--edge-budget", c.edge_budget, "maximum closure edges")
      ->capture_default_str();

  auto* interval = app.add_subcommand("interval", "interval, relations and midpoint");
  add_graph_inputs(interval, c);
  interval->add_option("--source", c.source, "newer endpoint id");
  interval->add_option("--target", c.target, "older endpoint id");
  interval->add_flag("--include-endpoints", c.include_endpoints);

  auto* dimension = app.add_subcommand("dimension", "sampled field dimension");
  add_graph_inputs(dimension, c);
  dimension->add_option("--method", c.method,
                        "myrheim_meyer|mm, box_counting|box, box_space")
      ->capture_default_str();
  dimension->add_option("--num-pairs", c.num_pairs)->capture_default_str();
  dimension->add_option("--min-interval-size", c.min_interval_size)
      ->capture_default_str();
  dimension->add_flag("--include-endpoints", c.include_endpoints);

  auto* sprinkle = app.add_subcommand("sprinkle", "synthetic causal set");
  sprinkle->add_option("--geometry", c.geometry, "minkowski | cube")
      ->capture_default_str();
  sprinkle->add_option("--dim", c.dim)->capture_default_str();
  sprinkle->add_option("--n", c.n)->capture_default_str();

  auto* rank = app.add_subcommand("rank", "rank nodes by post-reduction citations");
  add_graph_inputs(rank, c);
  add_sweep(rank, c);
  rank->add_option("--top-k", c.top_k)->capture_default_str();

  auto* exp = app.add_subcommand("export", "plot-ready figure data");
  add_graph_inputs(exp, c);
  add_sweep(exp, c);
  exp->add_option("--figure", c.figure, "f3_degree_dist | f4_scatter | f5_dim_hist")
      ->required();
  exp->add_option("--report", c.report, "dimension_report.json for f5_dim_hist");

  // Options of the top-level app are also accepted after the subcommand.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  try {
    execute(c, out);
    return kSuccess;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceError;
  } catch (const std::bad_alloc&) {
    err << "resource limit: out of memory\n";
    return kResourceError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
}

}  // namespace citenet::cli
