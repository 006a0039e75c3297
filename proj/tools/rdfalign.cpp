#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdfalign/generator.hpp"
#include "rdfalign/node_key.hpp"
#include "rdfalign/ntriples.hpp"
#include "rdfalign/runner.hpp"

namespace {

using json = nlohmann::json;
using namespace rdfalign;

constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitBudget = 4;

struct CommonOpts {
  std::string method = "hybrid";
  double theta = 0.65;
  double epsilon = 1e-3;
  std::string prefix_mode = "paper";
  std::size_t max_rounds = 100;
  int threads = 0; // 0: resolve from RDFALIGN_THREADS, else 1
  std::string format = "tsv";
  std::string out_path;
  std::string stats_path;
  std::string dump_partition_path;
  std::size_t cell_budget = 10'000'000;
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RDFALIGN_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

RunConfig to_config(const CommonOpts& o) {
  RunConfig cfg;
  cfg.method = parse_method(o.method);
  if (o.theta < 0.0 || o.theta > 1.0) throw std::invalid_argument("--theta must lie in [0,1]");
  if (o.epsilon <= 0.0) throw std::invalid_argument("--epsilon must be positive");
  cfg.theta = o.theta;
  cfg.eps = o.epsilon;
  if (o.prefix_mode == "paper") cfg.prefix_mode = PrefixMode::Paper;
  else if (o.prefix_mode == "safe") cfg.prefix_mode = PrefixMode::Safe;
  else throw std::invalid_argument("--prefix-mode must be paper or safe");
  cfg.max_rounds = o.max_rounds;
  cfg.threads = resolve_threads(o.threads);
  cfg.cell_budget = o.cell_budget;
  return cfg;
}

std::ostream& open_or_stdout(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty()) return fallback;
  file.open(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path);
  return file;
}

json side_stats_json(const TripleGraph& g, Origin origin) {
  auto s = g.side_stats(origin);
  return json{{"uris", s.uris}, {"literals", s.literals}, {"blanks", s.blanks}, {"edges", s.triples}};
}

void write_alignment(const TripleGraph& g, const std::vector<std::string>& keys,
                     const std::vector<WeightedPair>& pairs, const std::string& format,
                     std::ostream& out) {
  // Total output order: (srcKey, tgtKey).
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const auto& a = pairs[x];
    const auto& b = pairs[y];
    if (keys[a.src] != keys[b.src]) return keys[a.src] < keys[b.src];
    return keys[a.tgt] < keys[b.tgt];
  });
  if (format == "tsv") {
    std::ostringstream buf;
    for (std::size_t i : order) {
      const auto& p = pairs[i];
      buf << keys[p.src] << '\t' << keys[p.tgt] << '\t' << p.sigma << '\n';
    }
    out << buf.str();
  } else {
    json arr = json::array();
    for (std::size_t i : order) {
      const auto& p = pairs[i];
      json row{{"src", keys[p.src]}, {"tgt", keys[p.tgt]}, {"sigma", p.sigma}};
      if (g.label(p.src).is_literal()) row["srcText"] = g.label(p.src).full_text();
      if (g.label(p.tgt).is_literal()) row["tgtText"] = g.label(p.tgt).full_text();
      arr.push_back(std::move(row));
    }
    out << arr.dump(2) << '\n';
  }
}

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

int cmd_align(const std::string& source, const std::string& target, const CommonOpts& opts) {
  RunConfig cfg = to_config(opts);
  TripleGraph g1 = parse_ntriples_file(source);
  TripleGraph g2 = parse_ntriples_file(target);
  TripleGraph g = disjoint_union(g1, g2);
  std::vector<std::string> keys = node_keys(g);

  ColorInterner interner;
  RunResult result = run_alignment(g, interner, cfg);

  std::ofstream out_file;
  std::ostream& out = open_or_stdout(opts.out_path, out_file, std::cout);
  write_alignment(g, keys, result.pairs, opts.format, out);

  if (!opts.dump_partition_path.empty() && result.partition) {
    std::ofstream dump(opts.dump_partition_path, std::ios::binary);
    if (!dump) throw std::runtime_error("cannot open " + opts.dump_partition_path);
    dump_partition(g, *result.partition, keys, dump);
  }

  std::size_t aligned_src = 0, aligned_tgt = 0;
  {
    std::vector<char> src_seen(g.node_count(), 0), tgt_seen(g.node_count(), 0);
    for (const auto& p : result.pairs) {
      src_seen[p.src] = 1;
      tgt_seen[p.tgt] = 1;
    }
    for (NodeId n = 0; n < g.node_count(); ++n) {
      aligned_src += src_seen[n];
      aligned_tgt += tgt_seen[n];
    }
  }
  double ratio = aligned_edge_ratio(g, result.plain_pairs());

  json stats{{"method", std::string(method_name(cfg.method))},
             {"theta", cfg.theta},
             {"source", side_stats_json(g, Origin::Source)},
             {"target", side_stats_json(g, Origin::Target)},
             {"alignedPairs", result.pairs.size()},
             {"alignedSourceNodes", aligned_src},
             {"alignedTargetNodes", aligned_tgt},
             {"alignedEdgeRatio", ratio},
             {"rounds", result.rounds},
             {"wallMs", result.wall_ms},
             {"threads", cfg.threads}};
  std::ofstream stats_file;
  std::ostream& stats_out = open_or_stdout(opts.stats_path, stats_file, std::cerr);
  stats_out << stats.dump(2) << '\n';
  return 0;
}

json report_json(const TripleGraph& g, const std::vector<std::string>& keys,
                 const PrecisionReport& rep) {
  auto side = [&](const SideCounts& c) {
    auto names = [&](const std::vector<NodeId>& nodes) {
      json arr = json::array();
      for (NodeId n : nodes) arr.push_back(keys[n]);
      return arr;
    };
    return json{{"exact", c.exact},
                {"inclusive", c.inclusive},
                {"missing", c.missing},
                {"false", c.false_matches},
                {"exactNodes", names(c.exact_nodes)},
                {"inclusiveNodes", names(c.inclusive_nodes)},
                {"missingNodes", names(c.missing_nodes)},
                {"falseNodes", names(c.false_nodes)}};
  };
  (void)g;
  return json{{"source", side(rep.source)},
              {"target", side(rep.target)},
              {"exact", rep.exact_total()},
              {"inclusive", rep.inclusive_total()},
              {"missing", rep.missing_total()},
              {"false", rep.false_total()},
              {"alignedEdgeRatio", rep.aligned_edge_ratio}};
}

int cmd_eval(const std::string& source, const std::string& target, const std::string& truth_path,
             const CommonOpts& opts, const std::string& sweep_spec) {
  RunConfig cfg = to_config(opts);
  TripleGraph g1 = parse_ntriples_file(source);
  TripleGraph g2 = parse_ntriples_file(target);
  TripleGraph g = disjoint_union(g1, g2);
  std::vector<std::string> keys = node_keys(g);
  GroundTruth truth = GroundTruth::load_tsv_file(truth_path);
  std::vector<AlignPair> truth_pairs = resolve_truth(truth, g, keys);

  std::ofstream out_file;
  std::ostream& out = open_or_stdout(opts.out_path, out_file, std::cout);

  if (!sweep_spec.empty()) {
    double lo, hi, step;
    if (std::sscanf(sweep_spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
      throw std::invalid_argument("--theta-sweep expects lo:hi:step");
    std::vector<Weight> thetas;
    for (double t = lo; t <= hi + 1e-12; t += step) thetas.push_back(t);
    OverlapOptions oopt;
    oopt.eps = cfg.eps;
    oopt.prefix_mode = cfg.prefix_mode;
    oopt.max_rounds = cfg.max_rounds;
    oopt.threads = cfg.threads;
    ColorInterner interner;
    SweepResult sweep = threshold_sweep(g, interner, thetas, truth_pairs, oopt);
    json arr = json::array();
    for (const auto& e : sweep.entries) {
      json row = report_json(g, keys, e.report);
      row["theta"] = e.theta;
      arr.push_back(std::move(row));
    }
    json doc{{"sweep", arr}, {"bestTheta", sweep.best_theta}};
    out << doc.dump(2) << '\n';
    return 0;
  }

  ColorInterner interner;
  RunResult result = run_alignment(g, interner, cfg);
  PrecisionReport rep = evaluate(g, result.plain_pairs(), truth_pairs);
  rep.aligned_edge_ratio = aligned_edge_ratio(g, result.plain_pairs());
  json doc = report_json(g, keys, rep);
  doc["method"] = std::string(method_name(cfg.method));
  doc["theta"] = cfg.theta;
  out << doc.dump(2) << '\n';
  return 0;
}

int cmd_generate(const std::string& spec_path, const std::string& out_prefix,
                 std::int64_t seed_override) {
  GeneratorSpec spec = spec_path.empty() ? GeneratorSpec{} : GeneratorSpec::parse_file(spec_path);
  if (seed_override >= 0) spec.seed = static_cast<std::uint64_t>(seed_override);
  GeneratedVersions v = generate_versions(spec);
  write_atomic(out_prefix + "1.nt", serialize_ntriples(v.v1));
  write_atomic(out_prefix + "2.nt", serialize_ntriples(v.v2));
  std::ostringstream truth;
  for (const auto& [s, t] : v.truth) truth << s << '\t' << t << '\n';
  write_atomic(out_prefix + "truth.tsv", truth.str());
  std::cerr << "wrote " << out_prefix << "1.nt (" << v.v1.triple_count() << " triples), "
            << out_prefix << "2.nt (" << v.v2.triple_count() << " triples), " << out_prefix
            << "truth.tsv (" << v.truth.size() << " pairs)\n";
  return 0;
}

int cmd_validate(const std::string& path) {
  TripleGraph g = parse_ntriples_file(path);
  std::vector<Violation> violations = g.validate();
  for (const auto& v : violations)
    std::cout << "node " << v.node << ": " << v.message << '\n';
  if (!violations.empty()) {
    std::cerr << violations.size() << " violation(s)\n";
    return 1;
  }
  std::cerr << "ok\n";
  return 0;
}

int cmd_stats(const std::string& path) {
  TripleGraph g = parse_ntriples_file(path);
  auto s = g.side_stats(Origin::Source);
  json doc{{"uris", s.uris}, {"literals", s.literals}, {"blanks", s.blanks}, {"edges", s.triples},
           {"nodes", g.node_count()}};
  std::cout << doc.dump(2) << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"rdfalign: align two versions of an RDF graph"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string source, target, truth_path, sweep_spec;
  std::string spec_path, out_prefix, validate_path, stats_path_arg;
  std::int64_t seed_override = -1;

  auto add_common = [&](CLI::App* cmd, bool with_method) {
    if (with_method)
      cmd->add_option("--method", opts.method,
                      "trivial|deblank|hybrid|bisim|overlap|edit-oracle");
    cmd->add_option("--theta", opts.theta, "similarity threshold");
    cmd->add_option("--epsilon", opts.epsilon, "weight stabilization tolerance");
    cmd->add_option("--prefix-mode", opts.prefix_mode, "paper|safe");
    cmd->add_option("--max-rounds", opts.max_rounds, "overlap round cap");
    cmd->add_option("--threads", opts.threads, "worker cap (default RDFALIGN_THREADS or 1)");
    cmd->add_option("--format", opts.format, "tsv|json")
        ->check(CLI::IsMember({"tsv", "json"}));
    cmd->add_option("--out", opts.out_path, "alignment output file (default stdout)");
    cmd->add_option("--stats", opts.stats_path, "stats output file (default stderr)");
    cmd->add_option("--cell-budget", opts.cell_budget, "edit-oracle matrix cell budget");
  };

  CLI::App* align_cmd = app.add_subcommand("align", "align two N-Triples files");
  align_cmd->add_option("source", source)->required();
  align_cmd->add_option("target", target)->required();
  add_common(align_cmd, true);
  align_cmd->add_option("--dump-partition", opts.dump_partition_path,
                        "write nodeKey\\tcolorId lines");

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate an alignment against ground truth");
  eval_cmd->add_option("source", source)->required();
  eval_cmd->add_option("target", target)->required();
  eval_cmd->add_option("--truth", truth_path, "ground truth TSV")->required();
  eval_cmd->add_option("--theta-sweep", sweep_spec, "lo:hi:step sweep of overlap thresholds");
  add_common(eval_cmd, true);

  CLI::App* gen_cmd = app.add_subcommand("generate", "generate synthetic graph versions");
  gen_cmd->add_option("--spec", spec_path, "generator key=value config");
  gen_cmd->add_option("--out-prefix", out_prefix, "output path prefix")->required();
  gen_cmd->add_option("--seed", seed_override, "override the spec seed");

  CLI::App* val_cmd = app.add_subcommand("validate", "check RDF conventions");
  val_cmd->add_option("file", validate_path)->required();

  CLI::App* stats_cmd = app.add_subcommand("stats", "node and edge counts");
  stats_cmd->add_option("file", stats_path_arg)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (align_cmd->parsed()) return cmd_align(source, target, opts);
    if (eval_cmd->parsed()) return cmd_eval(source, target, truth_path, opts, sweep_spec);
    if (gen_cmd->parsed()) return cmd_generate(spec_path, out_prefix, seed_override);
    if (val_cmd->parsed()) return cmd_validate(validate_path);
    if (stats_cmd->parsed()) return cmd_stats(stats_path_arg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const BudgetExceeded& e) {
    std::cerr << "oracle budget: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
