#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cliquemerge/calibration.hpp"
#include "cliquemerge/errors.hpp"
#include "cliquemerge/format.hpp"

namespace cliquemerge::cli {

namespace {

namespace fs = std::filesystem;

SdpProblem load_problem(const RunConfig& cfg, std::ostream& err) {
  ParseOptions opts;
  opts.lenient = cfg.lenient;
  opts.on_warning = [&err, &cfg](std::size_t line, std::string_view msg) {
    err << "warning: " << cfg.input << ": line " << line << ": " << msg << '\n';
  };
  return load_sdpa_file(cfg.input, opts);
}

std::vector<int> decomposable_blocks(const SdpProblem& p) {
  auto blocks = p.psd_blocks();
  if (blocks.empty()) throw ConfigError("problem has no PSD block to decompose");
  return blocks;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

fs::path output_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
  return dir;
}

std::string block_prefix(std::size_t block_count, int block) {
  return block_count > 1 ? "block=" + std::to_string(block) + " " : std::string();
}

void check_weighting(const RunConfig& cfg, const std::vector<Strategy>& strategies) {
  if (cfg.weighting != "nominal" && cfg.weighting != "estimated") {
    throw ConfigError("unknown weighting '" + cfg.weighting + "' (expected nominal or estimated)");
  }
  if (!cfg.weighting_given) return;
  for (Strategy s : strategies) {
    if (s == Strategy::kCliqueGraph) return;
  }
  throw ConfigError("--weighting applies only to the clique-graph strategy");
}

}  // namespace

CostModel stats_cost_model(const RunConfig& cfg) {
  if (cfg.cost_model_path.empty()) return CostModel::nominal();
  return load_cost_model(cfg.cost_model_path).model;
}

StrategyConfig make_strategy_config(const RunConfig& cfg, Strategy s) {
  StrategyConfig sc;
  sc.strategy = s;
  sc.parent_child = {cfg.t_fill, cfg.t_size};
  sc.traversal = {cfg.sigma};
  if (cfg.weighting == "estimated") {
    if (cfg.cost_model_path.empty()) {
      throw ConfigError("--weighting estimated requires --cost-model");
    }
    const CostModel m = load_cost_model(cfg.cost_model_path).model;
    sc.weight = estimated_weight_function(m);
    sc.weight_label = "estimated a=" + format_double(m.a) + " b=" + format_double(m.b);
  } else if (cfg.weighting == "nominal") {
    sc.weight = nominal_weight_function();
    sc.weight_label = "nominal";
  } else {
    throw ConfigError("unknown weighting '" + cfg.weighting + "' (expected nominal or estimated)");
  }
  return sc;
}

CostModel parse_synthetic(const std::string& text) {
  std::optional<double> a;
  std::optional<double> b;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--synthetic expects a=<x>,b=<y>");
    const std::string key = item.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--synthetic: bad number in '" + item + "'");
    }
    if (key == "a") {
      a = value;
    } else if (key == "b") {
      b = value;
    } else {
      throw ConfigError("--synthetic: unknown key '" + key + "'");
    }
  }
  if (!a || !b) throw ConfigError("--synthetic expects both a and b");
  return CostModel{*a, *b};
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SdpProblem p = load_problem(cfg, err);
  const OrderingHeuristic ordering = parse_ordering_heuristic(cfg.ordering);
  out << "problem " << cfg.input << ": m=" << p.m << " blocks=" << p.num_blocks() << '\n';
  for (int k = 1; k <= p.num_blocks(); ++k) {
    if (!p.is_psd_block(k)) {
      out << "block " << k << ": diagonal n=" << p.block_dimension(k) << " (passed through)\n";
      continue;
    }
    const SparsityGraph g = aggregate(problem_patterns(p, k));
    const ChordalExtension ext = chordal_extension(g, ordering);
    const CliqueSet cs = maximal_cliques(ext.graph, ext.ordering);
    std::size_t max_size = 0;
    for (const auto& c : cs.cliques) max_size = std::max(max_size, c.size());
    out << "block " << k << ": n=" << g.num_vertices() << " pattern_edges=" << g.num_edges()
        << " fill_edges=" << ext.fill_edges << " cliques=" << cs.size()
        << " max_clique=" << max_size << '\n';
  }
  return kExitOk;
}

int cmd_merge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Strategy s = parse_strategy(cfg.strategy);
  check_weighting(cfg, {s});
  const StrategyConfig sc = make_strategy_config(cfg, s);
  const CostModel model = stats_cost_model(cfg);
  const OrderingHeuristic ordering = parse_ordering_heuristic(cfg.ordering);
  const SdpProblem p = load_problem(cfg, err);
  const auto blocks = decomposable_blocks(p);

  const fs::path dir = output_dir(cfg);
  const std::string stem = stem_of(cfg.input);
  auto manifest = open_output(dir / (stem + ".manifest"));
  auto log = open_output(dir / (stem + ".mergelog"));
  auto stats = open_output(dir / (stem + ".stats"));

  for (int k : blocks) {
    const BlockDecomposition bd = decompose_block(p, k, sc, ordering);
    const DecompositionStats st = decomposition_stats(bd.tree, model, bd.extension.fill_edges);
    write_manifest(manifest, domain_decompose(p, bd.tree, k), st);
    MergeLog block_log = bd.log;
    if (blocks.size() > 1) block_log.header.insert(block_log.header.begin(), "block=" + std::to_string(k));
    write_merge_log(log, block_log);
    const std::string line = block_prefix(blocks.size(), k) + format_stats_line(st);
    stats << line << '\n';
    out << line << '\n';
  }
  if (!manifest || !log || !stats) throw IoError("failed writing outputs in '" + dir.string() + "'");
  return kExitOk;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Strategy s = parse_strategy(cfg.strategy);
  check_weighting(cfg, {s});
  const StrategyConfig sc = make_strategy_config(cfg, s);
  const CostModel model = stats_cost_model(cfg);
  const OrderingHeuristic ordering = parse_ordering_heuristic(cfg.ordering);
  const SdpProblem p = load_problem(cfg, err);
  const auto blocks = decomposable_blocks(p);

  std::ostringstream text;
  for (int k : blocks) {
    const BlockDecomposition bd = decompose_block(p, k, sc, ordering);
    const DecompositionStats st = decomposition_stats(bd.tree, model, bd.extension.fill_edges);
    write_manifest(text, domain_decompose(p, bd.tree, k), st);
  }
  if (cfg.output.empty()) {
    out << text.str();
  } else {
    auto file = open_output(cfg.output);
    file << text.str();
    if (!file) throw IoError("failed writing '" + cfg.output + "'");
  }
  return kExitOk;
}

std::vector<CompareRow> compare_rows(const RunConfig& cfg, std::ostream& err) {
  if (cfg.strategies.size() < 2) throw ConfigError("compare needs at least two strategies");
  std::vector<Strategy> strategies;
  for (const auto& tag : cfg.strategies) strategies.push_back(parse_strategy(tag));
  check_weighting(cfg, strategies);
  const CostModel model = stats_cost_model(cfg);
  const OrderingHeuristic ordering = parse_ordering_heuristic(cfg.ordering);
  const SdpProblem p = load_problem(cfg, err);
  const auto blocks = decomposable_blocks(p);

  std::vector<CompareRow> rows;
  for (Strategy s : strategies) {
    const StrategyConfig sc = make_strategy_config(cfg, s);
    for (int k : blocks) {
      const BlockDecomposition bd = decompose_block(p, k, sc, ordering);
      rows.push_back({std::string(to_string(s)), k,
                      decomposition_stats(bd.tree, model, bd.extension.fill_edges),
                      bd.merge_seconds});
    }
  }
  return rows;
}

void write_compare_table(std::ostream& out, const std::vector<CompareRow>& rows) {
  out << std::left << std::setw(14) << "strategy" << std::right << std::setw(6) << "block"
      << std::setw(9) << "cliques" << std::setw(12) << "max_clique" << std::setw(13)
      << "consistency" << std::setw(16) << "modeled_cost" << std::setw(15) << "merge_seconds"
      << '\n';
  for (const auto& r : rows) {
    std::ostringstream secs;
    secs << std::scientific << std::setprecision(3) << r.merge_seconds;
    out << std::left << std::setw(14) << r.strategy << std::right << std::setw(6) << r.block
        << std::setw(9) << r.stats.clique_count << std::setw(12) << r.stats.max_clique_size
        << std::setw(13) << r.stats.consistency_count << std::setw(16)
        << format_double(r.stats.modeled_cost) << std::setw(15) << secs.str() << '\n';
  }
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
  out << kCompareCsvHeader << '\n';
  out << "strategy,block,cliques,max_clique,consistency,modeled_cost,merge_seconds\n";
  for (const auto& r : rows) {
    out << r.strategy << ',' << r.block << ',' << r.stats.clique_count << ','
        << r.stats.max_clique_size << ',' << r.stats.consistency_count << ','
        << format_double(r.stats.modeled_cost) << ',' << format_double(r.merge_seconds) << '\n';
  }
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto rows = compare_rows(cfg, err);
  write_compare_table(out, rows);
  if (!cfg.output.empty()) {
    auto file = open_output(cfg.output);
    write_compare_csv(file, rows);
    if (!file) throw IoError("failed writing '" + cfg.output + "'");
  }
  return kExitOk;
}

int cmd_calibrate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<int> sizes = cfg.sizes;
  if (sizes.empty()) sizes.assign(std::begin(kDefaultCalibrationSizes), std::end(kDefaultCalibrationSizes));

  std::vector<TimingSample> samples;
  if (!cfg.synthetic.empty()) {
    samples = synthetic_samples(parse_synthetic(cfg.synthetic), sizes);
  } else {
    samples = measure_projection_times(sizes, cfg.repetitions, cfg.seed);
  }
  const CostModelFit fit = fit_cost_model(samples);
  if (fit.clamped) err << "warning: free fit gave a < 0; refit with a = 0\n";

  CostModelFile file;
  file.model = fit.model;
  file.fitted_at = current_utc_timestamp();
  file.sizes = sizes;
  file.residual = fit.residual;
  const std::string path = cfg.output.empty() ? "cost_model.txt" : cfg.output;
  save_cost_model(path, file);
  out << "a=" << format_double(fit.model.a) << " b=" << format_double(fit.model.b)
      << " residual=" << format_double(fit.residual) << '\n';
  out << "wrote " << path << '\n';
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Chordal decomposition and clique merging for sparse SDPs", "cliquemerge"};
  app.require_subcommand(1);

  auto add_input = [&cfg](CLI::App* sub) {
    sub->add_option("input", cfg.input, "SDPA sparse problem (.dat-s)")->required();
    sub->add_flag("--lenient", cfg.lenient, "Mirror lower-triangular entries instead of failing");
    sub->add_option("--ordering", cfg.ordering, "Fill-reducing ordering: natural, mindeg, amd")
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  };
  auto add_strategy_params = [&cfg](CLI::App* sub) {
    sub->add_option("--t-fill", cfg.t_fill, "Parent-child fill threshold")->capture_default_str();
    sub->add_option("--t-size", cfg.t_size, "Parent-child supernode size threshold")
        ->capture_default_str();
    sub->add_option("--sigma", cfg.sigma, "Traversal overlap threshold")->capture_default_str();
    sub->add_option("--weighting", cfg.weighting, "Clique-graph edge weights: nominal, estimated")
        ->capture_default_str();
    sub->add_option("--cost-model", cfg.cost_model_path, "Cost-model file from calibrate");
  };

  auto* analyze = app.add_subcommand("analyze", "Report pattern, fill and clique statistics");
  add_input(analyze);

  auto* merge = app.add_subcommand("merge", "Merge cliques and write manifest, log and stats");
  add_input(merge);
  add_strategy_params(merge);
  merge->add_option("--strategy", cfg.strategy, "none, parent-child, traversal, clique-graph")
      ->capture_default_str();
  merge->add_option("--out-dir", cfg.out_dir, "Output directory")->capture_default_str();

  auto* decompose = app.add_subcommand("decompose", "Write the decomposition manifest");
  add_input(decompose);
  add_strategy_params(decompose);
  decompose->add_option("--strategy", cfg.strategy, "none, parent-child, traversal, clique-graph")
      ->capture_default_str();
  decompose->add_option("--output", cfg.output, "Manifest path (default: stdout)");

  auto* compare = app.add_subcommand("compare", "Tabulate several strategies side by side");
  add_input(compare);
  add_strategy_params(compare);
  compare->add_option("--strategies", cfg.strategies, "Comma-separated strategy list")
      ->delimiter(',')
      ->required();
  compare->add_option("--output", cfg.output, "CSV path");

  auto* calibrate = app.add_subcommand("calibrate", "Fit the projection cost model");
  calibrate->add_option("--sizes", cfg.sizes, "Matrix sizes (comma-separated)")->delimiter(',');
  calibrate->add_option("--repetitions", cfg.repetitions, "Timed runs per size")
      ->capture_default_str();
  calibrate->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  calibrate->add_option("--synthetic", cfg.synthetic, "Fit noiseless samples of a=<x>,b=<y>");
  calibrate->add_option("--output", cfg.output, "Cost-model path (default: cost_model.txt)");

  std::vector<std::string> argv_storage{"cliquemerge"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    for (auto* sub : {merge, decompose, compare}) {
      if (sub->parsed() && sub->count("--weighting") > 0) cfg.weighting_given = true;
    }
    if (analyze->parsed()) return cmd_analyze(cfg, out, err);
    if (merge->parsed()) return cmd_merge(cfg, out, err);
    if (decompose->parsed()) return cmd_decompose(cfg, out, err);
    if (compare->parsed()) return cmd_compare(cfg, out, err);
    if (calibrate->parsed()) return cmd_calibrate(cfg, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << cfg.input << ": " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace cliquemerge::cli
