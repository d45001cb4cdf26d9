#include "cliquemerge/pipeline.hpp"

#include <chrono>
#include <string>

#include "cliquemerge/errors.hpp"

namespace cliquemerge {

Strategy parse_strategy(std::string_view tag) {
  if (tag == "none") return Strategy::kNone;
  if (tag == "parent-child") return Strategy::kParentChild;
  if (tag == "traversal") return Strategy::kTraversal;
  if (tag == "clique-graph") return Strategy::kCliqueGraph;
  throw InputError("unknown strategy '" + std::string(tag) +
                   "' (expected none, parent-child, traversal or clique-graph)");
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kNone:
      return "none";
    case Strategy::kParentChild:
      return "parent-child";
    case Strategy::kTraversal:
      return "traversal";
    case Strategy::kCliqueGraph:
      return "clique-graph";
  }
  return "unknown";
}

StrategyOutcome apply_strategy(const CliqueTree& initial, const StrategyConfig& cfg) {
  switch (cfg.strategy) {
    case Strategy::kNone: {
      MergeLog log;
      log.header.push_back("strategy=none");
      return {initial, std::move(log)};
    }
    case Strategy::kParentChild: {
      auto r = parent_child_merge(initial, cfg.parent_child);
      return {std::move(r.tree), std::move(r.log)};
    }
    case Strategy::kTraversal: {
      auto r = traversal_merge(initial, cfg.traversal);
      return {std::move(r.tree), std::move(r.log)};
    }
    case Strategy::kCliqueGraph: {
      if (!cfg.weight) throw InputError("clique-graph strategy needs a weight function");
      const CliqueSet cs{initial.num_vertices(), initial.cliques()};
      auto r = clique_graph_merge(build_clique_graph(cs), cfg.weight);
      r.log.header.push_back("weighting=" + cfg.weight_label);
      return {recompute_clique_tree(r.graph), std::move(r.log)};
    }
  }
  throw InputError("unknown strategy");
}

BlockDecomposition decompose_block(const SdpProblem& p, int block, const StrategyConfig& cfg,
                                   OrderingHeuristic ordering) {
  BlockDecomposition out;
  out.block = block;
  const auto patterns = problem_patterns(p, block);
  out.pattern = aggregate(patterns);
  out.extension = chordal_extension(out.pattern, ordering);
  out.initial_tree = build_clique_tree(maximal_cliques(out.extension.graph, out.extension.ordering));

  const auto start = std::chrono::steady_clock::now();
  auto outcome = apply_strategy(out.initial_tree, cfg);
  const auto stop = std::chrono::steady_clock::now();
  out.merge_seconds = std::chrono::duration<double>(stop - start).count();
  out.tree = std::move(outcome.tree);
  out.log = std::move(outcome.log);
  return out;
}

}  // namespace cliquemerge
