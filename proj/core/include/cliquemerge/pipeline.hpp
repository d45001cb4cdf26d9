#pragma once

#include <string_view>

#include "cliquemerge/chordal.hpp"
#include "cliquemerge/clique_graph.hpp"
#include "cliquemerge/decomp.hpp"
#include "cliquemerge/merge.hpp"
#include "cliquemerge/sdpa.hpp"
#include "cliquemerge/weights.hpp"

namespace cliquemerge {

enum class Strategy { kNone, kParentChild, kTraversal, kCliqueGraph };

// "none", "parent-child", "traversal", "clique-graph". Throws InputError.
Strategy parse_strategy(std::string_view tag);
std::string_view to_string(Strategy s);

struct StrategyConfig {
  Strategy strategy = Strategy::kCliqueGraph;
  ParentChildParams parent_child;
  TraversalParams traversal;
  WeightFunction weight = nominal_weight_function();
  std::string weight_label = "nominal";
};

struct StrategyOutcome {
  CliqueTree tree;
  MergeLog log;
};

/// Runs one merging strategy on an initial clique tree.
StrategyOutcome apply_strategy(const CliqueTree& initial, const StrategyConfig& cfg);

struct BlockDecomposition {
  int block = 0;
  SparsityGraph pattern;
  ChordalExtension extension;
  CliqueTree initial_tree;
  CliqueTree tree;
  MergeLog log;
  double merge_seconds = 0.0;
};

/// Aggregate pattern -> chordal extension -> cliques -> clique tree ->
/// merging strategy, for one PSD block.
BlockDecomposition decompose_block(const SdpProblem& p, int block,
                                   const StrategyConfig& cfg,
                                   OrderingHeuristic ordering = OrderingHeuristic::kMinimumDegree);

}  // namespace cliquemerge
