#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cliquemerge/merge.hpp"

namespace cliquemerge {

/// Estimated per-iteration saving from merging two cliques; positive means
/// the merge pays off. Must be a pure function of the two vertex sets.
using WeightFunction = std::function<double(const VertexSet&, const VertexSet&)>;

/// Clique intersection graph: one node per clique, an edge for every
/// overlapping pair, optionally weighted.
class CliqueGraph {
 public:
  CliqueGraph() = default;

  // Edges are normalized to (i < j) and sorted; throws InputError on bad
  // indices or self-loops.
  CliqueGraph(int n, std::vector<VertexSet> cliques, std::vector<CliqueEdge> edges);

  int num_vertices() const noexcept { return n_; }
  std::span<const VertexSet> cliques() const noexcept { return cliques_; }
  std::span<const CliqueEdge> edges() const noexcept { return edges_; }

  bool weighted() const noexcept { return !weights_.empty() || edges_.empty(); }
  // Parallel to edges(); empty until weights are applied.
  std::span<const double> weights() const noexcept { return weights_; }
  std::optional<double> weight(int i, int j) const;

  void apply_weights(const WeightFunction& fn);
  void set_weights(std::vector<double> weights);

 private:
  int n_ = 0;
  std::vector<VertexSet> cliques_;
  std::vector<CliqueEdge> edges_;
  std::vector<double> weights_;
};

/// Edges between exactly the overlapping clique pairs; no weights.
CliqueGraph build_clique_graph(const CliqueSet& cs);

struct GraphMergeResult {
  CliqueGraph graph;
  MergeLog log;
};

/// Greedy clique-graph merging.
///
/// Weights every edge with `weight_fn`, then repeatedly takes the heaviest
/// edge. A positive weight merges the pair and re-weights the edges of the
/// merged clique; otherwise the loop stops. Among equal weights the edge
/// whose pair of smallest member vertices is lexicographically least wins.
/// The returned graph keeps survivors in order followed by merged cliques in
/// merge order, with final weights attached.
GraphMergeResult clique_graph_merge(const CliqueGraph& cg, const WeightFunction& weight_fn);

/// Clique tree of a (merged) clique graph: re-weight edges by intersection
/// size and take a maximum-weight spanning tree, rooted at the largest
/// clique.
///
/// Pairwise merging of cliques that are not adjacent in any clique tree can
/// leave a clique set that admits no clique tree. In that case the merged
/// pattern is closed under chordal completion and the tree is built from the
/// completed cliques, so the result always satisfies the running
/// intersection property.
CliqueTree recompute_clique_tree(const CliqueGraph& cg);

/// True if some tree over `cliques` has the running-intersection property.
bool admits_clique_tree(int n, std::span<const VertexSet> cliques);

}  // namespace cliquemerge
