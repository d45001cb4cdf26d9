#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cliquemerge/vertex_set.hpp"

namespace cliquemerge {

/// Maximal cliques of a chordal pattern over vertices 1..n.
///
/// Sets produced by this library are in canonical order: descending size,
/// ties broken lexicographically. Clique indices refer to that order.
struct CliqueSet {
  int n = 0;
  std::vector<VertexSet> cliques;

  std::size_t size() const noexcept { return cliques.size(); }
};

// Sorts cliques into canonical order.
void canonicalize(CliqueSet& cs);

struct CliqueNode {
  VertexSet clique;
  VertexSet separator;  // clique ∩ parent clique; empty at the root
  VertexSet supernode;  // clique \ separator
  std::optional<int> parent;
  std::vector<int> children;
};

/// Rooted tree over cliques with separator/supernode partition per node.
///
/// Construction validates the tree shape (single root, every node reaches
/// it, consistent links) but not the running-intersection property; use
/// verify_rip() for that.
class CliqueTree {
 public:
  CliqueTree() = default;

  /// Builds the tree from a parent array. Children are ordered ascending by
  /// their smallest supernode vertex. Throws InputError on a malformed tree.
  static CliqueTree from_parents(int n, std::vector<VertexSet> cliques,
                                 const std::vector<std::optional<int>>& parents);

  int num_vertices() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  int root() const noexcept { return root_; }
  std::span<const CliqueNode> nodes() const noexcept { return nodes_; }
  const CliqueNode& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }

  std::vector<VertexSet> cliques() const;
  std::vector<std::optional<int>> parents() const;

  /// Preorder from the root, visiting children in stored order.
  std::vector<int> depth_first_order() const;

 private:
  int n_ = 0;
  int root_ = -1;
  std::vector<CliqueNode> nodes_;
};

/// Maximum-weight spanning tree over clique intersection sizes (Kruskal).
///
/// Cliques are put in canonical order first; ties among equal-weight edges
/// go to the lexicographically smallest (i, j) index pair. The largest
/// clique is the root. Components of a disconnected pattern hang off the
/// root with empty separators. Throws InputError on an empty set.
CliqueTree build_clique_tree(const CliqueSet& cs);

/// Exhaustive running-intersection check over all clique pairs: the
/// intersection of any two cliques lies in every clique on the tree path
/// between them. Also rejects nodes whose stored separator or supernode
/// disagree with the clique and its parent.
bool verify_rip(const CliqueTree& t);

/// Equivalent linear-time check: for every vertex, the nodes containing it
/// induce a connected subtree.
bool has_induced_subtrees(const CliqueTree& t);

namespace detail {

using IndexEdge = std::pair<int, int>;

// Kruskal over the given overlap edges with weight |Ci ∩ Cj|. `cliques`
// must already be in canonical order.
CliqueTree spanning_clique_tree(int n, std::vector<VertexSet> cliques,
                                std::vector<IndexEdge> overlap_edges);

// All pairs (i < j) of overlapping cliques.
std::vector<IndexEdge> overlapping_pairs(int n, std::span<const VertexSet> cliques);

}  // namespace detail

}  // namespace cliquemerge
