#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace cliquemerge {

// Vertices are 1-based, matching matrix row/column indices.
using Vertex = int;

// Undirected edge stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Nonzero pattern of a symmetric n x n matrix as an undirected graph.
///
/// Immutable after construction. Edges are kept as a sorted list and as
/// per-vertex sorted neighbor lists.
class SparsityGraph {
 public:
  SparsityGraph() = default;
  explicit SparsityGraph(int n);

  // Accepts pairs in either orientation; drops self-loops and duplicates.
  // Throws InputError on an index outside 1..n.
  SparsityGraph(int n, std::vector<Edge> edges);

  /// Pattern of a matrix given by its (row, col) entry positions. Diagonal
  /// entries are ignored and symmetric duplicates collapse.
  static SparsityGraph from_entries(int n,
                                    std::span<const std::pair<int, int>> entries);

  int num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  bool has_edge(Vertex a, Vertex b) const;

  friend bool operator==(const SparsityGraph& a, const SparsityGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void check_vertex(Vertex v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;  // adjacency_[v - 1]
};

/// Union of patterns over the same vertex count (aggregate sparsity).
SparsityGraph aggregate(std::span<const SparsityGraph> patterns);

/// Connected components, each sorted; components ordered by smallest vertex.
std::vector<std::vector<Vertex>> connected_components(const SparsityGraph& g);

}  // namespace cliquemerge
