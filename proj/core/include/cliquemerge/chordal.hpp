#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "cliquemerge/clique_tree.hpp"
#include "cliquemerge/graph.hpp"

namespace cliquemerge {

/// Order in which vertices are eliminated. Position k (0-based) holds the
/// k-th vertex to eliminate.
class EliminationOrdering {
 public:
  EliminationOrdering() = default;

  // Throws InputError unless `order` is a permutation of 1..n.
  explicit EliminationOrdering(std::vector<Vertex> order);

  static EliminationOrdering natural(int n);

  int size() const noexcept { return static_cast<int>(order_.size()); }
  Vertex at(int position) const { return order_.at(static_cast<std::size_t>(position)); }
  int position_of(Vertex v) const { return position_.at(static_cast<std::size_t>(v - 1)); }
  std::span<const Vertex> vertices() const noexcept { return order_; }

  friend bool operator==(const EliminationOrdering&, const EliminationOrdering&) = default;

 private:
  std::vector<Vertex> order_;
  std::vector<int> position_;
};

enum class OrderingHeuristic {
  kNatural,
  kMinimumDegree,
  kApproximateMinimumDegree,
};

// Accepts "natural", "mindeg" / "minimum-degree", "amd". Throws InputError.
OrderingHeuristic parse_ordering_heuristic(std::string_view tag);
std::string_view to_string(OrderingHeuristic h);

/// Maximum cardinality search. For a chordal graph the result is a perfect
/// elimination ordering. Ties go to the smallest vertex.
EliminationOrdering maximum_cardinality_search(const SparsityGraph& g);

EliminationOrdering fill_reducing_ordering(const SparsityGraph& g,
                                           OrderingHeuristic heuristic);

/// Filled graph of symbolic Cholesky factorization in the given order.
SparsityGraph symbolic_elimination(const SparsityGraph& g,
                                   const EliminationOrdering& ord);

bool is_chordal(const SparsityGraph& g);

struct ChordalExtension {
  SparsityGraph graph;
  EliminationOrdering ordering;  // perfect elimination ordering for `graph`
  std::size_t fill_edges = 0;
};

/// Chordal supergraph from a fill-reducing ordering plus symbolic
/// factorization. A graph that is already chordal is returned unchanged with
/// its MCS ordering, whatever the heuristic.
ChordalExtension chordal_extension(const SparsityGraph& g,
                                   OrderingHeuristic heuristic);

/// Maximal cliques of a chordal graph from a perfect elimination ordering,
/// in canonical order. Isolated vertices give singleton cliques. Throws
/// PreconditionError when `ord` is not a perfect elimination ordering.
CliqueSet maximal_cliques(const SparsityGraph& g, const EliminationOrdering& ord);

}  // namespace cliquemerge
