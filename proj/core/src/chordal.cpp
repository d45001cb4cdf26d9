#include "cliquemerge/chordal.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>

#include "cliquemerge/errors.hpp"

namespace cliquemerge {

namespace {

std::size_t idx(Vertex v) { return static_cast<std::size_t>(v - 1); }

EliminationOrdering minimum_degree(const SparsityGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  std::set<std::pair<std::size_t, Vertex>> by_degree;
  for (Vertex v = 1; v <= n; ++v) {
    auto nbrs = g.neighbors(v);
    adj[idx(v)].assign(nbrs.begin(), nbrs.end());
    by_degree.insert({adj[idx(v)].size(), v});
  }

  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<Vertex> merged;
  while (!by_degree.empty()) {
    const Vertex v = by_degree.begin()->second;
    by_degree.erase(by_degree.begin());
    order.push_back(v);

    // Eliminating v turns its neighborhood into a clique.
    const std::vector<Vertex> nbrs = std::move(adj[idx(v)]);
    adj[idx(v)].clear();
    for (Vertex u : nbrs) {
      auto& au = adj[idx(u)];
      by_degree.erase({au.size(), u});
      merged.clear();
      std::set_union(au.begin(), au.end(), nbrs.begin(), nbrs.end(),
                     std::back_inserter(merged));
      std::erase_if(merged, [&](Vertex w) { return w == u || w == v; });
      au.swap(merged);
      by_degree.insert({au.size(), u});
    }
  }
  return EliminationOrdering(std::move(order));
}

EliminationOrdering approximate_minimum_degree(const SparsityGraph& g) {
  const int n = g.num_vertices();
  if (n == 0) return EliminationOrdering();
  std::vector<Eigen::Triplet<double, int>> triplets;
  triplets.reserve(2 * g.num_edges() + static_cast<std::size_t>(n));
  for (Vertex v = 1; v <= n; ++v) triplets.emplace_back(v - 1, v - 1, 1.0);
  for (const Edge& e : g.edges()) {
    triplets.emplace_back(e.u - 1, e.v - 1, 1.0);
    triplets.emplace_back(e.v - 1, e.u - 1, 1.0);
  }
  Eigen::SparseMatrix<double, Eigen::ColMajor, int> pattern(n, n);
  pattern.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::AMDOrdering<int> amd;
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
  amd(pattern, perm);

  // perm.indices()(k) is the k-th vertex eliminated.
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = perm.indices()(k) + 1;
  return EliminationOrdering(std::move(order));
}

}  // namespace

EliminationOrdering::EliminationOrdering(std::vector<Vertex> order)
    : order_(std::move(order)), position_(order_.size(), -1) {
  const int n = static_cast<int>(order_.size());
  for (int k = 0; k < n; ++k) {
    const Vertex v = order_[static_cast<std::size_t>(k)];
    if (v < 1 || v > n || position_[idx(v)] >= 0) {
      throw InputError("elimination ordering is not a permutation of 1.." + std::to_string(n));
    }
    position_[idx(v)] = k;
  }
}

EliminationOrdering EliminationOrdering::natural(int n) {
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = k + 1;
  return EliminationOrdering(std::move(order));
}

OrderingHeuristic parse_ordering_heuristic(std::string_view tag) {
  if (tag == "natural") return OrderingHeuristic::kNatural;
  if (tag == "mindeg" || tag == "minimum-degree") return OrderingHeuristic::kMinimumDegree;
  if (tag == "amd") return OrderingHeuristic::kApproximateMinimumDegree;
  throw InputError("unknown ordering heuristic '" + std::string(tag) + "'");
}

std::string_view to_string(OrderingHeuristic h) {
  switch (h) {
    case OrderingHeuristic::kNatural: return "natural";
    case OrderingHeuristic::kMinimumDegree: return "mindeg";
    case OrderingHeuristic::kApproximateMinimumDegree: return "amd";
  }
  return "unknown";
}

EliminationOrdering maximum_cardinality_search(const SparsityGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> weight(static_cast<std::size_t>(n), 0);
  std::vector<bool> numbered(static_cast<std::size_t>(n), false);
  // (-weight, vertex): begin() is the heaviest, smallest vertex.
  std::set<std::pair<int, Vertex>> queue;
  for (Vertex v = 1; v <= n; ++v) queue.insert({0, v});

  std::vector<Vertex> visit;
  visit.reserve(static_cast<std::size_t>(n));
  while (!queue.empty()) {
    const Vertex v = queue.begin()->second;
    queue.erase(queue.begin());
    numbered[idx(v)] = true;
    visit.push_back(v);
    for (Vertex w : g.neighbors(v)) {
      if (numbered[idx(w)]) continue;
      int& wt = weight[idx(w)];
      queue.erase({-wt, w});
      ++wt;
      queue.insert({-wt, w});
    }
  }
  // Vertices are numbered n, n-1, ..., 1 in visit order; eliminate 1 first.
  std::reverse(visit.begin(), visit.end());
  return EliminationOrdering(std::move(visit));
}

EliminationOrdering fill_reducing_ordering(const SparsityGraph& g,
                                           OrderingHeuristic heuristic) {
  switch (heuristic) {
    case OrderingHeuristic::kNatural: return EliminationOrdering::natural(g.num_vertices());
    case OrderingHeuristic::kMinimumDegree: return minimum_degree(g);
    case OrderingHeuristic::kApproximateMinimumDegree: return approximate_minimum_degree(g);
  }
  throw InputError("unknown ordering heuristic");
}

SparsityGraph symbolic_elimination(const SparsityGraph& g, const EliminationOrdering& ord) {
  const int n = g.num_vertices();
  if (ord.size() != n) throw InputError("ordering size does not match graph");

  // Column structures of the Cholesky factor, in elimination positions.
  std::vector<std::vector<int>> structure(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    auto& s = structure[static_cast<std::size_t>(k)];
    for (Vertex w : g.neighbors(ord.at(k))) {
      const int pw = ord.position_of(w);
      if (pw > k) s.push_back(pw);
    }
    std::sort(s.begin(), s.end());
  }

  std::vector<Edge> edges;
  std::vector<int> merged;
  for (int k = 0; k < n; ++k) {
    const auto& s = structure[static_cast<std::size_t>(k)];
    if (s.empty()) continue;
    for (int pos : s) edges.push_back({ord.at(k), ord.at(pos)});
    // Everything below the first off-diagonal entry flows into its column.
    auto& parent = structure[static_cast<std::size_t>(s.front())];
    merged.clear();
    std::set_union(parent.begin(), parent.end(), s.begin() + 1, s.end(),
                   std::back_inserter(merged));
    parent.swap(merged);
  }
  return SparsityGraph(n, std::move(edges));
}

bool is_chordal(const SparsityGraph& g) {
  return symbolic_elimination(g, maximum_cardinality_search(g)).num_edges() == g.num_edges();
}

ChordalExtension chordal_extension(const SparsityGraph& g, OrderingHeuristic heuristic) {
  EliminationOrdering mcs = maximum_cardinality_search(g);
  SparsityGraph filled = symbolic_elimination(g, mcs);
  if (filled.num_edges() == g.num_edges()) {
    return ChordalExtension{g, std::move(mcs), 0};
  }
  EliminationOrdering ord = fill_reducing_ordering(g, heuristic);
  filled = symbolic_elimination(g, ord);
  const std::size_t fill = filled.num_edges() - g.num_edges();
  return ChordalExtension{std::move(filled), std::move(ord), fill};
}

CliqueSet maximal_cliques(const SparsityGraph& g, const EliminationOrdering& ord) {
  const int n = g.num_vertices();
  if (ord.size() != n) throw InputError("ordering size does not match graph");
  if (symbolic_elimination(g, ord).num_edges() != g.num_edges()) {
    throw PreconditionError("maximal_cliques: ordering is not a perfect elimination ordering");
  }

  // Candidate clique of v: v plus its later neighbors. It is non-maximal iff
  // some earlier u has v as its first later neighbor and exactly one more
  // later neighbor than v.
  std::vector<std::size_t> higher_count(static_cast<std::size_t>(n), 0);
  std::vector<int> first_higher(static_cast<std::size_t>(n), -1);
  for (int k = 0; k < n; ++k) {
    int first = n;
    std::size_t count = 0;
    for (Vertex w : g.neighbors(ord.at(k))) {
      const int pw = ord.position_of(w);
      if (pw > k) {
        ++count;
        first = std::min(first, pw);
      }
    }
    higher_count[static_cast<std::size_t>(k)] = count;
    if (count > 0) first_higher[static_cast<std::size_t>(k)] = first;
  }
  std::vector<bool> absorbed(static_cast<std::size_t>(n), false);
  for (int k = 0; k < n; ++k) {
    const int p = first_higher[static_cast<std::size_t>(k)];
    if (p >= 0 && higher_count[static_cast<std::size_t>(k)] ==
                      higher_count[static_cast<std::size_t>(p)] + 1) {
      absorbed[static_cast<std::size_t>(p)] = true;
    }
  }

  CliqueSet cs;
  cs.n = n;
  for (int k = 0; k < n; ++k) {
    if (absorbed[static_cast<std::size_t>(k)]) continue;
    const Vertex v = ord.at(k);
    VertexSet clique{v};
    for (Vertex w : g.neighbors(v)) {
      if (ord.position_of(w) > k) clique.push_back(w);
    }
    std::sort(clique.begin(), clique.end());
    cs.cliques.push_back(std::move(clique));
  }
  canonicalize(cs);
  return cs;
}

}  // namespace cliquemerge
