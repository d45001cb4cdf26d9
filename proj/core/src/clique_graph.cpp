#include "cliquemerge/clique_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

#include "cliquemerge/chordal.hpp"
#include "cliquemerge/errors.hpp"

namespace cliquemerge {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

// Tie-break key of an edge: the sorted pair of the two cliques' smallest
// vertices, then the cliques themselves.
bool edge_key_less(const VertexSet& a1, const VertexSet& a2, const VertexSet& b1,
                   const VertexSet& b2) {
  const auto ka = std::minmax(a1.front(), a2.front());
  const auto kb = std::minmax(b1.front(), b2.front());
  if (ka != kb) return ka < kb;
  const auto& a_lo = std::min(a1, a2);
  const auto& a_hi = std::max(a1, a2);
  const auto& b_lo = std::min(b1, b2);
  const auto& b_hi = std::max(b1, b2);
  return std::tie(a_lo, a_hi) < std::tie(b_lo, b_hi);
}

}  // namespace

CliqueGraph::CliqueGraph(int n, std::vector<VertexSet> cliques, std::vector<CliqueEdge> edges)
    : n_(n), cliques_(std::move(cliques)) {
  const int p = static_cast<int>(cliques_.size());
  for (auto [i, j] : edges) {
    if (i < 0 || i >= p || j < 0 || j >= p || i == j) {
      throw InputError("clique graph edge (" + std::to_string(i) + "," + std::to_string(j) +
                       ") is invalid");
    }
    edges_.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::optional<double> CliqueGraph::weight(int i, int j) const {
  if (weights_.empty()) return std::nullopt;
  const CliqueEdge key{std::min(i, j), std::max(i, j)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return weights_[static_cast<std::size_t>(it - edges_.begin())];
}

void CliqueGraph::apply_weights(const WeightFunction& fn) {
  weights_.clear();
  weights_.reserve(edges_.size());
  for (auto [i, j] : edges_) weights_.push_back(fn(cliques_[uz(i)], cliques_[uz(j)]));
}

void CliqueGraph::set_weights(std::vector<double> weights) {
  if (weights.size() != edges_.size()) {
    throw InputError("weight count does not match edge count");
  }
  weights_ = std::move(weights);
}

CliqueGraph build_clique_graph(const CliqueSet& cs) {
  auto pairs = detail::overlapping_pairs(cs.n, cs.cliques);
  return CliqueGraph(cs.n, cs.cliques, std::move(pairs));
}

GraphMergeResult clique_graph_merge(const CliqueGraph& cg, const WeightFunction& weight_fn) {
  // Slots are never reused: a merge kills two slots and appends one, so a
  // slot's clique never changes and heap entries only go stale by death.
  std::vector<VertexSet> slot(cg.cliques().begin(), cg.cliques().end());
  std::vector<bool> alive(slot.size(), true);
  std::vector<std::map<int, double>> adj(slot.size());

  struct Candidate {
    double weight;
    int a;
    int b;
  };
  auto lower_priority = [&](const Candidate& x, const Candidate& y) {
    if (x.weight != y.weight) return x.weight < y.weight;
    return edge_key_less(slot[uz(y.a)], slot[uz(y.b)], slot[uz(x.a)], slot[uz(x.b)]);
  };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(lower_priority)> heap(
      lower_priority);

  // Weight functions see the pair with the lexicographically smaller clique first.
  auto evaluate = [&](int a, int b) {
    return slot[uz(a)] < slot[uz(b)] ? weight_fn(slot[uz(a)], slot[uz(b)])
                                     : weight_fn(slot[uz(b)], slot[uz(a)]);
  };

  for (auto [i, j] : cg.edges()) {
    const double w = evaluate(i, j);
    adj[uz(i)][j] = w;
    adj[uz(j)][i] = w;
    heap.push({w, i, j});
  }

  MergeLog log;
  log.header.push_back("strategy=clique-graph value=edge-weight");
  while (!heap.empty()) {
    const Candidate top = heap.top();
    if (!alive[uz(top.a)] || !alive[uz(top.b)]) {
      heap.pop();
      continue;
    }
    if (!(top.weight > 0.0)) break;
    heap.pop();

    const int m = static_cast<int>(slot.size());
    MergeRecord rec;
    rec.inputs = {slot[uz(top.a)], slot[uz(top.b)]};
    if (rec.inputs[1] < rec.inputs[0]) std::swap(rec.inputs[0], rec.inputs[1]);
    rec.result = set_union(slot[uz(top.a)], slot[uz(top.b)]);
    rec.value = top.weight;

    slot.push_back(rec.result);
    alive.push_back(true);
    adj.emplace_back();
    alive[uz(top.a)] = false;
    alive[uz(top.b)] = false;

    std::vector<int> neighbors;
    for (int side : {top.a, top.b}) {
      for (const auto& [other, w] : adj[uz(side)]) {
        if (other != top.a && other != top.b) neighbors.push_back(other);
        adj[uz(other)].erase(side);
      }
      adj[uz(side)].clear();
    }
    std::sort(neighbors.begin(), neighbors.end());
    neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
    for (int other : neighbors) {
      const double w = evaluate(m, other);
      adj[uz(m)][other] = w;
      adj[uz(other)][m] = w;
      heap.push({w, m, other});
    }
    log.records.push_back(std::move(rec));
  }

  std::vector<int> remap(slot.size(), -1);
  std::vector<VertexSet> cliques;
  for (std::size_t s = 0; s < slot.size(); ++s) {
    if (!alive[s]) continue;
    remap[s] = static_cast<int>(cliques.size());
    cliques.push_back(slot[s]);
  }
  std::vector<CliqueEdge> edges;
  std::map<CliqueEdge, double> weight_of;
  for (std::size_t s = 0; s < slot.size(); ++s) {
    if (!alive[s]) continue;
    for (const auto& [other, w] : adj[s]) {
      const int a = remap[s];
      const int b = remap[uz(other)];
      if (a < b) {
        edges.emplace_back(a, b);
        weight_of[{a, b}] = w;
      }
    }
  }
  CliqueGraph out(cg.num_vertices(), std::move(cliques), std::move(edges));
  std::vector<double> weights;
  weights.reserve(out.edges().size());
  for (const auto& e : out.edges()) weights.push_back(weight_of.at(e));
  out.set_weights(std::move(weights));
  return {std::move(out), std::move(log)};
}

bool admits_clique_tree(int n, std::span<const VertexSet> cliques) {
  if (cliques.empty()) return true;
  std::vector<VertexSet> sorted(cliques.begin(), cliques.end());
  std::sort(sorted.begin(), sorted.end(), canonical_clique_less);
  auto pairs = detail::overlapping_pairs(n, sorted);
  // A maximum-weight spanning tree has the property iff any tree does.
  return has_induced_subtrees(detail::spanning_clique_tree(n, std::move(sorted), std::move(pairs)));
}

CliqueTree recompute_clique_tree(const CliqueGraph& cg) {
  const int p = static_cast<int>(cg.cliques().size());
  if (p == 0) throw InputError("cannot build a clique tree from an empty clique graph");

  std::vector<int> order(uz(p));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return canonical_clique_less(cg.cliques()[uz(a)], cg.cliques()[uz(b)]);
  });
  // Canonical order puts containers first. A clique inside an earlier kept
  // clique is absorbed and its edges move to the container.
  std::vector<int> rank(uz(p));
  std::vector<VertexSet> cliques;
  cliques.reserve(uz(p));
  for (int r = 0; r < p; ++r) {
    const VertexSet& c = cg.cliques()[uz(order[uz(r)])];
    const auto host = std::find_if(cliques.begin(), cliques.end(), [&](const VertexSet& k) {
      return std::includes(k.begin(), k.end(), c.begin(), c.end());
    });
    if (host != cliques.end()) {
      rank[uz(order[uz(r)])] = static_cast<int>(host - cliques.begin());
      continue;
    }
    rank[uz(order[uz(r)])] = static_cast<int>(cliques.size());
    cliques.push_back(c);
  }
  std::vector<detail::IndexEdge> edges;
  edges.reserve(cg.edges().size());
  for (auto [i, j] : cg.edges()) {
    const int a = rank[uz(i)];
    const int b = rank[uz(j)];
    if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
  }

  CliqueTree tree = detail::spanning_clique_tree(cg.num_vertices(), cliques, std::move(edges));
  if (has_induced_subtrees(tree)) return tree;

  // No clique tree exists for this set: complete the merged pattern to a
  // chordal graph and use its maximal cliques.
  std::vector<Edge> pattern;
  for (const auto& c : cliques) {
    for (std::size_t a = 0; a < c.size(); ++a) {
      for (std::size_t b = a + 1; b < c.size(); ++b) pattern.push_back({c[a], c[b]});
    }
  }
  const SparsityGraph merged(cg.num_vertices(), std::move(pattern));
  const ChordalExtension ext = chordal_extension(merged, OrderingHeuristic::kMinimumDegree);
  CliqueSet completed = maximal_cliques(ext.graph, ext.ordering);
  // Keep only cliques over vertices the merged set actually covers.
  VertexSet covered;
  for (const auto& c : cliques) covered = set_union(covered, c);
  std::erase_if(completed.cliques, [&](const VertexSet& c) {
    return c.size() == 1 && !contains(covered, c.front());
  });
  return build_clique_tree(completed);
}

}  // namespace cliquemerge
