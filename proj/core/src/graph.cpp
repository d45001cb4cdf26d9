#include "cliquemerge/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cliquemerge/errors.hpp"

namespace cliquemerge {

SparsityGraph::SparsityGraph(int n) : SparsityGraph(n, {}) {}

SparsityGraph::SparsityGraph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) throw InputError("vertex count must be nonnegative");
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (Edge e : edges) {
    check_vertex(e.u);
    check_vertex(e.v);
    if (e.u == e.v) continue;
    if (e.u > e.v) std::swap(e.u, e.v);
    kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  edges_ = std::move(kept);

  adjacency_.assign(static_cast<std::size_t>(n), {});
  for (const Edge& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.u - 1)].push_back(e.v);
    adjacency_[static_cast<std::size_t>(e.v - 1)].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

SparsityGraph SparsityGraph::from_entries(int n,
                                          std::span<const std::pair<int, int>> entries) {
  std::vector<Edge> edges;
  edges.reserve(entries.size());
  for (auto [r, c] : entries) {
    if (r < 1 || r > n || c < 1 || c > n) {
      throw InputError("entry (" + std::to_string(r) + "," + std::to_string(c) +
                       ") outside 1.." + std::to_string(n));
    }
    edges.push_back({r, c});
  }
  return SparsityGraph(n, std::move(edges));
}

void SparsityGraph::check_vertex(Vertex v) const {
  if (v < 1 || v > n_) {
    throw InputError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n_));
  }
}

std::span<const Vertex> SparsityGraph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[static_cast<std::size_t>(v - 1)];
}

bool SparsityGraph::has_edge(Vertex a, Vertex b) const {
  if (a == b) return false;
  auto nbrs = neighbors(a);
  check_vertex(b);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

SparsityGraph aggregate(std::span<const SparsityGraph> patterns) {
  if (patterns.empty()) throw InputError("aggregate needs at least one pattern");
  const int n = patterns.front().num_vertices();
  std::vector<Edge> all;
  for (const auto& g : patterns) {
    if (g.num_vertices() != n) {
      throw InputError("aggregate: patterns have different vertex counts (" +
                       std::to_string(n) + " vs " + std::to_string(g.num_vertices()) + ")");
    }
    all.insert(all.end(), g.edges().begin(), g.edges().end());
  }
  return SparsityGraph(n, std::move(all));
}

std::vector<std::vector<Vertex>> connected_components(const SparsityGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Vertex>> components;
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= n; ++s) {
    if (label[static_cast<std::size_t>(s - 1)] >= 0) continue;
    const int id = static_cast<int>(components.size());
    components.emplace_back();
    label[static_cast<std::size_t>(s - 1)] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      components.back().push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (label[static_cast<std::size_t>(w - 1)] < 0) {
          label[static_cast<std::size_t>(w - 1)] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(components.back().begin(), components.back().end());
  }
  return components;
}

}  // namespace cliquemerge
