#include "cliquemerge/clique_tree.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "cliquemerge/errors.hpp"

namespace cliquemerge {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(uz(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[uz(x)] != x) {
      parent_[uz(x)] = parent_[uz(parent_[uz(x)])];
      x = parent_[uz(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[uz(std::max(a, b))] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

void canonicalize(CliqueSet& cs) {
  std::sort(cs.cliques.begin(), cs.cliques.end(), canonical_clique_less);
}

CliqueTree CliqueTree::from_parents(int n, std::vector<VertexSet> cliques,
                                    const std::vector<std::optional<int>>& parents) {
  const int p = static_cast<int>(cliques.size());
  if (p == 0) throw InputError("clique tree needs at least one clique");
  if (parents.size() != cliques.size()) {
    throw InputError("parent array length does not match clique count");
  }

  CliqueTree t;
  t.n_ = n;
  t.nodes_.resize(uz(p));
  for (int i = 0; i < p; ++i) {
    VertexSet c = make_vertex_set(std::move(cliques[uz(i)]));
    if (c.empty()) throw InputError("clique " + std::to_string(i) + " is empty");
    if (c.front() < 1 || c.back() > n) {
      throw InputError("clique " + std::to_string(i) + " has a vertex outside 1.." +
                       std::to_string(n));
    }
    t.nodes_[uz(i)].clique = std::move(c);
    const auto& par = parents[uz(i)];
    if (par) {
      if (*par < 0 || *par >= p || *par == i) {
        throw InputError("clique " + std::to_string(i) + " has an invalid parent");
      }
      t.nodes_[uz(i)].parent = *par;
    } else {
      if (t.root_ >= 0) throw InputError("clique tree has more than one root");
      t.root_ = i;
    }
  }
  if (t.root_ < 0) throw InputError("clique tree has no root");

  // Every node must reach the root in fewer than p steps.
  for (int i = 0; i < p; ++i) {
    int v = i;
    int steps = 0;
    while (t.nodes_[uz(v)].parent) {
      v = *t.nodes_[uz(v)].parent;
      if (++steps >= p) throw InputError("clique tree parent links form a cycle");
    }
  }

  for (int i = 0; i < p; ++i) {
    auto& node = t.nodes_[uz(i)];
    if (node.parent) {
      node.separator = set_intersection(node.clique, t.nodes_[uz(*node.parent)].clique);
      t.nodes_[uz(*node.parent)].children.push_back(i);
    }
    node.supernode = set_difference(node.clique, node.separator);
  }
  for (auto& node : t.nodes_) {
    std::sort(node.children.begin(), node.children.end(), [&](int a, int b) {
      const auto& na = t.nodes_[uz(a)];
      const auto& nb = t.nodes_[uz(b)];
      const Vertex ka = na.supernode.empty() ? na.clique.front() : na.supernode.front();
      const Vertex kb = nb.supernode.empty() ? nb.clique.front() : nb.supernode.front();
      return std::tie(ka, a) < std::tie(kb, b);
    });
  }
  return t;
}

std::vector<VertexSet> CliqueTree::cliques() const {
  std::vector<VertexSet> out;
  out.reserve(nodes_.size());
  for (const auto& node : nodes_) out.push_back(node.clique);
  return out;
}

std::vector<std::optional<int>> CliqueTree::parents() const {
  std::vector<std::optional<int>> out;
  out.reserve(nodes_.size());
  for (const auto& node : nodes_) out.push_back(node.parent);
  return out;
}

std::vector<int> CliqueTree::depth_first_order() const {
  std::vector<int> order;
  if (root_ < 0) return order;
  order.reserve(nodes_.size());
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto& ch = nodes_[uz(v)].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

namespace detail {

std::vector<IndexEdge> overlapping_pairs(int n, std::span<const VertexSet> cliques) {
  std::vector<std::vector<int>> containing(uz(n));
  for (int i = 0; i < static_cast<int>(cliques.size()); ++i) {
    for (Vertex v : cliques[uz(i)]) containing[uz(v - 1)].push_back(i);
  }
  std::vector<IndexEdge> pairs;
  for (const auto& list : containing) {
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) pairs.emplace_back(list[a], list[b]);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

CliqueTree spanning_clique_tree(int n, std::vector<VertexSet> cliques,
                                std::vector<IndexEdge> overlap_edges) {
  const int p = static_cast<int>(cliques.size());
  if (p == 0) throw InputError("cannot build a clique tree from an empty clique set");

  struct Weighted {
    std::size_t weight;
    int i;
    int j;
  };
  std::vector<Weighted> edges;
  edges.reserve(overlap_edges.size());
  for (auto [i, j] : overlap_edges) {
    if (i > j) std::swap(i, j);
    edges.push_back({intersection_size(cliques[uz(i)], cliques[uz(j)]), i, j});
  }
  std::sort(edges.begin(), edges.end(), [](const Weighted& a, const Weighted& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });

  DisjointSets sets(p);
  std::vector<std::vector<int>> adjacent(uz(p));
  for (const auto& e : edges) {
    if (e.weight == 0) continue;
    if (sets.unite(e.i, e.j)) {
      adjacent[uz(e.i)].push_back(e.j);
      adjacent[uz(e.j)].push_back(e.i);
    }
  }

  // Orient each component from its lowest index, which is its largest
  // clique in canonical order. Other components hang off clique 0.
  std::vector<std::optional<int>> parents(uz(p));
  std::vector<bool> seen(uz(p), false);
  std::vector<int> stack;
  for (int r = 0; r < p; ++r) {
    if (seen[uz(r)]) continue;
    if (r != 0) parents[uz(r)] = 0;
    seen[uz(r)] = true;
    stack.push_back(r);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adjacent[uz(v)]) {
        if (seen[uz(w)]) continue;
        seen[uz(w)] = true;
        parents[uz(w)] = v;
        stack.push_back(w);
      }
    }
  }
  return CliqueTree::from_parents(n, std::move(cliques), parents);
}

}  // namespace detail

CliqueTree build_clique_tree(const CliqueSet& cs) {
  if (cs.cliques.empty()) throw InputError("cannot build a clique tree from an empty clique set");
  CliqueSet sorted = cs;
  for (auto& c : sorted.cliques) c = make_vertex_set(std::move(c));
  canonicalize(sorted);
  auto pairs = detail::overlapping_pairs(sorted.n, sorted.cliques);
  return detail::spanning_clique_tree(sorted.n, std::move(sorted.cliques), std::move(pairs));
}

namespace {

bool partition_consistent(const CliqueTree& t) {
  for (const auto& node : t.nodes()) {
    const VertexSet expected =
        node.parent ? set_intersection(node.clique, t.node(*node.parent).clique) : VertexSet{};
    if (node.separator != expected) return false;
    if (node.supernode != set_difference(node.clique, node.separator)) return false;
  }
  return true;
}

}  // namespace

bool verify_rip(const CliqueTree& t) {
  const int p = t.size();
  if (p == 0 || !partition_consistent(t)) return false;

  std::vector<int> depth(uz(p), -1);
  for (int v : t.depth_first_order()) {
    const auto& par = t.node(v).parent;
    depth[uz(v)] = par ? depth[uz(*par)] + 1 : 0;
  }

  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      const VertexSet common = set_intersection(t.node(i).clique, t.node(j).clique);
      if (common.empty()) continue;
      int a = i;
      int b = j;
      while (a != b) {
        if (depth[uz(a)] >= depth[uz(b)]) {
          a = *t.node(a).parent;
          if (!is_subset(common, t.node(a).clique)) return false;
        } else {
          b = *t.node(b).parent;
          if (!is_subset(common, t.node(b).clique)) return false;
        }
      }
    }
  }
  return true;
}

bool has_induced_subtrees(const CliqueTree& t) {
  std::vector<int> tops(uz(t.num_vertices()), 0);
  for (const auto& node : t.nodes()) {
    const VertexSet* parent_clique = node.parent ? &t.node(*node.parent).clique : nullptr;
    for (Vertex v : node.clique) {
      if (parent_clique == nullptr || !contains(*parent_clique, v)) ++tops[uz(v - 1)];
    }
  }
  return std::all_of(tops.begin(), tops.end(), [](int c) { return c <= 1; });
}

}  // namespace cliquemerge
