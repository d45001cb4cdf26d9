#include "cliquemerge/merge.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>

#include "cliquemerge/errors.hpp"
#include "cliquemerge/format.hpp"

namespace cliquemerge {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

// Mutable copy of a clique tree for the tree-based strategies. Merged-away
// nodes stay in place, marked dead, so indices remain stable.
class WorkingTree {
 public:
  explicit WorkingTree(const CliqueTree& t) : n_(t.num_vertices()), root_(t.root()) {
    nodes_.reserve(uz(t.size()));
    for (const auto& node : t.nodes()) {
      nodes_.push_back({node.clique, node.parent, node.children, true});
    }
  }

  const VertexSet& clique(int i) const { return nodes_[uz(i)].clique; }
  std::optional<int> parent(int i) const { return nodes_[uz(i)].parent; }
  bool alive(int i) const { return nodes_[uz(i)].alive; }
  const std::vector<int>& children(int i) const { return nodes_[uz(i)].children; }

  std::size_t separator_size(int i) const {
    const auto& par = nodes_[uz(i)].parent;
    return par ? intersection_size(clique(i), clique(*par)) : 0;
  }
  std::size_t supernode_size(int i) const { return clique(i).size() - separator_size(i); }

  // Folds `from` into `into`. `from` leaves its parent's child list and its
  // own children (other than `into`) move under `into`.
  void absorb(int into, int from) {
    auto& src = nodes_[uz(from)];
    if (src.parent) {
      std::erase(nodes_[uz(*src.parent)].children, from);
    }
    auto& dst = nodes_[uz(into)];
    for (int c : src.children) {
      if (c == into) continue;
      nodes_[uz(c)].parent = into;
      dst.children.push_back(c);
    }
    src.children.clear();
    dst.clique = set_union(dst.clique, src.clique);
    src.alive = false;
    sort_children(into);
    if (dst.parent) sort_children(*dst.parent);
  }

  CliqueTree finish() const {
    std::vector<int> remap(nodes_.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].alive) remap[i] = next++;
    }
    std::vector<VertexSet> cliques;
    std::vector<std::optional<int>> parents;
    for (const auto& node : nodes_) {
      if (!node.alive) continue;
      cliques.push_back(node.clique);
      parents.push_back(node.parent ? std::optional<int>(remap[uz(*node.parent)])
                                    : std::nullopt);
    }
    return CliqueTree::from_parents(n_, std::move(cliques), parents);
  }

 private:
  struct Node {
    VertexSet clique;
    std::optional<int> parent;
    std::vector<int> children;
    bool alive = true;
  };

  // Children ascend by their smallest supernode vertex.
  void sort_children(int i) {
    auto& ch = nodes_[uz(i)].children;
    const VertexSet& pc = clique(i);
    auto key = [&](int c) {
      for (Vertex v : clique(c)) {
        if (!contains(pc, v)) return v;
      }
      return clique(c).front();
    };
    std::sort(ch.begin(), ch.end(), [&](int a, int b) {
      const Vertex ka = key(a);
      const Vertex kb = key(b);
      return ka != kb ? ka < kb : a < b;
    });
  }

  int n_;
  int root_;
  std::vector<Node> nodes_;
};

void push_children(const WorkingTree& w, int node, std::vector<int>& stack) {
  const auto& ch = w.children(node);
  for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
}

}  // namespace

MergeResult merge_cliques(std::span<const VertexSet> cliques,
                          std::span<const CliqueEdge> edges,
                          std::span<const int> to_merge) {
  const int p = static_cast<int>(cliques.size());
  if (to_merge.empty()) throw InputError("merge_cliques: no cliques selected");
  std::vector<bool> selected(uz(p), false);
  for (int i : to_merge) {
    if (i < 0 || i >= p) throw InputError("merge_cliques: clique index out of range");
    selected[uz(i)] = true;
  }

  MergeResult out;
  std::vector<int> remap(uz(p), -1);
  for (int i = 0; i < p; ++i) {
    if (selected[uz(i)]) {
      out.merged = set_union(out.merged, cliques[uz(i)]);
    } else {
      remap[uz(i)] = static_cast<int>(out.cliques.size());
      out.cliques.push_back(cliques[uz(i)]);
    }
  }
  const int merged_index = static_cast<int>(out.cliques.size());
  for (int i = 0; i < p; ++i) {
    if (selected[uz(i)]) remap[uz(i)] = merged_index;
  }
  out.cliques.push_back(out.merged);

  for (auto [a, b] : edges) {
    if (a < 0 || a >= p || b < 0 || b >= p) {
      throw InputError("merge_cliques: edge references a missing clique");
    }
    int ra = remap[uz(a)];
    int rb = remap[uz(b)];
    if (ra == rb) continue;
    if (ra > rb) std::swap(ra, rb);
    out.edges.emplace_back(ra, rb);
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

std::string format_vertex_set(const VertexSet& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(s[i]);
  }
  out += ']';
  return out;
}

void write_merge_log(std::ostream& out, const MergeLog& log) {
  for (const auto& line : log.header) out << "# " << line << '\n';
  std::size_t step = 1;
  for (const auto& rec : log.records) {
    out << "step " << step++ << ": merge ";
    for (std::size_t i = 0; i < rec.inputs.size(); ++i) {
      if (i > 0) out << " + ";
      out << format_vertex_set(rec.inputs[i]);
    }
    out << " -> " << format_vertex_set(rec.result) << " weight=" << format_double(rec.value)
        << '\n';
  }
}

std::string to_string(const MergeLog& log) {
  std::ostringstream os;
  write_merge_log(os, log);
  return os.str();
}

std::vector<VertexSet> replay_merge_log(std::vector<VertexSet> initial, const MergeLog& log) {
  std::size_t step = 1;
  for (const auto& rec : log.records) {
    VertexSet merged;
    for (const auto& in : rec.inputs) {
      auto it = std::find(initial.begin(), initial.end(), in);
      if (it == initial.end()) {
        throw InputError("replay step " + std::to_string(step) + ": clique " +
                         format_vertex_set(in) + " not present");
      }
      initial.erase(it);
      merged = set_union(merged, in);
    }
    if (merged != rec.result) {
      throw InputError("replay step " + std::to_string(step) +
                       ": result is not the union of the inputs");
    }
    initial.push_back(rec.result);
    ++step;
  }
  return initial;
}

long long parent_child_fill(std::size_t parent_size, std::size_t separator_size,
                            std::size_t clique_size) {
  return (static_cast<long long>(parent_size) - static_cast<long long>(separator_size)) *
         (static_cast<long long>(clique_size) - static_cast<long long>(separator_size));
}

bool parent_child_condition(std::size_t parent_size, std::size_t separator_size,
                            std::size_t clique_size, std::size_t supernode_size,
                            std::size_t parent_supernode_size, const ParentChildParams& p) {
  if (parent_child_fill(parent_size, separator_size, clique_size) <= p.t_fill) return true;
  return std::max(supernode_size, parent_supernode_size) <= static_cast<std::size_t>(p.t_size);
}

double overlap_ratio(const VertexSet& ci, const VertexSet& cj) {
  if (ci.empty() || cj.empty()) return 0.0;
  const double common = static_cast<double>(intersection_size(ci, cj));
  return std::min(common / static_cast<double>(ci.size()),
                  common / static_cast<double>(cj.size()));
}

TreeMergeResult parent_child_merge(const CliqueTree& t, const ParentChildParams& p) {
  if (p.t_fill < 0 || p.t_size < 0) {
    throw InputError("parent-child thresholds must be nonnegative");
  }
  WorkingTree w(t);
  MergeLog log;
  log.header.push_back("strategy=parent-child t_fill=" + std::to_string(p.t_fill) +
                       " t_size=" + std::to_string(p.t_size) + " value=fill");

  std::vector<int> stack{t.root()};
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    if (!w.alive(node)) continue;
    if (const auto par = w.parent(node)) {
      const std::size_t sep = w.separator_size(node);
      const std::size_t size = w.clique(node).size();
      const std::size_t par_size = w.clique(*par).size();
      if (parent_child_condition(par_size, sep, size, size - sep, w.supernode_size(*par), p)) {
        MergeRecord rec;
        rec.inputs = {w.clique(node), w.clique(*par)};
        rec.value = static_cast<double>(parent_child_fill(par_size, sep, size));
        const std::vector<int> moved = w.children(node);
        w.absorb(*par, node);
        rec.result = w.clique(*par);
        log.records.push_back(std::move(rec));
        // The adopted children are still to be visited, in the parent's order.
        std::vector<int> ordered;
        for (int c : w.children(*par)) {
          if (std::find(moved.begin(), moved.end(), c) != moved.end()) ordered.push_back(c);
        }
        for (auto it = ordered.rbegin(); it != ordered.rend(); ++it) stack.push_back(*it);
        continue;
      }
    }
    push_children(w, node, stack);
  }
  return {w.finish(), std::move(log)};
}

TreeMergeResult traversal_merge(const CliqueTree& t, const TraversalParams& p) {
  if (!(p.sigma > 0.0 && p.sigma <= 1.0)) {
    throw InputError("traversal sigma must lie in (0, 1]");
  }
  WorkingTree w(t);
  MergeLog log;
  log.header.push_back("strategy=traversal sigma=" + format_double(p.sigma) +
                       " step1=fixed-point step2=fixed-point value=overlap-ratio");

  std::vector<int> stack{t.root()};
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    if (!w.alive(node)) continue;

    // Step 1: sibling pairs among the children, repeated to a fixed point.
    for (bool merged = true; merged;) {
      merged = false;
      const std::vector<int> ch = w.children(node);
      for (std::size_t a = 0; a < ch.size() && !merged; ++a) {
        for (std::size_t b = a + 1; b < ch.size() && !merged; ++b) {
          const int i = ch[a];
          const int j = ch[b];
          const double ratio = overlap_ratio(w.clique(i), w.clique(j));
          if (ratio < p.sigma) continue;
          MergeRecord rec;
          rec.value = ratio;
          if (is_subset(w.clique(node), set_intersection(w.clique(i), w.clique(j)))) {
            rec.inputs = {w.clique(i), w.clique(j), w.clique(node)};
            w.absorb(node, i);
            w.absorb(node, j);
            rec.result = w.clique(node);
          } else {
            rec.inputs = {w.clique(i), w.clique(j)};
            w.absorb(i, j);
            rec.result = w.clique(i);
          }
          log.records.push_back(std::move(rec));
          // The merged child may now contain the clique itself.
          if (w.alive(i) && is_subset(w.clique(node), w.clique(i))) {
            MergeRecord up;
            up.value = overlap_ratio(w.clique(i), w.clique(node));
            up.inputs = {w.clique(i), w.clique(node)};
            w.absorb(node, i);
            up.result = w.clique(node);
            log.records.push_back(std::move(up));
          }
          merged = true;
        }
      }
    }

    // Step 2: children against the clique itself.
    for (bool merged = true; merged;) {
      merged = false;
      for (int c : w.children(node)) {
        const double ratio = overlap_ratio(w.clique(c), w.clique(node));
        if (ratio < p.sigma) continue;
        MergeRecord rec;
        rec.value = ratio;
        rec.inputs = {w.clique(c), w.clique(node)};
        w.absorb(node, c);
        rec.result = w.clique(node);
        log.records.push_back(std::move(rec));
        merged = true;
        break;
      }
    }

    push_children(w, node, stack);
  }
  return {w.finish(), std::move(log)};
}

}  // namespace cliquemerge
