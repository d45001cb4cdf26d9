#include "cliquemerge/decomp.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "cliquemerge/errors.hpp"
#include "cliquemerge/format.hpp"
#include "cliquemerge/merge.hpp"

namespace cliquemerge {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

// 0-based position of v in the sorted clique, or -1.
int local_index(const VertexSet& clique, Vertex v) {
  auto it = std::lower_bound(clique.begin(), clique.end(), v);
  if (it == clique.end() || *it != v) return -1;
  return static_cast<int>(it - clique.begin());
}

}  // namespace

EntrySelector::EntrySelector(VertexSet clique, int n) : clique_(std::move(clique)), n_(n) {
  if (n < 0) throw InputError("negative ambient dimension");
  std::sort(clique_.begin(), clique_.end());
  if (std::adjacent_find(clique_.begin(), clique_.end()) != clique_.end()) {
    throw InputError("clique has repeated vertices");
  }
  for (Vertex v : clique_) {
    if (v < 1 || v > n) {
      throw InputError("clique vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
    }
  }
}

Eigen::MatrixXd EntrySelector::matrix() const {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(rows(), cols());
  for (int i = 0; i < rows(); ++i) t(i, clique_[uz(i)] - 1) = 1.0;
  return t;
}

Eigen::MatrixXd EntrySelector::extract(const Eigen::MatrixXd& x) const {
  if (x.rows() != n_ || x.cols() != n_) {
    throw InputError("matrix is not " + std::to_string(n_) + "x" + std::to_string(n_));
  }
  Eigen::MatrixXd out(rows(), rows());
  for (int i = 0; i < rows(); ++i) {
    for (int j = 0; j < rows(); ++j) out(i, j) = x(clique_[uz(i)] - 1, clique_[uz(j)] - 1);
  }
  return out;
}

void EntrySelector::scatter_add(const Eigen::MatrixXd& s, Eigen::MatrixXd& out) const {
  if (s.rows() != rows() || s.cols() != rows()) {
    throw InputError("block is not " + std::to_string(rows()) + "x" + std::to_string(rows()));
  }
  if (out.rows() != n_ || out.cols() != n_) {
    throw InputError("target is not " + std::to_string(n_) + "x" + std::to_string(n_));
  }
  for (int i = 0; i < rows(); ++i) {
    for (int j = 0; j < rows(); ++j) out(clique_[uz(i)] - 1, clique_[uz(j)] - 1) += s(i, j);
  }
}

EntrySelector entry_selector(const VertexSet& clique, int n) { return EntrySelector(clique, n); }

DecomposedProblem domain_decompose(const SdpProblem& p, const CliqueTree& t, int block) {
  if (!p.is_psd_block(block)) {
    throw InputError("block " + std::to_string(block) + " is not a PSD block");
  }
  const int n = p.block_dimension(block);
  if (t.num_vertices() != n) {
    throw InputError("clique tree is over " + std::to_string(t.num_vertices()) +
                     " vertices, block has " + std::to_string(n));
  }

  DecomposedProblem d;
  d.source_block = block;
  d.n = n;
  d.cliques = t.cliques();
  d.parents = t.parents();
  d.selectors.reserve(d.cliques.size());
  for (const auto& c : d.cliques) d.selectors.emplace_back(c, n);

  for (int l : t.depth_first_order()) {
    const CliqueNode& node = t.node(l);
    if (!node.parent) continue;
    const VertexSet& parent = t.node(*node.parent).clique;
    const VertexSet& sep = node.separator;
    for (std::size_t a = 0; a < sep.size(); ++a) {
      for (std::size_t b = a; b < sep.size(); ++b) {
        ConsistencyConstraint cc;
        cc.child = {l, local_index(node.clique, sep[a]), local_index(node.clique, sep[b])};
        cc.parent = {*node.parent, local_index(parent, sep[a]), local_index(parent, sep[b])};
        cc.global_row = sep[a];
        cc.global_col = sep[b];
        d.consistency.push_back(cc);
      }
    }
  }

  for (const auto& e : p.entries) {
    if (e.block != block) continue;
    bool placed = false;
    for (std::size_t l = 0; l < d.cliques.size() && !placed; ++l) {
      const int i = local_index(d.cliques[l], e.row);
      const int j = local_index(d.cliques[l], e.col);
      if (i < 0 || j < 0) continue;
      d.assigned.push_back({e.matrix, {static_cast<int>(l), i, j}, e.value});
      placed = true;
    }
    if (!placed) {
      throw CoverageError("entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                          ") of matrix " + std::to_string(e.matrix) +
                          " is not covered by any clique");
    }
  }
  return d;
}

Eigen::MatrixXd range_assemble(std::span<const Eigen::MatrixXd> blocks,
                               std::span<const EntrySelector> selectors) {
  if (blocks.size() != selectors.size()) {
    throw InputError(std::to_string(blocks.size()) + " blocks for " +
                     std::to_string(selectors.size()) + " selectors");
  }
  if (selectors.empty()) return Eigen::MatrixXd(0, 0);
  const int n = selectors.front().cols();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    if (selectors[l].cols() != n) throw InputError("selectors disagree on dimension");
    selectors[l].scatter_add(blocks[l], out);
  }
  return out;
}

double modeled_cost(std::span<const VertexSet> cliques, const CostModel& m) {
  double total = 0.0;
  for (const auto& c : cliques) total += m.projection_time(static_cast<double>(c.size()));
  return total;
}

DecompositionStats decomposition_stats(const CliqueTree& t, const CostModel& m,
                                       std::size_t fill_edges) {
  DecompositionStats s;
  s.clique_count = static_cast<std::size_t>(t.size());
  s.fill_edges = fill_edges;
  for (const auto& node : t.nodes()) {
    s.max_clique_size = std::max(s.max_clique_size, node.clique.size());
    s.sum_block_dims += node.clique.size();
    s.modeled_cost += m.projection_time(static_cast<double>(node.clique.size()));
    const std::size_t k = node.separator.size();
    if (node.parent) s.consistency_count += k * (k + 1) / 2;
  }
  return s;
}

std::string format_stats_line(const DecompositionStats& s) {
  std::ostringstream os;
  os << "cliques=" << s.clique_count << " max_clique=" << s.max_clique_size
     << " consistency=" << s.consistency_count << " modeled_cost=" << format_double(s.modeled_cost);
  return os.str();
}

void write_manifest(std::ostream& out, const DecomposedProblem& d, const DecompositionStats& s) {
  out << kManifestHeader << '\n';
  out << "# consistency=tree-edges indices=1-based\n";
  out << "source_block " << d.source_block << '\n';
  out << "dimension " << d.n << '\n';
  out << "blocks " << d.cliques.size() << '\n';
  for (std::size_t l = 0; l < d.cliques.size(); ++l) {
    out << "block " << l + 1 << " size " << d.cliques[l].size() << " parent ";
    if (d.parents[l]) {
      out << *d.parents[l] + 1;
    } else {
      out << '-';
    }
    out << " vertices " << format_vertex_set(d.cliques[l]) << '\n';
  }
  out << "consistency " << d.consistency.size() << '\n';
  for (const auto& c : d.consistency) {
    out << '(' << c.child.block + 1 << ", " << c.child.row + 1 << ", " << c.child.col + 1
        << ") == (" << c.parent.block + 1 << ", " << c.parent.row + 1 << ", "
        << c.parent.col + 1 << ")\n";
  }
  out << "stats " << format_stats_line(s) << " sum_block_dims=" << s.sum_block_dims
      << " fill_edges=" << s.fill_edges << '\n';
}

}  // namespace cliquemerge
