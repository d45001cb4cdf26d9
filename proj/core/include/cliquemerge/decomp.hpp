#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cliquemerge/clique_tree.hpp"
#include "cliquemerge/sdpa.hpp"
#include "cliquemerge/weights.hpp"

namespace cliquemerge {

/// Entry-selector T (|C| x n): row i has a single one in column C(i), the
/// i-th smallest clique vertex.
class EntrySelector {
 public:
  EntrySelector() = default;
  EntrySelector(VertexSet clique, int n);  // throws InputError

  const VertexSet& clique() const noexcept { return clique_; }
  int rows() const noexcept { return static_cast<int>(clique_.size()); }
  int cols() const noexcept { return n_; }

  Eigen::MatrixXd matrix() const;
  // T X T^T, the principal submatrix X[C, C].
  Eigen::MatrixXd extract(const Eigen::MatrixXd& x) const;
  // out += T^T S T
  void scatter_add(const Eigen::MatrixXd& s, Eigen::MatrixXd& out) const;

 private:
  VertexSet clique_;
  int n_ = 0;
};

EntrySelector entry_selector(const VertexSet& clique, int n);

// Block-local position of an entry. Indices are 0-based.
struct BlockEntry {
  int block = 0;
  int row = 0;
  int col = 0;

  friend bool operator==(const BlockEntry&, const BlockEntry&) = default;
};

// Ties one overlapping upper-triangular entry of a child block to the same
// global entry of its parent block.
struct ConsistencyConstraint {
  BlockEntry child;
  BlockEntry parent;
  Vertex global_row = 0;
  Vertex global_col = 0;
};

// A problem coefficient placed into the first clique block that covers it.
struct AssignedEntry {
  int matrix = 0;
  BlockEntry position;
  double value = 0.0;
};

struct DecomposedProblem {
  int source_block = 0;  // PSD block of the source problem (1-based)
  int n = 0;
  std::vector<VertexSet> cliques;
  std::vector<std::optional<int>> parents;  // clique tree links
  std::vector<EntrySelector> selectors;
  std::vector<ConsistencyConstraint> consistency;
  std::vector<AssignedEntry> assigned;

  std::size_t num_blocks() const noexcept { return cliques.size(); }
};

/// Domain-space decomposition of one PSD block over the cliques of `t`.
///
/// Overlap constraints follow clique-tree edges: every upper-triangular
/// entry of a non-root clique's separator is tied to its parent block.
/// Throws CoverageError if a nonzero of C or any A_i is not inside some
/// clique's principal submatrix.
DecomposedProblem domain_decompose(const SdpProblem& p, const CliqueTree& t, int block);

/// Sum of T_l^T S_l T_l. Throws InputError on count or size mismatch.
Eigen::MatrixXd range_assemble(std::span<const Eigen::MatrixXd> blocks,
                               std::span<const EntrySelector> selectors);

struct DecompositionStats {
  std::size_t clique_count = 0;
  std::size_t max_clique_size = 0;
  std::size_t sum_block_dims = 0;
  double modeled_cost = 0.0;
  std::size_t consistency_count = 0;
  std::size_t fill_edges = 0;
};

// consistency_count is the sum over non-root nodes of |sep|(|sep|+1)/2.
DecompositionStats decomposition_stats(const CliqueTree& t, const CostModel& m,
                                       std::size_t fill_edges);

// Sum of t(|C|) over the cliques.
double modeled_cost(std::span<const VertexSet> cliques, const CostModel& m);

// "cliques=<p> max_clique=<s> consistency=<c> modeled_cost=<t>"
std::string format_stats_line(const DecompositionStats& s);

inline constexpr const char* kManifestHeader = "cliquemerge-decomp v1";

/// Text manifest: header, block list, consistency records as
/// `(block_a, i_a, j_a) == (block_b, i_b, j_b)` (1-based), stats footer.
void write_manifest(std::ostream& out, const DecomposedProblem& d,
                    const DecompositionStats& s);

}  // namespace cliquemerge
