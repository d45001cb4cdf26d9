#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cliquemerge/clique_tree.hpp"

namespace cliquemerge {

// Unordered pair of clique indices, stored with first < second.
using CliqueEdge = std::pair<int, int>;

struct MergeResult {
  std::vector<VertexSet> cliques;
  std::vector<CliqueEdge> edges;
  VertexSet merged;
};

/// Merges the cliques at indices `to_merge` (0-based) into their union.
///
/// Survivors keep their relative order and the merged clique is appended.
/// Edges among merged cliques disappear; edges from a merged clique to a
/// survivor are redirected to the new clique, duplicates collapsed. Throws
/// InputError on an empty or out-of-range selection.
MergeResult merge_cliques(std::span<const VertexSet> cliques,
                          std::span<const CliqueEdge> edges,
                          std::span<const int> to_merge);

struct MergeRecord {
  std::vector<VertexSet> inputs;
  VertexSet result;
  double value = 0.0;  // edge weight, or the strategy's criterion value
};

/// Ordered record of the merges a strategy performed.
///
/// Text form: optional `# ...` header lines, then one line per merge
///   step <k>: merge [a,b] + [c,d] -> [a,b,c,d] weight=<w>
struct MergeLog {
  std::vector<std::string> header;
  std::vector<MergeRecord> records;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
};

void write_merge_log(std::ostream& out, const MergeLog& log);
std::string to_string(const MergeLog& log);
std::string format_vertex_set(const VertexSet& s);  // "[1,2,3]"

/// Applies the log to `initial`. Each record's inputs must be present and
/// its result must equal their union; throws InputError otherwise.
std::vector<VertexSet> replay_merge_log(std::vector<VertexSet> initial,
                                        const MergeLog& log);

struct ParentChildParams {
  int t_fill = 9;
  int t_size = 9;
};

// (|C_par| - |sep|) * (|C| - |sep|)
long long parent_child_fill(std::size_t parent_size, std::size_t separator_size,
                            std::size_t clique_size);

// True when either the fill or the supernode-size threshold is met.
bool parent_child_condition(std::size_t parent_size, std::size_t separator_size,
                            std::size_t clique_size, std::size_t supernode_size,
                            std::size_t parent_supernode_size,
                            const ParentChildParams& p);

struct TraversalParams {
  double sigma = 0.4;
};

/// min(|Ci ∩ Cj| / |Ci|, |Ci ∩ Cj| / |Cj|)
double overlap_ratio(const VertexSet& ci, const VertexSet& cj);

struct TreeMergeResult {
  CliqueTree tree;
  MergeLog log;
};

/// Depth-first (preorder) walk merging each clique into its parent when the
/// fill or supernode-size threshold holds. The merged clique keeps the
/// parent's place and adopts the child's children. Log values are the fill
/// term at merge time.
TreeMergeResult parent_child_merge(const CliqueTree& t, const ParentChildParams& p);

/// SparseCoLO-style traversal. At each clique, sibling children whose
/// overlap ratio reaches sigma are merged (together with the clique itself
/// when their intersection contains it) until no pair qualifies; then each
/// child qualifying against the clique is merged into it, again to a fixed
/// point. Log values are the overlap ratio at merge time.
TreeMergeResult traversal_merge(const CliqueTree& t, const TraversalParams& p);

}  // namespace cliquemerge
