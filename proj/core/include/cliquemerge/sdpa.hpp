#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cliquemerge/graph.hpp"

namespace cliquemerge {

// One coefficient as it appears in an SDPA file. All indices are as in the
// file: matrix 0 is C, blocks and rows/columns are 1-based.
struct SdpEntry {
  int matrix = 0;
  int block = 1;
  int row = 1;
  int col = 1;
  double value = 0.0;

  friend bool operator==(const SdpEntry&, const SdpEntry&) = default;
};

/// Primal SDP data in SDPA sparse form.
struct SdpProblem {
  int m = 0;
  std::vector<int> block_sizes;  // negative: diagonal block of that size
  std::vector<double> b;         // length m
  std::vector<SdpEntry> entries;

  int num_blocks() const noexcept { return static_cast<int>(block_sizes.size()); }
  bool is_psd_block(int block) const;
  int block_dimension(int block) const;  // |size|
  std::vector<int> psd_blocks() const;

  friend bool operator==(const SdpProblem&, const SdpProblem&) = default;
};

struct ParseOptions {
  // Accept row > col by swapping the indices (one warning per entry).
  bool lenient = false;
  std::function<void(std::size_t line, std::string_view message)> on_warning;
};

/// Reads SDPA sparse format: m, block count, block sizes, the m-vector,
/// then `matno blkno i j value` lines. Lines starting with '*' or '"' are
/// comments; `{}(),` are treated as whitespace; trailing text after header
/// numbers is ignored. Throws ParseError with the offending line.
SdpProblem parse_sdpa(std::istream& in, const ParseOptions& opts = {});
SdpProblem parse_sdpa(std::string_view text, const ParseOptions& opts = {});

/// Canonical SDPA text; values carry 17 significant digits so that
/// parse_sdpa(write_sdpa(p)) == p.
void write_sdpa(std::ostream& out, const SdpProblem& p);
std::string write_sdpa(const SdpProblem& p);

SdpProblem load_sdpa_file(const std::string& path, const ParseOptions& opts = {});
void save_sdpa_file(const std::string& path, const SdpProblem& p);

/// One pattern per matrix (C first, then A_1..A_m) restricted to a PSD
/// block. Throws InputError for a diagonal or out-of-range block.
std::vector<SparsityGraph> problem_patterns(const SdpProblem& p, int block);

}  // namespace cliquemerge
