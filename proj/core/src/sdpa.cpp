#include "cliquemerge/sdpa.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cliquemerge/errors.hpp"
#include "cliquemerge/format.hpp"

namespace cliquemerge {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

// Content lines with separators blanked out; comments and blank lines skipped.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string>& tokens) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      const auto first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (raw[first] == '*' || raw[first] == '"') continue;
      for (char& ch : raw) {
        if (ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == ',' || ch == '\r' ||
            ch == '\t') {
          ch = ' ';
        }
      }
      tokens.clear();
      std::istringstream ss(raw);
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (tokens.empty()) continue;
      return true;
    }
    return false;
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

bool to_int(const std::string& tok, int& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool to_real(std::string tok, double& out) {
  for (char& ch : tok) {
    if (ch == 'd' || ch == 'D') ch = 'e';
  }
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

int leading_int(LineReader& reader, std::vector<std::string>& tokens, const char* what) {
  if (!reader.next(tokens)) throw ParseError(reader.line(), std::string("missing ") + what);
  int v = 0;
  if (!to_int(tokens.front(), v)) {
    throw ParseError(reader.line(), std::string("expected ") + what + ", got '" +
                                        tokens.front() + "'");
  }
  return v;
}

// Reads `count` numbers that may span several lines; once enough numbers
// are read, the rest of the current line is ignored.
template <typename T, typename Convert>
std::vector<T> number_list(LineReader& reader, std::vector<std::string>& tokens, int count,
                           const char* what, Convert convert) {
  std::vector<T> out;
  out.reserve(uz(count));
  while (static_cast<int>(out.size()) < count) {
    if (!reader.next(tokens)) {
      throw ParseError(reader.line(), std::string("unexpected end of file in ") + what);
    }
    for (const auto& tok : tokens) {
      if (static_cast<int>(out.size()) == count) break;
      T v{};
      if (!convert(tok, v)) {
        throw ParseError(reader.line(), std::string("non-numeric token '") + tok + "' in " + what);
      }
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

bool SdpProblem::is_psd_block(int block) const {
  return block >= 1 && block <= num_blocks() && block_sizes[uz(block - 1)] > 0;
}

int SdpProblem::block_dimension(int block) const {
  if (block < 1 || block > num_blocks()) {
    throw InputError("block " + std::to_string(block) + " outside 1.." +
                     std::to_string(num_blocks()));
  }
  return std::abs(block_sizes[uz(block - 1)]);
}

std::vector<int> SdpProblem::psd_blocks() const {
  std::vector<int> out;
  for (int k = 1; k <= num_blocks(); ++k) {
    if (is_psd_block(k)) out.push_back(k);
  }
  return out;
}

SdpProblem parse_sdpa(std::istream& in, const ParseOptions& opts) {
  LineReader reader(in);
  std::vector<std::string> tokens;
  SdpProblem p;

  p.m = leading_int(reader, tokens, "number of constraints");
  if (p.m < 0) throw ParseError(reader.line(), "number of constraints is negative");
  const int nblocks = leading_int(reader, tokens, "number of blocks");
  if (nblocks < 1) throw ParseError(reader.line(), "number of blocks must be positive");
  p.block_sizes = number_list<int>(reader, tokens, nblocks, "block structure", to_int);
  for (int s : p.block_sizes) {
    if (s == 0) throw ParseError(reader.line(), "block size 0 in block structure");
  }
  p.b = number_list<double>(reader, tokens, p.m, "objective vector",
                            [](const std::string& t, double& v) { return to_real(t, v); });
  for (double v : p.b) {
    if (!std::isfinite(v)) throw ParseError(reader.line(), "non-finite objective entry");
  }

  while (reader.next(tokens)) {
    const std::size_t line = reader.line();
    if (tokens.size() != 5) {
      throw ParseError(line, "expected 'matno blkno i j value', got " +
                                 std::to_string(tokens.size()) + " fields");
    }
    SdpEntry e;
    if (!to_int(tokens[0], e.matrix) || !to_int(tokens[1], e.block) ||
        !to_int(tokens[2], e.row) || !to_int(tokens[3], e.col)) {
      throw ParseError(line, "non-integer index in entry");
    }
    if (!to_real(tokens[4], e.value)) {
      throw ParseError(line, "non-numeric value '" + tokens[4] + "'");
    }
    if (!std::isfinite(e.value)) throw ParseError(line, "non-finite value");
    if (e.matrix < 0 || e.matrix > p.m) {
      throw ParseError(line, "matrix number " + std::to_string(e.matrix) + " outside 0.." +
                                 std::to_string(p.m));
    }
    if (e.block < 1 || e.block > nblocks) {
      throw ParseError(line, "block number " + std::to_string(e.block) + " outside 1.." +
                                 std::to_string(nblocks));
    }
    const int dim = std::abs(p.block_sizes[uz(e.block - 1)]);
    if (e.row < 1 || e.row > dim || e.col < 1 || e.col > dim) {
      throw ParseError(line, "index (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                                 ") outside block of size " + std::to_string(dim));
    }
    if (e.row > e.col) {
      if (!opts.lenient) {
        throw ParseError(line, "lower-triangular entry (" + std::to_string(e.row) + "," +
                                   std::to_string(e.col) + "); use lenient mode to symmetrize");
      }
      std::swap(e.row, e.col);
      if (opts.on_warning) opts.on_warning(line, "lower-triangular entry mirrored to upper triangle");
    }
    if (p.block_sizes[uz(e.block - 1)] < 0 && e.row != e.col) {
      throw ParseError(line, "off-diagonal entry in diagonal block " + std::to_string(e.block));
    }
    p.entries.push_back(e);
  }
  return p;
}

SdpProblem parse_sdpa(std::string_view text, const ParseOptions& opts) {
  std::istringstream in{std::string(text)};
  return parse_sdpa(in, opts);
}

void write_sdpa(std::ostream& out, const SdpProblem& p) {
  out << p.m << " =mDIM\n";
  out << p.num_blocks() << " =nBLOCK\n";
  for (std::size_t k = 0; k < p.block_sizes.size(); ++k) {
    if (k > 0) out << ' ';
    out << p.block_sizes[k];
  }
  out << " =bLOCKsTRUCT\n";
  if (p.m > 0) {
    for (std::size_t i = 0; i < p.b.size(); ++i) {
      if (i > 0) out << ' ';
      out << format_double17(p.b[i]);
    }
    out << '\n';
  }
  for (const auto& e : p.entries) {
    out << e.matrix << ' ' << e.block << ' ' << e.row << ' ' << e.col << ' '
        << format_double17(e.value) << '\n';
  }
}

std::string write_sdpa(const SdpProblem& p) {
  std::ostringstream os;
  write_sdpa(os, p);
  return os.str();
}

SdpProblem load_sdpa_file(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_sdpa(in, opts);
}

void save_sdpa_file(const std::string& path, const SdpProblem& p) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_sdpa(out, p);
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<SparsityGraph> problem_patterns(const SdpProblem& p, int block) {
  if (block < 1 || block > p.num_blocks()) {
    throw InputError("block " + std::to_string(block) + " outside 1.." +
                     std::to_string(p.num_blocks()));
  }
  if (!p.is_psd_block(block)) {
    throw InputError("block " + std::to_string(block) + " is diagonal; nothing to decompose");
  }
  const int n = p.block_dimension(block);
  std::vector<std::vector<std::pair<int, int>>> positions(uz(p.m + 1));
  for (const auto& e : p.entries) {
    if (e.block == block) positions[uz(e.matrix)].emplace_back(e.row, e.col);
  }
  std::vector<SparsityGraph> out;
  out.reserve(positions.size());
  for (const auto& pos : positions) out.push_back(SparsityGraph::from_entries(n, pos));
  return out;
}

}  // namespace cliquemerge
