#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliquemerge/pipeline.hpp"

namespace cliquemerge::cli {

// Inconsistent or missing command-line configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;

inline constexpr const char* kCompareCsvHeader = "# cliquemerge-compare v1";

struct RunConfig {
  std::string input;
  std::string strategy = "clique-graph";
  std::vector<std::string> strategies;
  std::string weighting = "nominal";
  bool weighting_given = false;
  int t_fill = 9;
  int t_size = 9;
  double sigma = 0.4;
  std::string cost_model_path;
  std::string out_dir = ".";
  std::string output;
  std::string ordering = "mindeg";
  bool lenient = false;
  std::uint64_t seed = 0;
  std::string synthetic;  // "a=<x>,b=<y>"
  std::vector<int> sizes;
  int repetitions = 5;
};

struct CompareRow {
  std::string strategy;
  int block = 0;
  DecompositionStats stats;
  double merge_seconds = 0.0;
};

// Strategy settings for one tag; throws ConfigError for a weighting that
// cannot be honoured.
StrategyConfig make_strategy_config(const RunConfig& cfg, Strategy s);

// Model used for modeled_cost: the --cost-model file if given, else nominal.
CostModel stats_cost_model(const RunConfig& cfg);

CostModel parse_synthetic(const std::string& text);

std::vector<CompareRow> compare_rows(const RunConfig& cfg, std::ostream& err);
void write_compare_table(std::ostream& out, const std::vector<CompareRow>& rows);
void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_merge(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_decompose(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_calibrate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses arguments (without the program name) and dispatches. Library
// errors are reported on `err` and mapped to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cliquemerge::cli
