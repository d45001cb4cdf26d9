#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cliquemerge/weights.hpp"

namespace cliquemerge {

struct TimingSample {
  int size = 0;
  double seconds = 0.0;
};

inline constexpr int kDefaultCalibrationSizes[] = {16, 32, 64, 128, 256, 512};

// Random symmetric matrix with entries in [-1, 1] used for the timing of
// (size, repetition); a pure function of its arguments.
Eigen::MatrixXd calibration_matrix(int size, int repetition, std::uint64_t seed);

/// Median psd_project time per size over `repetitions` seeded random
/// symmetric matrices, after one untimed warm-up. Runs on the calling
/// thread only. Throws InputError for sizes < 2 or repetitions < 3.
std::vector<TimingSample> measure_projection_times(std::span<const int> sizes,
                                                   int repetitions,
                                                   std::uint64_t seed = 0);

struct CostModelFit {
  CostModel model;
  double residual = 0.0;  // 2-norm of (model - measured)
  bool clamped = false;   // free fit had a < 0 or t <= 0 at the smallest size; refit with one term
};

/// Least-squares fit of t = a N^3 + b N^2. Throws InputError with fewer
/// than two distinct sizes (singular normal equations).
CostModelFit fit_cost_model(std::span<const TimingSample> samples);

// Noiseless samples of the given model, for self-checks.
std::vector<TimingSample> synthetic_samples(const CostModel& m, std::span<const int> sizes);

struct CostModelFile {
  CostModel model;
  std::string fitted_at;  // ISO 8601, UTC
  std::vector<int> sizes;
  double residual = 0.0;
};

void write_cost_model(std::ostream& out, const CostModelFile& f);
// Lenient: whitespace around '=' optional, '#' comments and unknown keys
// ignored. `a` and `b` are required. Throws ParseError.
CostModelFile read_cost_model(std::istream& in);

CostModelFile load_cost_model(const std::string& path);  // IoError / ParseError
void save_cost_model(const std::string& path, const CostModelFile& f);

std::string current_utc_timestamp();

}  // namespace cliquemerge
