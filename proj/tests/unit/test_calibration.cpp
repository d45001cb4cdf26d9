#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "cliquemerge/calibration.hpp"
#include "cliquemerge/errors.hpp"

namespace cliquemerge {
namespace {

bool near_rel(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::abs(want);
}

TEST(FitCostModel, RecoversNoiselessPolynomial) {
  const std::vector<int> sizes{4, 8, 16};
  const auto fit = fit_cost_model(synthetic_samples(CostModel{2.0, 5.0}, sizes));
  EXPECT_TRUE(near_rel(fit.model.a, 2.0, 1e-6));
  EXPECT_TRUE(near_rel(fit.model.b, 5.0, 1e-6));
  EXPECT_FALSE(fit.clamped);
  EXPECT_LT(fit.residual, 1e-6);
}

TEST(FitCostModel, RecoversRealisticScale) {
  const std::vector<int> sizes{16, 32, 64, 128, 256, 512};
  const auto fit = fit_cost_model(synthetic_samples(CostModel{3.1e-10, 2.2e-8}, sizes));
  EXPECT_TRUE(near_rel(fit.model.a, 3.1e-10, 1e-6));
  EXPECT_TRUE(near_rel(fit.model.b, 2.2e-8, 1e-6));
}

TEST(FitCostModel, SingleSizeIsSingular) {
  const std::vector<TimingSample> one{{8, 1.0}};
  EXPECT_THROW(fit_cost_model(one), InputError);
  const std::vector<TimingSample> dup{{8, 1.0}, {8, 1.1}};
  EXPECT_THROW(fit_cost_model(dup), InputError);
}

TEST(FitCostModel, RejectsInvalidSamples) {
  const std::vector<TimingSample> zero_time{{8, 0.0}, {16, 1.0}};
  EXPECT_THROW(fit_cost_model(zero_time), InputError);
  const std::vector<TimingSample> zero_size{{0, 1.0}, {16, 1.0}};
  EXPECT_THROW(fit_cost_model(zero_size), InputError);
}

TEST(FitCostModel, ClampsNegativeCubicTerm) {
  // t = N^2 - 0.01 N^3 has a negative cubic coefficient
  std::vector<TimingSample> samples;
  for (int n : {4, 8, 16, 32}) {
    const double d = n;
    samples.push_back({n, d * d - 0.01 * d * d * d});
  }
  const auto fit = fit_cost_model(samples);
  EXPECT_TRUE(fit.clamped);
  EXPECT_EQ(fit.model.a, 0.0);
  EXPECT_GT(fit.model.b, 0.0);
}

TEST(MeasureProjectionTimes, ShapeContract) {
  const std::vector<int> sizes{10};
  const auto samples = measure_projection_times(sizes, 3, 1);
  ASSERT_EQ(samples.size(), 1u);
  EXPECT_EQ(samples[0].size, 10);
  EXPECT_GT(samples[0].seconds, 0.0);
}

TEST(MeasureProjectionTimes, RejectsBadArguments) {
  const std::vector<int> tiny{1};
  EXPECT_THROW(measure_projection_times(tiny, 3), InputError);
  const std::vector<int> ok{4};
  EXPECT_THROW(measure_projection_times(ok, 2), InputError);
}

TEST(MeasureProjectionTimes, SoftMonotonicity) {
  const std::vector<int> sizes{50, 100, 200};
  const auto samples = measure_projection_times(sizes, 3, 7);
  for (std::size_t k = 1; k < samples.size(); ++k) {
    if (samples[k].seconds < samples[k - 1].seconds) {
      std::cerr << "note: timing not monotone at N=" << samples[k].size << '\n';
    }
  }
  SUCCEED();
}

TEST(CalibrationMatrix, DeterministicAndSymmetric) {
  const auto a = calibration_matrix(12, 2, 99);
  const auto b = calibration_matrix(12, 2, 99);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, a.transpose());
  EXPECT_NE(a, calibration_matrix(12, 3, 99));
  EXPECT_NE(a, calibration_matrix(12, 2, 100));
  EXPECT_LE(a.cwiseAbs().maxCoeff(), 1.0);
}

TEST(CostModelFile, RoundTrip) {
  CostModelFile f;
  f.model = {2.5e-10, 1.25e-8};
  f.fitted_at = "2026-01-02T03:04:05Z";
  f.sizes = {16, 32, 64};
  f.residual = 1e-7;
  std::stringstream ss;
  write_cost_model(ss, f);
  const auto text = ss.str();
  EXPECT_NE(text.find("a = "), std::string::npos);
  EXPECT_NE(text.find("sizes = 16,32,64"), std::string::npos);
  const auto g = read_cost_model(ss);
  EXPECT_EQ(g.model, f.model);
  EXPECT_EQ(g.fitted_at, f.fitted_at);
  EXPECT_EQ(g.sizes, f.sizes);
  EXPECT_EQ(g.residual, f.residual);
}

TEST(CostModelFile, LenientParsing) {
  std::istringstream in("# comment\n  a=2\nunknown = x\n\tb   =   5  \n");
  const auto f = read_cost_model(in);
  EXPECT_EQ(f.model, (CostModel{2.0, 5.0}));
}

TEST(CostModelFile, MissingCoefficientIsParseError) {
  std::istringstream in("a = 2\n");
  EXPECT_THROW(read_cost_model(in), ParseError);
  std::istringstream bad("a = two\nb = 1\n");
  EXPECT_THROW(read_cost_model(bad), ParseError);
}

TEST(CostModelFile, MissingFileIsIoError) {
  EXPECT_THROW(load_cost_model("/nonexistent/dir/model.txt"), IoError);
}

TEST(FitCostModel, RefitsWithoutQuadraticWhenSmallSizesGoNegative) {
  // flat at small sizes then cubic: the free fit has b < 0 and t(16) < 0
  const std::vector<TimingSample> samples{
      {16, 1e-6}, {32, 1e-6}, {64, 1e-6}, {128, 2e-3}, {256, 2e-2}};
  const auto fit = fit_cost_model(samples);
  EXPECT_TRUE(fit.clamped);
  EXPECT_EQ(fit.model.b, 0.0);
  for (const auto& s : samples) EXPECT_GT(fit.model.projection_time(s.size), 0.0);
}

}  // namespace
}  // namespace cliquemerge
