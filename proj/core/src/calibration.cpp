#include "cliquemerge/calibration.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cliquemerge/errors.hpp"
#include "cliquemerge/format.hpp"
#include "cliquemerge/projection.hpp"

namespace cliquemerge {

Eigen::MatrixXd calibration_matrix(int size, int repetition, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(size), static_cast<std::uint32_t>(repetition)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd m(size, size);
  for (int j = 0; j < size; ++j) {
    for (int i = j; i < size; ++i) {
      m(i, j) = dist(rng);
      m(j, i) = m(i, j);
    }
  }
  return m;
}

std::vector<TimingSample> measure_projection_times(std::span<const int> sizes, int repetitions,
                                                   std::uint64_t seed) {
  if (repetitions < 3) throw InputError("calibration needs at least 3 repetitions");
  for (int n : sizes) {
    if (n < 2) throw InputError("calibration sizes must be at least 2");
  }

  using Clock = std::chrono::steady_clock;
  std::vector<TimingSample> samples;
  double sink = 0.0;
  for (int n : sizes) {
    sink += psd_project(calibration_matrix(n, -1, seed)).trace();  // warm-up
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(repetitions));
    for (int r = 0; r < repetitions; ++r) {
      const Eigen::MatrixXd input = calibration_matrix(n, r, seed);
      const auto start = Clock::now();
      const Eigen::MatrixXd projected = psd_project(input);
      const auto stop = Clock::now();
      sink += projected(0, 0);
      times.push_back(std::chrono::duration<double>(stop - start).count());
    }
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    const double median =
        times.size() % 2 == 1 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
    samples.push_back({n, std::max(median, 1e-12)});
  }
  volatile double keep = sink;
  (void)keep;
  return samples;
}

CostModelFit fit_cost_model(std::span<const TimingSample> samples) {
  std::set<int> distinct;
  double scale = 0.0;
  for (const auto& s : samples) {
    if (s.size < 1) throw InputError("timing sample with size < 1");
    if (!std::isfinite(s.seconds) || s.seconds <= 0.0) {
      throw InputError("timing sample with non-positive time");
    }
    distinct.insert(s.size);
    scale = std::max(scale, static_cast<double>(s.size));
  }
  if (distinct.size() < 2) {
    throw InputError("cost model fit is singular: need at least two distinct sizes");
  }

  // Fit in x = N / scale to keep the normal equations well conditioned.
  double uu = 0, uv = 0, vv = 0, ut = 0, vt = 0;
  for (const auto& s : samples) {
    const double x = s.size / scale;
    const double u = x * x * x;
    const double v = x * x;
    uu += u * u;
    uv += u * v;
    vv += v * v;
    ut += u * s.seconds;
    vt += v * s.seconds;
  }
  const double det = uu * vv - uv * uv;
  if (!(det > 1e-14 * uu * vv)) {
    throw InputError("cost model fit is singular");
  }

  CostModelFit fit;
  double alpha = (ut * vv - vt * uv) / det;
  double beta = (uu * vt - uv * ut) / det;
  if (alpha < 0.0) {
    alpha = 0.0;
    beta = vt / vv;
    fit.clamped = true;
  }
  // A negative b can make the model non-positive at the smallest sizes;
  // fall back to a pure cubic fit in that case.
  const double xmin = *distinct.begin() / scale;
  if (alpha * xmin * xmin * xmin + beta * xmin * xmin <= 0.0) {
    alpha = ut / uu;
    beta = 0.0;
    fit.clamped = true;
  }
  fit.model.a = alpha / (scale * scale * scale);
  fit.model.b = beta / (scale * scale);

  double rss = 0.0;
  for (const auto& s : samples) {
    const double r = fit.model.projection_time(s.size) - s.seconds;
    rss += r * r;
  }
  fit.residual = std::sqrt(rss);
  return fit;
}

std::vector<TimingSample> synthetic_samples(const CostModel& m, std::span<const int> sizes) {
  std::vector<TimingSample> out;
  out.reserve(sizes.size());
  for (int n : sizes) out.push_back({n, m.projection_time(n)});
  return out;
}

std::string current_utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

void write_cost_model(std::ostream& out, const CostModelFile& f) {
  out << "# projection time model t(N) = a*N^3 + b*N^2 (seconds),"
         " least squares over median timings\n";
  out << "a = " << format_double17(f.model.a) << '\n';
  out << "b = " << format_double17(f.model.b) << '\n';
  out << "fitted_at = " << f.fitted_at << '\n';
  out << "sizes = ";
  for (std::size_t i = 0; i < f.sizes.size(); ++i) {
    if (i > 0) out << ',';
    out << f.sizes[i];
  }
  out << '\n';
  out << "residual = " << format_double17(f.residual) << '\n';
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& text, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw ParseError(line, "expected a number, got '" + text + "'");
  }
  return v;
}

}  // namespace

CostModelFile read_cost_model(std::istream& in) {
  CostModelFile f;
  bool have_a = false;
  bool have_b = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key == "a") {
      f.model.a = parse_real(value, line);
      have_a = true;
    } else if (key == "b") {
      f.model.b = parse_real(value, line);
      have_b = true;
    } else if (key == "fitted_at") {
      f.fitted_at = value;
    } else if (key == "residual") {
      f.residual = parse_real(value, line);
    } else if (key == "sizes") {
      f.sizes.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
          f.sizes.push_back(std::stoi(item));
        } catch (const std::exception&) {
          throw ParseError(line, "bad size '" + item + "'");
        }
      }
    }
  }
  if (!have_a || !have_b) throw ParseError(line, "cost model needs both 'a' and 'b'");
  return f;
}

CostModelFile load_cost_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open cost model '" + path + "'");
  return read_cost_model(in);
}

void save_cost_model(const std::string& path, const CostModelFile& f) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write cost model '" + path + "'");
  write_cost_model(out, f);
  if (!out) throw IoError("failed writing cost model '" + path + "'");
}

}  // namespace cliquemerge
