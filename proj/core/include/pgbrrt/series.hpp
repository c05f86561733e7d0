#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pgbrrt/planners.hpp"

namespace pgbrrt {

/// Median best cost over several runs, sampled on a common time grid.
struct CostTimeSeries {
  std::vector<double> time;
  std::vector<double> median_cost;  // +infinity before half the runs have a solution
};

/// Grid of `grid_points` times from 0 to the longest run's wall time. Each
/// run contributes the last cost-trace value recorded at or before the grid
/// time.
CostTimeSeries cost_time_series(std::span<const RunResult> results, std::size_t grid_points = 100);

/// Cumulative-runtime ratio of two planners over matched-seed runs.
struct RatioSeries {
  std::vector<std::size_t> iterations;
  std::vector<std::vector<double>> per_run;  // per_run[r][k] at iterations[k]
  std::vector<double> mean;
};

/// Runs are matched by position; each must carry stride samples. Only
/// iterations sampled by every run pair are kept.
RatioSeries runtime_ratio_series(std::span<const RunResult> numerator, std::span<const RunResult> denominator);

struct SlopeEstimate {
  double slope = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t runs = 0;

  bool contains_zero() const { return ci_low <= 0.0 && 0.0 <= ci_high; }
};

/// Least-squares slope of each run's ratio against iteration over
/// [from, to]; the interval is a Student-t interval on the mean of the
/// per-run slopes (or the single run's OLS standard error for one run).
SlopeEstimate ratio_slope(const RatioSeries& series, std::size_t from, std::size_t to, double confidence = 0.95);

/// Ordinary least squares y = a + b x.
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double slope_stderr = 0.0;
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace pgbrrt
