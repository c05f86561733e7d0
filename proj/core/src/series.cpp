#include "pgbrrt/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "pgbrrt/bench.hpp"

namespace pgbrrt {

CostTimeSeries cost_time_series(std::span<const RunResult> results, std::size_t grid_points) {
  CostTimeSeries series;
  if (results.empty() || grid_points == 0) return series;
  double horizon = 0.0;
  for (const auto& r : results) horizon = std::max(horizon, r.wall_time);
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double t = grid_points == 1 ? horizon : horizon * static_cast<double>(k) / static_cast<double>(grid_points - 1);
    std::vector<double> costs;
    for (const auto& r : results) {
      double c = kNoCost;
      for (const auto& s : r.cost_trace) {
        if (s.elapsed_seconds > t) break;
        c = std::min(c, s.cost);
      }
      costs.push_back(c);
    }
    series.time.push_back(t);
    series.median_cost.push_back(median(std::move(costs)));
  }
  return series;
}

RatioSeries runtime_ratio_series(std::span<const RunResult> numerator, std::span<const RunResult> denominator) {
  if (numerator.size() != denominator.size()) {
    throw std::invalid_argument("runtime_ratio_series: run counts differ");
  }
  RatioSeries series;
  if (numerator.empty()) return series;

  // Iterations present in every trace of both planners.
  std::map<std::size_t, std::size_t> seen;
  const std::size_t traces = numerator.size() * 2;
  for (auto group : {numerator, denominator}) {
    for (const auto& r : group) {
      std::size_t last = 0;
      for (const auto& s : r.cost_trace) {
        if (s.iteration != last) ++seen[s.iteration];
        last = s.iteration;
      }
    }
  }
  for (const auto& [it, count] : seen) {
    if (count == traces) series.iterations.push_back(it);
  }

  auto elapsed_at = [](const RunResult& r) {
    std::map<std::size_t, double> m;
    for (const auto& s : r.cost_trace) m[s.iteration] = s.elapsed_seconds;
    return m;
  };
  series.mean.assign(series.iterations.size(), 0.0);
  for (std::size_t run = 0; run < numerator.size(); ++run) {
    const auto num = elapsed_at(numerator[run]);
    const auto den = elapsed_at(denominator[run]);
    std::vector<double> ratios;
    for (std::size_t k = 0; k < series.iterations.size(); ++k) {
      const std::size_t it = series.iterations[k];
      const double d = den.at(it);
      const double ratio = d > 0.0 ? num.at(it) / d : 1.0;
      ratios.push_back(ratio);
      series.mean[k] += ratio / static_cast<double>(numerator.size());
    }
    series.per_run.push_back(std::move(ratios));
  }
  return series;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need >= 2 paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = y[i] - fit.intercept - fit.slope * x[i];
      sse += e * e;
    }
    fit.slope_stderr = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

SlopeEstimate ratio_slope(const RatioSeries& series, std::size_t from, std::size_t to, double confidence) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < series.iterations.size(); ++k) {
    if (series.iterations[k] >= from && series.iterations[k] <= to) idx.push_back(k);
  }
  if (idx.size() < 3) throw std::invalid_argument("ratio_slope: fewer than 3 samples in the window");
  std::vector<double> x;
  for (std::size_t k : idx) x.push_back(static_cast<double>(series.iterations[k]));

  std::vector<LinearFit> fits;
  for (const auto& run : series.per_run) {
    std::vector<double> y;
    for (std::size_t k : idx) y.push_back(run[k]);
    fits.push_back(fit_line(x, y));
  }

  SlopeEstimate est;
  est.runs = fits.size();
  const double alpha = 1.0 - confidence;
  if (fits.size() == 1) {
    boost::math::students_t dist(static_cast<double>(x.size() - 2));
    const double t = boost::math::quantile(boost::math::complement(dist, alpha / 2.0));
    est.slope = fits[0].slope;
    est.ci_low = est.slope - t * fits[0].slope_stderr;
    est.ci_high = est.slope + t * fits[0].slope_stderr;
    return est;
  }
  const double n = static_cast<double>(fits.size());
  double mean = 0.0;
  for (const auto& f : fits) mean += f.slope;
  mean /= n;
  double var = 0.0;
  for (const auto& f : fits) var += (f.slope - mean) * (f.slope - mean);
  var /= n - 1.0;
  boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(boost::math::complement(dist, alpha / 2.0));
  const double half = t * std::sqrt(var / n);
  est.slope = mean;
  est.ci_low = mean - half;
  est.ci_high = mean + half;
  return est;
}

}  // namespace pgbrrt
