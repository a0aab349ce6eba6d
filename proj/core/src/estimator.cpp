#include "varest/estimator.hpp"

#include "varest/error.hpp"
#include "varest/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace varest {

Sample::Sample(std::vector<double> xs, std::vector<double> ys)
  : xs_(std::move(xs))
  , ys_(std::move(ys))
{
  if (xs_.size() != ys_.size())
    throw Error(ErrorKind::InvalidSample, "x and y have different lengths");
  if (xs_.size() < 2)
    throw Error(ErrorKind::TooFewObservations,
                "need at least 2 observations, got " + std::to_string(xs_.size()));
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i]))
      throw Error(ErrorKind::InvalidSample,
                  "non-finite value in row " + std::to_string(i + 1));
    if (!(xs_[i] > 0.0 && xs_[i] < 1.0))
      throw Error(ErrorKind::InvalidSample,
                  "x outside (0,1) in row " + std::to_string(i + 1));
    if (i > 0 && !(xs_[i] > xs_[i - 1]))
      throw Error(ErrorKind::InvalidSample,
                  "x not strictly increasing at row " + std::to_string(i + 1));
  }
}

double Sample::max_gap() const
{
  double gap = std::max(xs_.front(), 1.0 - xs_.back());
  for (std::size_t i = 1; i < xs_.size(); ++i)
    gap = std::max(gap, xs_[i] - xs_[i - 1]);
  return gap;
}

std::vector<double> PseudoresidualSeries::squares() const
{
  std::vector<double> sq(values.size());
  std::transform(values.begin(), values.end(), sq.begin(),
                 [](double v) { return v * v; });
  return sq;
}

namespace {

void require_observations(std::size_t n, std::size_t needed)
{
  if (n < needed)
    throw Error(ErrorKind::TooFewObservations,
                "need at least " + std::to_string(needed) +
                  " observations, got " + std::to_string(n));
}

} // namespace

PseudoresidualSeries pseudoresiduals(const Sample& sample,
                                     const DifferenceSequence& seq)
{
  const auto r = static_cast<std::size_t>(seq.order());
  const std::size_t n = sample.size();
  require_observations(n, r + 1);
  const std::size_t offset = r / 2;

  PseudoresidualSeries out;
  out.order = seq.order();
  out.first_index = offset + 1;
  out.values.resize(n - r);
  out.center_xs.resize(n - r);
  const auto ys = sample.ys();
  const auto xs = sample.xs();
  for (std::size_t k = 0; k < n - r; ++k) {
    // 0-based: Delta for 1-based index i = offset + 1 + k uses y[k .. k + r]
    double s = 0.0;
    for (std::size_t j = 0; j <= r; ++j)
      s += seq[j] * ys[k + j];
    out.values[k] = s;
    out.center_xs[k] = xs[k + offset];
  }
  return out;
}

void pseudoresidual_squares(std::span<const double> ys,
                            const DifferenceSequence& seq,
                            std::span<double> out)
{
  const auto r = static_cast<std::size_t>(seq.order());
  require_observations(ys.size(), r + 1);
  if (out.size() != ys.size() - r)
    throw Error(ErrorKind::BadParameter, "output span has the wrong length");
  for (std::size_t k = 0; k < out.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j <= r; ++j)
      s += seq[j] * ys[k + j];
    out[k] = s * s;
  }
}

bool VarianceEstimate::any_expanded() const
{
  return std::find(expanded.begin(), expanded.end(), true) != expanded.end();
}

bool VarianceEstimate::any_negative() const
{
  return std::find(negative.begin(), negative.end(), true) != negative.end();
}

VarianceEstimate estimate_variance(const Sample& sample,
                                   const DifferenceSequence& seq,
                                   const SmootherConfig& config,
                                   std::span<const double> grid,
                                   const EstimateOptions& options)
{
  const PseudoresidualSeries series = pseudoresiduals(sample, seq);
  const std::vector<double> sq = series.squares();
  const std::vector<LocalFit> fits =
    fit_on_grid(series.center_xs, sq, config, grid, options.threads);

  VarianceEstimate est{ .grid = { grid.begin(), grid.end() },
                        .values = {},
                        .sequence = seq,
                        .config = config,
                        .bandwidths = {},
                        .expanded = {},
                        .negative = {},
                        .clipped = false };
  est.values.reserve(fits.size());
  for (const LocalFit& fit : fits) {
    est.values.push_back(fit.intercept());
    est.bandwidths.push_back(fit.weights.bandwidth);
    est.expanded.push_back(fit.weights.expanded);
    est.negative.push_back(fit.intercept() < 0.0);
  }
  if (options.clip_at_zero)
    clip_at_zero(est);
  return est;
}

void clip_at_zero(VarianceEstimate& estimate)
{
  for (double& v : estimate.values)
    v = std::max(v, 0.0);
  estimate.clipped = true;
}

LinearPlan::LinearPlan(std::span<const double> center_xs,
                       const SmootherConfig& config,
                       std::span<const double> grid,
                       unsigned threads)
  : grid_(grid.begin(), grid.end())
  , weights_(grid.size())
  , input_size_(center_xs.size())
{
  parallel_for(grid.size(), threads, [&](std::size_t g) {
    try {
      weights_[g] = local_weights(center_xs, config, grid[g]);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "grid point " << g << " (x=" << grid[g] << "): " << e.detail();
      throw Error(e.kind(), msg.str());
    }
  });
}

void LinearPlan::apply(std::span<const double> values, std::span<double> out) const
{
  if (values.size() != input_size_ || out.size() != weights_.size())
    throw Error(ErrorKind::BadParameter, "linear plan applied to wrong-sized data");
  for (std::size_t g = 0; g < weights_.size(); ++g)
    out[g] = weights_[g].apply(values);
}

std::vector<double> LinearPlan::apply(std::span<const double> values) const
{
  std::vector<double> out(weights_.size());
  apply(values, out);
  return out;
}

double rice_estimate(const Sample& sample)
{
  const auto ys = sample.ys();
  const std::size_t n = ys.size();
  require_observations(n, 2);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = ys[i + 1] - ys[i];
    s += d * d;
  }
  return s / (2.0 * static_cast<double>(n - 1));
}

double gsjs_estimate(const Sample& sample)
{
  const auto ys = sample.ys();
  const std::size_t n = ys.size();
  require_observations(n, 3);
  double s = 0.0;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const double d = 0.5 * ys[i] - ys[i + 1] + 0.5 * ys[i + 2];
    s += d * d;
  }
  return 2.0 * s / (3.0 * static_cast<double>(n - 2));
}

double hkt_estimate(const Sample& sample, const DifferenceSequence& seq)
{
  const auto ys = sample.ys();
  const auto r = static_cast<std::size_t>(seq.order());
  const std::size_t n = ys.size();
  require_observations(n, r + 1);
  double s = 0.0;
  for (std::size_t i = 0; i + r < n; ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j <= r; ++j)
      d += seq[j] * ys[i + j];
    s += d * d;
  }
  return s / static_cast<double>(n - r);
}

} // namespace varest
