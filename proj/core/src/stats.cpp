#include "varest/stats.hpp"

#include "varest/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace varest {

double mean(std::span<const double> v)
{
  if (v.empty())
    return std::nan("");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v)
{
  if (v.size() < 2)
    return std::nan("");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v)
    s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

MeanWithError mean_with_error(std::span<const double> v)
{
  return { mean(v), std::sqrt(sample_variance(v) / static_cast<double>(v.size())) };
}

namespace {

struct Central
{
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
};

Central central_moments(std::span<const double> v)
{
  const double m = mean(v);
  Central c;
  for (double x : v) {
    const double d = x - m;
    const double d2 = d * d;
    c.m2 += d2;
    c.m3 += d2 * d;
    c.m4 += d2 * d2;
  }
  const auto n = static_cast<double>(v.size());
  c.m2 /= n;
  c.m3 /= n;
  c.m4 /= n;
  return c;
}

} // namespace

double skewness(std::span<const double> v)
{
  const Central c = central_moments(v);
  return c.m3 / std::pow(c.m2, 1.5);
}

double excess_kurtosis(std::span<const double> v)
{
  const Central c = central_moments(v);
  return c.m4 / (c.m2 * c.m2) - 3.0;
}

double normal_cdf(double z)
{
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double ks_distance_normal(std::span<const double> v)
{
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf(sorted[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

double trapezoid(std::span<const double> x, std::span<const double> f)
{
  if (x.size() != f.size())
    throw Error(ErrorKind::BadParameter, "trapezoid: length mismatch");
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    s += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
  return s;
}

LineFit ols_line(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size() || x.size() < 2)
    throw Error(ErrorKind::BadParameter, "ols_line needs >= 2 paired points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - fit.intercept - fit.slope * x[i];
      sse += e * e;
    }
    fit.slope_se = std::sqrt(sse / static_cast<double>(x.size() - 2) / sxx);
  } else {
    fit.slope_se = std::nan("");
  }
  return fit;
}

} // namespace varest
