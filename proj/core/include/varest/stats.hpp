#pragma once

#include <span>
#include <vector>

namespace varest {

double mean(std::span<const double> v);
//! Unbiased (n - 1) sample variance.
double sample_variance(std::span<const double> v);
//! Mean and its standard error sd/sqrt(n).
struct MeanWithError
{
  double mean = 0.0;
  double se = 0.0;
};
MeanWithError mean_with_error(std::span<const double> v);

//! m3 / m2^{3/2} with central moments normalized by n.
double skewness(std::span<const double> v);
//! m4 / m2^2 - 3 with central moments normalized by n.
double excess_kurtosis(std::span<const double> v);

double normal_cdf(double z);
//! sup_z |F_n(z) - Phi(z)| of the empirical distribution of `v`.
double ks_distance_normal(std::span<const double> v);

//! Trapezoidal rule for samples `f` at sorted abscissae `x`.
double trapezoid(std::span<const double> x, std::span<const double> f);

struct LineFit
{
  double intercept = 0.0;
  double slope = 0.0;
  double slope_se = 0.0;
};
//! Ordinary least squares y = a + b x with the usual standard error of b.
LineFit ols_line(std::span<const double> x, std::span<const double> y);

} // namespace varest
