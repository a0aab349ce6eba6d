#pragma once

#include "varest/bandwidth.hpp"
#include "varest/diffseq.hpp"
#include "varest/kernel.hpp"
#include "varest/scenario.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace varest {

struct SequenceSpec
{
  enum class Choice
  {
    standard,
    optimal,
    explicit_coeffs
  };
  Choice choice = Choice::optimal;
  StandardSequence standard = StandardSequence::first_difference;
  int order = 2;
  std::vector<double> coeffs;

  bool operator==(const SequenceSpec&) const = default;

  DifferenceSequence resolve() const;

  static SequenceSpec of_standard(StandardSequence kind);
  static SequenceSpec of_optimal(int order);
  static SequenceSpec of_coeffs(std::vector<double> coeffs);
};

//! How the bandwidth depends on the sample size.
struct BandwidthRule
{
  enum class Kind
  {
    fixed, // h = value
    power, // h = scale * n^{-exponent}, clamped to (0, 0.5]
    cv     // per-replication K-fold cross-validation on the default grid
  };
  Kind kind = Kind::power;
  double value = 0.1;
  double scale = 0.5;
  double exponent = 0.2;
  int folds = 5;
  int candidates = 12;

  bool operator==(const BandwidthRule&) const = default;

  static BandwidthRule fixed_h(double h);
  //! scale * n^{-1/(2 gamma + 1)}
  static BandwidthRule rate(double gamma, double scale);
  static BandwidthRule power_law(double scale, double exponent);
  static BandwidthRule cross_validated(int folds, int candidates = 12);

  //! Bandwidth at sample size n; NaN for cross-validation.
  double at(std::size_t n) const;
};

struct EstimatorConfig
{
  enum class Kind
  {
    local_polynomial, // pseudoresidual smoothing
    rice,             // global first-difference estimate, constant in x
    hkt,              // global difference-sequence estimate, constant in x
    oracle            // true V plus `oracle_offset`; for calibrating the lab
  };
  Kind kind = Kind::local_polynomial;
  SequenceSpec sequence{};
  KernelKind kernel = KernelKind::epanechnikov;
  int degree = 1;
  BandwidthRule bandwidth{};
  bool expand_to_minimum = false;
  double oracle_offset = 0.0;

  bool operator==(const EstimatorConfig&) const = default;
};

//! Equispaced grid for integrated risk. The default [0.05, 0.95] margin
//! keeps boundary fits out of the rate; `full_interval` uses [0, 1].
struct GridSpec
{
  double lo = 0.05;
  double hi = 0.95;
  int points = 101;
  bool full_interval = false;

  bool operator==(const GridSpec&) const = default;

  std::vector<double> values() const;
  std::string note() const;
};

struct RiskValue
{
  double risk = 0.0;
  double se = 0.0;
  int failures = 0;
};

struct PointRisk
{
  double x0 = 0.0;
  double risk = 0.0;
  double se = 0.0;

  bool operator==(const PointRisk&) const = default;
};

struct RiskReport
{
  std::string scenario;
  EstimatorConfig estimator;
  std::size_t n = 0;
  double bandwidth = 0.0; // NaN when not a single fixed value
  int replications = 0;
  int failures = 0;
  std::vector<PointRisk> pointwise;
  bool has_global = false;
  double global_risk = 0.0;
  double global_se = 0.0;
  GridSpec grid;
  std::string grid_note;
  std::uint64_t seed = 0;
};

struct RiskOptions
{
  std::vector<double> x0s;
  bool global = true;
  GridSpec grid{};
  int replications = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

RiskReport risk_report(const Scenario& scenario,
                       const EstimatorConfig& estimator,
                       const RiskOptions& options);

//! (1/R) sum_reps (Vhat(x0) - V(x0))^2 with its replication standard error.
RiskValue pointwise_risk(const Scenario& scenario,
                         const EstimatorConfig& estimator,
                         double x0,
                         int replications,
                         std::uint64_t seed,
                         unsigned threads = 1);

//! MC mean of the trapezoidal integral of (Vhat - V)^2 over the grid.
RiskValue global_risk(const Scenario& scenario,
                      const EstimatorConfig& estimator,
                      const GridSpec& grid,
                      int replications,
                      std::uint64_t seed,
                      unsigned threads = 1);

struct RatePoint
{
  std::size_t n = 0;
  double bandwidth = 0.0;
  double risk = 0.0;
  double se = 0.0;
  int failures = 0;
  bool used_in_fit = true;

  bool operator==(const RatePoint&) const = default;
};

struct RateReport
{
  std::string scenario;
  EstimatorConfig estimator;
  bool pointwise = false;
  double x0 = 0.5;
  double gamma = 2.0;
  int replications = 0;
  std::uint64_t seed = 0;
  GridSpec grid;
  std::vector<RatePoint> points;
  bool slope_defined = false;
  double slope = 0.0;    // NaN when undefined
  double slope_se = 0.0; // NaN when undefined
  double theoretical_slope = 0.0;
};

struct RateOptions
{
  double gamma = 2.0;
  bool pointwise = false;
  double x0 = 0.5;
  GridSpec grid{};
  int replications = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

//! Risks over a family of sample sizes and the OLS slope of log risk on
//! log n. Needs >= 4 distinct n; throws ExcessiveFailures if more than 5%
//! of replications fail at any n.
RateReport rate_experiment(const Scenario& base,
                           const std::vector<std::size_t>& ns,
                           const EstimatorConfig& estimator,
                           const RateOptions& options);

struct NormalityReport
{
  std::string scenario;
  EstimatorConfig estimator;
  std::size_t n = 0;
  double bandwidth = 0.0;
  double x0 = 0.5;
  int replications = 0;
  int failures = 0;
  std::uint64_t seed = 0;
  std::vector<double> draws;
  std::vector<double> standardized;
  double draw_mean = 0.0;
  double draw_sd = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks_distance = 0.0;
};

struct NormalityStats
{
  std::vector<double> standardized;
  double mean = 0.0;
  double sd = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks_distance = 0.0;
};

//! Self-studentizes `draws` and measures their distance from N(0, 1).
NormalityStats normality_statistics(std::span<const double> draws);

//! Needs R >= 500.
NormalityReport normality_experiment(const Scenario& scenario,
                                     const EstimatorConfig& estimator,
                                     double x0,
                                     int replications,
                                     std::uint64_t seed,
                                     unsigned threads = 1);

struct MeanEffectPoint
{
  std::size_t n = 0;
  double bandwidth = 0.0;
  double rough_risk = 0.0;
  double rough_se = 0.0;
  double smooth_risk = 0.0;
  double smooth_se = 0.0;
  double ratio = 0.0;
  double ratio_se = 0.0;

  bool operator==(const MeanEffectPoint&) const = default;
};

struct MeanEffectReport
{
  double gamma = 2.0;
  double beta = 0.3;
  EstimatorConfig estimator;
  int replications = 0;
  std::uint64_t seed = 0;
  GridSpec grid;
  std::vector<MeanEffectPoint> points;
};

//! Global risk with g(x) = |x - 1/2|^beta against g = 0 (same V, same
//! error draws). beta must lie strictly inside (gamma/(4gamma+2),
//! gamma/(2gamma+2)).
MeanEffectReport mean_effect_experiment(double gamma,
                                        double beta,
                                        const std::vector<std::size_t>& ns,
                                        int replications,
                                        std::uint64_t seed,
                                        const EstimatorConfig& estimator,
                                        unsigned threads = 1,
                                        const GridSpec& grid = {});

struct BiasVariancePoint
{
  double bandwidth = 0.0;
  double sq_bias = 0.0;  // integrated, corrected for MC noise
  double variance = 0.0; // integrated
};

struct BiasVarianceReport
{
  std::string scenario;
  std::size_t n = 0;
  int replications = 0;
  std::vector<BiasVariancePoint> points;
  double bias_slope = 0.0;     // d log sq_bias / d log h
  double variance_slope = 0.0; // d log variance / d log h
};

//! Integrated squared bias and variance of the estimator at fixed n over a
//! range of bandwidths, all evaluated on the same replications.
BiasVarianceReport bias_variance_experiment(const Scenario& scenario,
                                            const EstimatorConfig& estimator,
                                            const std::vector<double>& bandwidths,
                                            int replications,
                                            std::uint64_t seed,
                                            unsigned threads = 1,
                                            const GridSpec& grid = {});

} // namespace varest
