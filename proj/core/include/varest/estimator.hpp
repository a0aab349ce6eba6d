#pragma once

#include "varest/diffseq.hpp"
#include "varest/smoother.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace varest {

//! Fixed-design observations; xs strictly increasing inside (0, 1).
class Sample
{
public:
  //! Throws InvalidSample (ordering, range, length, non-finite values) or
  //! TooFewObservations (n < 2).
  Sample(std::vector<double> xs, std::vector<double> ys);

  std::size_t size() const { return xs_.size(); }
  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }

  //! Largest spacing including the implicit endpoints 0 and 1.
  double max_gap() const;

private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

//! Delta_{r,i} = sum_j d_j y_{j+i-floor(r/2)} for
//! i = floor(r/2)+1, ..., n+floor(r/2)-r (1-based), each attached to x_i.
struct PseudoresidualSeries
{
  int order = 0;
  std::size_t first_index = 0; // 1-based i of values[0]
  std::vector<double> values;
  std::vector<double> center_xs;

  std::vector<double> squares() const;
};

PseudoresidualSeries pseudoresiduals(const Sample& sample,
                                     const DifferenceSequence& seq);

//! Squared pseudoresiduals written into `out` (size n - r); no
//! allocation, for simulation loops.
void pseudoresidual_squares(std::span<const double> ys,
                            const DifferenceSequence& seq,
                            std::span<double> out);

struct EstimateOptions
{
  bool clip_at_zero = false;
  unsigned threads = 1;
};

struct VarianceEstimate
{
  std::vector<double> grid;
  std::vector<double> values;

  // provenance
  DifferenceSequence sequence;
  SmootherConfig config;
  std::vector<double> bandwidths; // per grid point, after any expansion
  std::vector<bool> expanded;
  std::vector<bool> negative;     // raw fit was below zero
  bool clipped = false;

  bool any_expanded() const;
  bool any_negative() const;
};

//! Local polynomial regression of Delta^2 on the center abscissae.
VarianceEstimate estimate_variance(const Sample& sample,
                                   const DifferenceSequence& seq,
                                   const SmootherConfig& config,
                                   std::span<const double> grid,
                                   const EstimateOptions& options = {});

//! Replaces negative values by zero and marks the estimate as clipped.
void clip_at_zero(VarianceEstimate& estimate);

//! Effective weights of the variance estimator on a fixed design and grid.
//! Because the weights depend only on the design, a plan is computed once
//! and applied to many response vectors.
class LinearPlan
{
public:
  LinearPlan(std::span<const double> center_xs,
             const SmootherConfig& config,
             std::span<const double> grid,
             unsigned threads = 1);

  std::span<const double> grid() const { return grid_; }
  const std::vector<EffectiveWeights>& weights() const { return weights_; }

  //! values.size() must equal the number of center abscissae.
  void apply(std::span<const double> values, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> values) const;

private:
  std::vector<double> grid_;
  std::vector<EffectiveWeights> weights_;
  std::size_t input_size_;
};

//! 1/(2(n-1)) sum (y_{i+1} - y_i)^2.
double rice_estimate(const Sample& sample);

//! 2/(3(n-2)) sum (y_i/2 - y_{i+1} + y_{i+2}/2)^2.
double gsjs_estimate(const Sample& sample);

//! (n-r)^{-1} sum_i (sum_j d_j y_{j+i})^2.
double hkt_estimate(const Sample& sample, const DifferenceSequence& seq);

} // namespace varest
