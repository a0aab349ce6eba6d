#pragma once

#include "varest/kernel.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace varest {

struct SmootherConfig
{
  KernelSpec kernel{};
  int degree = 1;
  double bandwidth = 0.1;
  //! Grow h at a point to just past the (p+1)-th nearest distinct abscissa
  //! instead of failing with InsufficientSupport.
  bool expand_to_minimum = false;

  //! Throws BadParameter unless h > 0 and p >= 0.
  void check() const;
};

//! Linear-representation weights of the local intercept at one point.
//!
//! Observations outside [first, first + weights.size()) have weight exactly
//! zero; inside the range the weights sum to one and annihilate
//! (x - x_i)^q for q = 1..p.
struct EffectiveWeights
{
  double eval_point = 0.0;
  std::size_t first = 0;
  std::vector<double> weights;
  double bandwidth = 0.0; // bandwidth actually used
  bool expanded = false;

  std::size_t end() const { return first + weights.size(); }

  //! sum_i w_i z_i over the window.
  double apply(std::span<const double> values) const;
};

struct LocalFit
{
  //! (a_0, ..., a_p) for the basis (x - x_i)^j, as in the weighted
  //! least-squares criterion.
  std::vector<double> coefficients;
  EffectiveWeights weights;
  //! Reciprocal 2-norm condition number of the scaled local design.
  double condition_estimate = 0.0;

  double intercept() const { return coefficients.front(); }
};

//! Reciprocal condition numbers below this raise RankDeficient.
inline constexpr double rank_threshold = 1e-12;

//! Effective weights at x; depends only on the design, not on responses.
//! `xs` must be sorted ascending (ties allowed).
EffectiveWeights local_weights(std::span<const double> xs,
                               const SmootherConfig& config,
                               double x);

//! Weighted least-squares local polynomial fit at x.
LocalFit fit_at(std::span<const double> xs,
                std::span<const double> zs,
                const SmootherConfig& config,
                double x);

//! fit_at at every grid point; grid points may be processed concurrently.
//! Errors are rethrown with the offending grid point named in the message.
std::vector<LocalFit> fit_on_grid(std::span<const double> xs,
                                  std::span<const double> zs,
                                  const SmootherConfig& config,
                                  std::span<const double> grid,
                                  unsigned threads = 1);

struct CltDiagnostics
{
  double max_abs_weight = 0.0;
  double sum_sq_weights = 0.0;
  double scaled_max = 0.0;    // n h max|w|
  double scaled_sum_sq = 0.0; // n h sum w^2
};

CltDiagnostics clt_diagnostics(const EffectiveWeights& weights,
                               std::size_t n,
                               double h);

} // namespace varest
