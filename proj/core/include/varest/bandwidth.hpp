#pragma once

#include "varest/diffseq.hpp"
#include "varest/estimator.hpp"
#include "varest/smoother.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace varest {

//! scale * n^{-1/(2 gamma + 1)}, clamped to (0, 0.5].
double rate_optimal_bandwidth(std::size_t n, double gamma, double scale);

//! Nonempty, strictly increasing candidate bandwidths in (0, 0.5].
class BandwidthGrid
{
public:
  explicit BandwidthGrid(std::vector<double> candidates);

  //! `count` geometrically spaced values from 4 * max_gap to 0.4.
  static BandwidthGrid geometric_default(const Sample& sample, int count = 12);

  const std::vector<double>& candidates() const { return candidates_; }

private:
  std::vector<double> candidates_;
};

struct CvScore
{
  double bandwidth = 0.0;
  double score = 0.0;
  bool disqualified = false;
  std::string reason; // first fit error when disqualified

  //! NaN scores of disqualified candidates compare equal.
  friend bool operator==(const CvScore& a, const CvScore& b);
};

struct CvReport
{
  std::vector<CvScore> scores;
  double selected = 0.0;
  int folds = 0;
  std::uint64_t seed = 0;

  bool operator==(const CvReport&) const = default;
};

//! Fold label of every pseudoresidual index. Indices are cut into
//! contiguous blocks of about 4 (order + 1) indices which are dealt to folds
//! by a seeded shuffle, each fold receiving the same number of blocks.
std::vector<int> block_fold_assignment(std::size_t count,
                                       int order,
                                       int folds,
                                       std::uint64_t seed);

//! K-fold cross-validation of the bandwidth of the variance estimator.
//! Scores are sums over held-out pseudoresiduals of (Delta_i^2 - fit)^2
//! where the fit uses the other folds minus the points within `order`
//! indices of a held-out one; smaller h wins ties.
CvReport cv_select(const Sample& sample,
                   const DifferenceSequence& seq,
                   const SmootherConfig& config_base,
                   const BandwidthGrid& grid,
                   int folds,
                   std::uint64_t seed,
                   unsigned threads = 1);

} // namespace varest
