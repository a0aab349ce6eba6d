#include "varest/bandwidth.hpp"

#include "varest/error.hpp"
#include "varest/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace varest {


double rate_optimal_bandwidth(std::size_t n, double gamma, double scale)
{
  if (n < 2)
    throw Error(ErrorKind::BadParameter, "n must be >= 2");
  if (!(gamma > 0.0) || !(scale > 0.0) || !std::isfinite(gamma) ||
      !std::isfinite(scale))
    throw Error(ErrorKind::BadParameter, "gamma and scale must be positive");
  const double h =
    scale * std::pow(static_cast<double>(n), -1.0 / (2.0 * gamma + 1.0));
  return std::min(h, 0.5);
}

BandwidthGrid::BandwidthGrid(std::vector<double> candidates)
  : candidates_(std::move(candidates))
{
  if (candidates_.empty())
    throw Error(ErrorKind::BadParameter, "bandwidth grid is empty");
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    const double h = candidates_[i];
    if (!(h > 0.0 && h <= 0.5))
      throw Error(ErrorKind::BadParameter,
                  "bandwidth candidate outside (0, 0.5]: " + std::to_string(h));
    if (i > 0 && !(h > candidates_[i - 1]))
      throw Error(ErrorKind::BadParameter,
                  "bandwidth candidates must be strictly increasing");
  }
}

BandwidthGrid BandwidthGrid::geometric_default(const Sample& sample, int count)
{
  if (count < 1)
    throw Error(ErrorKind::BadParameter, "grid needs at least one candidate");
  const double lo = std::min(4.0 * sample.max_gap(), 0.4);
  const double hi = 0.4;
  if (count == 1 || lo >= hi)
    return BandwidthGrid({ hi });
  std::vector<double> c(static_cast<std::size_t>(count));
  const double ratio = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i)
    c[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i);
  c.back() = hi;
  return BandwidthGrid(std::move(c));
}

bool operator==(const CvScore& a, const CvScore& b)
{
  const bool same_score =
    (std::isnan(a.score) && std::isnan(b.score)) || a.score == b.score;
  return a.bandwidth == b.bandwidth && same_score &&
         a.disqualified == b.disqualified && a.reason == b.reason;
}

std::vector<int> block_fold_assignment(std::size_t count,
                                       int order,
                                       int folds,
                                       std::uint64_t seed)
{
  if (folds < 2)
    throw Error(ErrorKind::BadParameter, "need at least 2 folds");
  const std::size_t min_block = static_cast<std::size_t>(order) + 1;
  const auto k = static_cast<std::size_t>(folds);
  if (count < k * min_block)
    throw Error(ErrorKind::TooFewObservations,
                "too few pseudoresiduals for " + std::to_string(folds) + " folds");
  const std::size_t target = 4 * min_block;
  const std::size_t per_fold = std::max<std::size_t>(1, count / (k * target));
  const std::size_t blocks = per_fold * k;

  std::vector<int> label_of_block(blocks);
  for (std::size_t b = 0; b < blocks; ++b)
    label_of_block[b] = static_cast<int>(b % k);
  std::mt19937_64 rng(seed);
  std::shuffle(label_of_block.begin(), label_of_block.end(), rng);

  std::vector<int> labels(count);
  for (std::size_t i = 0; i < count; ++i)
    labels[i] = label_of_block[i * blocks / count];
  return labels;
}

CvReport cv_select(const Sample& sample,
                   const DifferenceSequence& seq,
                   const SmootherConfig& config_base,
                   const BandwidthGrid& grid,
                   int folds,
                   std::uint64_t seed,
                   unsigned threads)
{
  const PseudoresidualSeries series = pseudoresiduals(sample, seq);
  const std::vector<double> sq = series.squares();
  const std::vector<int> labels =
    block_fold_assignment(sq.size(), seq.order(), folds, seed);

  struct FoldData
  {
    std::vector<double> train_x, train_z, test_x, test_z;
  };
  std::vector<FoldData> data(static_cast<std::size_t>(folds));
  const auto r = static_cast<std::size_t>(seq.order());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    FoldData& own = data[static_cast<std::size_t>(labels[i])];
    own.test_x.push_back(series.center_xs[i]);
    own.test_z.push_back(sq[i]);
    // Training sets skip points within `order` of a held-out index, where
    // pseudoresiduals share observations with the test point.
    const std::size_t lo = i >= r ? i - r : 0;
    const std::size_t hi = std::min(sq.size() - 1, i + r);
    for (int f = 0; f < folds; ++f) {
      bool near = false;
      for (std::size_t j = lo; j <= hi && !near; ++j)
        near = labels[j] == f;
      if (near)
        continue;
      data[static_cast<std::size_t>(f)].train_x.push_back(series.center_xs[i]);
      data[static_cast<std::size_t>(f)].train_z.push_back(sq[i]);
    }
  }

  const auto& candidates = grid.candidates();
  const std::size_t tasks = candidates.size() * static_cast<std::size_t>(folds);
  std::vector<double> partial(tasks, 0.0);
  std::vector<std::string> failure(tasks);

  parallel_for(tasks, threads, [&](std::size_t t) {
    const std::size_t c = t / static_cast<std::size_t>(folds);
    const FoldData& fd = data[t % static_cast<std::size_t>(folds)];
    SmootherConfig config = config_base;
    config.bandwidth = candidates[c];
    try {
      const LinearPlan plan(fd.train_x, config, fd.test_x);
      const std::vector<double> pred = plan.apply(fd.train_z);
      double s = 0.0;
      for (std::size_t k = 0; k < pred.size(); ++k) {
        const double e = fd.test_z[k] - pred[k];
        s += e * e;
      }
      partial[t] = s;
    } catch (const Error& e) {
      failure[t] = e.what();
    }
  });

  CvReport report;
  report.folds = folds;
  report.seed = seed;
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    CvScore score;
    score.bandwidth = candidates[c];
    for (int f = 0; f < folds; ++f) {
      const std::size_t t = c * static_cast<std::size_t>(folds) +
                            static_cast<std::size_t>(f);
      if (!failure[t].empty() && !score.disqualified) {
        score.disqualified = true;
        score.reason = failure[t];
      }
      score.score += partial[t];
    }
    if (score.disqualified) {
      score.score = std::numeric_limits<double>::quiet_NaN();
    } else if (score.score < best) {
      // strict comparison keeps the smaller h on ties
      best = score.score;
      report.selected = score.bandwidth;
      found = true;
    }
    report.scores.push_back(std::move(score));
  }
  if (!found)
    throw Error(ErrorKind::AllCandidatesFailed,
                "every bandwidth candidate failed on some fold; first: " +
                  report.scores.front().reason);
  return report;
}

} // namespace varest
