#include "varest/simlab.hpp"

#include "varest/error.hpp"
#include "varest/parallel.hpp"
#include "varest/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <set>
#include <sstream>

namespace varest {

// ---------------------------------------------------------------------------
// configuration helpers

DifferenceSequence SequenceSpec::resolve() const
{
  switch (choice) {
    case Choice::standard:
      return standard_sequence(standard);
    case Choice::optimal:
      return optimal_sequence(order, 1e-9);
    case Choice::explicit_coeffs:
      return DifferenceSequence::validate(coeffs);
  }
  throw Error(ErrorKind::UnknownKind, "unknown sequence choice");
}

SequenceSpec SequenceSpec::of_standard(StandardSequence kind)
{
  SequenceSpec s;
  s.choice = Choice::standard;
  s.standard = kind;
  s.order = kind == StandardSequence::gsjs ? 2 : 1;
  return s;
}

SequenceSpec SequenceSpec::of_optimal(int order)
{
  SequenceSpec s;
  s.choice = Choice::optimal;
  s.order = order;
  return s;
}

SequenceSpec SequenceSpec::of_coeffs(std::vector<double> coeffs)
{
  SequenceSpec s;
  s.choice = Choice::explicit_coeffs;
  s.order = static_cast<int>(coeffs.size()) - 1;
  s.coeffs = std::move(coeffs);
  return s;
}

BandwidthRule BandwidthRule::fixed_h(double h)
{
  BandwidthRule r;
  r.kind = Kind::fixed;
  r.value = h;
  return r;
}

BandwidthRule BandwidthRule::rate(double gamma, double scale)
{
  if (!(gamma > 0.0))
    throw Error(ErrorKind::BadParameter, "gamma must be positive");
  return power_law(scale, 1.0 / (2.0 * gamma + 1.0));
}

BandwidthRule BandwidthRule::power_law(double scale, double exponent)
{
  BandwidthRule r;
  r.kind = Kind::power;
  r.scale = scale;
  r.exponent = exponent;
  return r;
}

BandwidthRule BandwidthRule::cross_validated(int folds, int candidates)
{
  BandwidthRule r;
  r.kind = Kind::cv;
  r.folds = folds;
  r.candidates = candidates;
  return r;
}

double BandwidthRule::at(std::size_t n) const
{
  switch (kind) {
    case Kind::fixed:
      return value;
    case Kind::power:
      return std::min(scale * std::pow(static_cast<double>(n), -exponent), 0.5);
    case Kind::cv:
      return std::numeric_limits<double>::quiet_NaN();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> GridSpec::values() const
{
  const double a = full_interval ? 0.0 : lo;
  const double b = full_interval ? 1.0 : hi;
  if (points < 2 || !(b > a))
    throw Error(ErrorKind::BadParameter, "risk grid needs >= 2 points on a nonempty interval");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] = a + (b - a) * i / (points - 1);
  return g;
}

std::string GridSpec::note() const
{
  std::ostringstream s;
  if (full_interval)
    s << "integrated over the full interval [0, 1]";
  else
    s << "integrated over [" << lo << ", " << hi
      << "] only; boundary margins excluded from the integral";
  s << " with " << points << "-point trapezoidal rule";
  return s.str();
}

// ---------------------------------------------------------------------------
// replication engine

namespace {

//! Computes estimates at fixed evaluation points from one response vector.
using Evaluator = std::function<
  void(std::span<const double> ys, std::uint64_t rep_seed, std::span<double> out)>;

struct Replications
{
  std::size_t width = 0;
  std::vector<double> values; // replications x width, row major
  std::vector<char> failed;
  int failures = 0;

  std::span<const double> row(std::size_t r) const
  {
    return { values.data() + r * width, width };
  }
};

Replications run_replications(const SampleGenerator& gen,
                              std::size_t width,
                              const Evaluator& evaluate,
                              int replications,
                              std::uint64_t seed,
                              std::uint64_t stream,
                              unsigned threads)
{
  if (replications < 2)
    throw Error(ErrorKind::BadParameter, "need at least 2 replications");
  const auto reps = static_cast<std::size_t>(replications);
  Replications out;
  out.width = width;
  out.values.assign(reps * width, std::numeric_limits<double>::quiet_NaN());
  out.failed.assign(reps, 0);
  const std::size_t n = gen.xs().size();

  parallel_for(reps, threads, [&](std::size_t r) {
    const std::uint64_t rep_seed = derive_seed(seed, stream, r);
    std::mt19937_64 rng(rep_seed);
    std::vector<double> ys(n);
    gen.draw(rng, ys);
    std::span<double> row(out.values.data() + r * width, width);
    try {
      evaluate(ys, rep_seed, row);
    } catch (const Error&) {
      out.failed[r] = 1;
      std::fill(row.begin(), row.end(), std::numeric_limits<double>::quiet_NaN());
    }
  });
  out.failures = static_cast<int>(std::count(out.failed.begin(), out.failed.end(), 1));
  return out;
}

SmootherConfig smoother_for(const EstimatorConfig& est, double h)
{
  SmootherConfig c;
  c.kernel = KernelSpec(est.kernel);
  c.degree = est.degree;
  c.bandwidth = h;
  c.expand_to_minimum = est.expand_to_minimum;
  return c;
}

std::vector<double> centers_for(std::span<const double> xs, int order)
{
  const auto r = static_cast<std::size_t>(order);
  if (xs.size() < r + 1)
    throw Error(ErrorKind::TooFewObservations, "design shorter than the difference sequence");
  const std::size_t offset = r / 2;
  return { xs.begin() + static_cast<std::ptrdiff_t>(offset),
           xs.begin() + static_cast<std::ptrdiff_t>(offset + xs.size() - r) };
}

Evaluator failing_evaluator(const Error& e)
{
  return [kind = e.kind(), msg = e.detail()](std::span<const double>,
                                             std::uint64_t,
                                             std::span<double>) {
    throw Error(kind, msg);
  };
}

//! Local polynomial estimator with a precomputed linear plan.
Evaluator plan_evaluator(std::span<const double> xs,
                         const DifferenceSequence& seq,
                         const SmootherConfig& config,
                         std::span<const double> points,
                         unsigned threads)
{
  std::shared_ptr<const LinearPlan> plan;
  try {
    plan = std::make_shared<const LinearPlan>(centers_for(xs, seq.order()),
                                              config, points, threads);
  } catch (const Error& e) {
    return failing_evaluator(e);
  }
  return [plan, seq](std::span<const double> ys, std::uint64_t, std::span<double> out) {
    std::vector<double> sq(ys.size() - static_cast<std::size_t>(seq.order()));
    pseudoresidual_squares(ys, seq, sq);
    plan->apply(sq, out);
  };
}

Evaluator make_evaluator(const Scenario& scenario,
                         const SampleGenerator& gen,
                         const EstimatorConfig& est,
                         std::span<const double> points,
                         unsigned threads)
{
  std::vector<double> pts(points.begin(), points.end());
  switch (est.kind) {
    case EstimatorConfig::Kind::oracle: {
      std::vector<double> truth(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i)
        truth[i] = evaluate(scenario.var_fn, pts[i]) + est.oracle_offset;
      return [truth](std::span<const double>, std::uint64_t, std::span<double> out) {
        std::copy(truth.begin(), truth.end(), out.begin());
      };
    }
    case EstimatorConfig::Kind::rice:
    case EstimatorConfig::Kind::hkt: {
      const DifferenceSequence seq =
        est.kind == EstimatorConfig::Kind::rice
          ? standard_sequence(StandardSequence::first_difference)
          : est.sequence.resolve();
      std::vector<double> xs(gen.xs().begin(), gen.xs().end());
      return [seq, xs](std::span<const double> ys, std::uint64_t, std::span<double> out) {
        const Sample s(xs, { ys.begin(), ys.end() });
        const double v = hkt_estimate(s, seq);
        std::fill(out.begin(), out.end(), v);
      };
    }
    case EstimatorConfig::Kind::local_polynomial:
      break;
  }

  const DifferenceSequence seq = est.sequence.resolve();
  if (est.bandwidth.kind != BandwidthRule::Kind::cv) {
    const double h = est.bandwidth.at(gen.xs().size());
    return plan_evaluator(gen.xs(), seq, smoother_for(est, h), pts, threads);
  }

  std::vector<double> xs(gen.xs().begin(), gen.xs().end());
  return [est, seq, xs, pts](std::span<const double> ys,
                             std::uint64_t rep_seed,
                             std::span<double> out) {
    const Sample s(xs, { ys.begin(), ys.end() });
    const CvReport cv = cv_select(s, seq, smoother_for(est, 0.1),
                                  BandwidthGrid::geometric_default(s, est.bandwidth.candidates),
                                  est.bandwidth.folds, rep_seed);
    const std::vector<double> v =
      estimate_variance(s, seq, smoother_for(est, cv.selected), pts).values;
    std::copy(v.begin(), v.end(), out.begin());
  };
}

struct Losses
{
  std::vector<double> global;                // per replication, NaN if failed
  std::vector<std::vector<double>> pointwise; // per x0, per replication
  int failures = 0;
};

Losses compute_losses(const Scenario& scenario,
                      const EstimatorConfig& est,
                      const std::vector<double>& x0s,
                      bool global,
                      const GridSpec& grid_spec,
                      int replications,
                      std::uint64_t seed,
                      unsigned threads)
{
  scenario.check();
  const SampleGenerator gen(scenario);
  const std::vector<double> grid = global ? grid_spec.values() : std::vector<double>{};
  std::vector<double> points = grid;
  points.insert(points.end(), x0s.begin(), x0s.end());

  std::vector<double> truth(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    truth[i] = evaluate(scenario.var_fn, points[i]);

  const Evaluator eval = make_evaluator(scenario, gen, est, points, threads);
  const Replications reps = run_replications(gen, points.size(), eval, replications,
                                             seed, scenario.n, threads);

  Losses out;
  out.failures = reps.failures;
  const auto R = static_cast<std::size_t>(replications);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.global.assign(global ? R : 0, nan);
  out.pointwise.assign(x0s.size(), std::vector<double>(R, nan));
  std::vector<double> sq(grid.size());
  for (std::size_t r = 0; r < R; ++r) {
    if (reps.failed[r])
      continue;
    const auto row = reps.row(r);
    if (global) {
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const double e = row[g] - truth[g];
        sq[g] = e * e;
      }
      out.global[r] = trapezoid(grid, sq);
    }
    for (std::size_t k = 0; k < x0s.size(); ++k) {
      const double e = row[grid.size() + k] - truth[grid.size() + k];
      out.pointwise[k][r] = e * e;
    }
  }
  return out;
}

std::vector<double> finite_only(const std::vector<double>& v)
{
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v)
    if (!std::isnan(x))
      out.push_back(x);
  return out;
}

MeanWithError summarize(const std::vector<double>& losses)
{
  const std::vector<double> ok = finite_only(losses);
  if (ok.size() < 2)
    return { std::numeric_limits<double>::quiet_NaN(),
             std::numeric_limits<double>::quiet_NaN() };
  return mean_with_error(ok);
}

double report_bandwidth(const EstimatorConfig& est, std::size_t n)
{
  if (est.kind != EstimatorConfig::Kind::local_polynomial)
    return std::numeric_limits<double>::quiet_NaN();
  return est.bandwidth.at(n);
}

} // namespace

// ---------------------------------------------------------------------------
// risks

RiskReport risk_report(const Scenario& scenario,
                       const EstimatorConfig& estimator,
                       const RiskOptions& options)
{
  const Losses losses = compute_losses(scenario, estimator, options.x0s, options.global,
                                       options.grid, options.replications,
                                       options.seed, options.threads);
  RiskReport rep;
  rep.scenario = scenario.name;
  rep.estimator = estimator;
  rep.n = scenario.n;
  rep.bandwidth = report_bandwidth(estimator, scenario.n);
  rep.replications = options.replications;
  rep.failures = losses.failures;
  rep.grid = options.grid;
  rep.grid_note = options.grid.note();
  rep.seed = options.seed;
  for (std::size_t k = 0; k < options.x0s.size(); ++k) {
    const MeanWithError m = summarize(losses.pointwise[k]);
    rep.pointwise.push_back({ options.x0s[k], m.mean, m.se });
  }
  rep.has_global = options.global;
  if (options.global) {
    const MeanWithError m = summarize(losses.global);
    rep.global_risk = m.mean;
    rep.global_se = m.se;
  }
  return rep;
}

RiskValue pointwise_risk(const Scenario& scenario,
                         const EstimatorConfig& estimator,
                         double x0,
                         int replications,
                         std::uint64_t seed,
                         unsigned threads)
{
  RiskOptions opt;
  opt.x0s = { x0 };
  opt.global = false;
  opt.replications = replications;
  opt.seed = seed;
  opt.threads = threads;
  const RiskReport rep = risk_report(scenario, estimator, opt);
  return { rep.pointwise.front().risk, rep.pointwise.front().se, rep.failures };
}

RiskValue global_risk(const Scenario& scenario,
                      const EstimatorConfig& estimator,
                      const GridSpec& grid,
                      int replications,
                      std::uint64_t seed,
                      unsigned threads)
{
  RiskOptions opt;
  opt.grid = grid;
  opt.replications = replications;
  opt.seed = seed;
  opt.threads = threads;
  const RiskReport rep = risk_report(scenario, estimator, opt);
  return { rep.global_risk, rep.global_se, rep.failures };
}

// ---------------------------------------------------------------------------
// rates

RateReport rate_experiment(const Scenario& base,
                           const std::vector<std::size_t>& ns,
                           const EstimatorConfig& estimator,
                           const RateOptions& options)
{
  const std::set<std::size_t> distinct(ns.begin(), ns.end());
  if (distinct.size() < 4)
    throw Error(ErrorKind::BadParameter, "rate experiment needs at least 4 distinct n");
  if (!(options.gamma > 0.0))
    throw Error(ErrorKind::BadParameter, "gamma must be positive");
  if (estimator.kind == EstimatorConfig::Kind::local_polynomial &&
      estimator.degree <= static_cast<int>(std::floor(options.gamma)))
    throw Error(ErrorKind::BadParameter,
                "local polynomial degree must exceed floor(gamma)");

  RateReport rep;
  rep.scenario = base.name;
  rep.estimator = estimator;
  rep.pointwise = options.pointwise;
  rep.x0 = options.x0;
  rep.gamma = options.gamma;
  rep.replications = options.replications;
  rep.seed = options.seed;
  rep.grid = options.grid;
  rep.theoretical_slope = -2.0 * options.gamma / (2.0 * options.gamma + 1.0);

  for (std::size_t n : distinct) {
    RiskOptions opt;
    opt.global = !options.pointwise;
    if (options.pointwise)
      opt.x0s = { options.x0 };
    opt.grid = options.grid;
    opt.replications = options.replications;
    opt.seed = options.seed;
    opt.threads = options.threads;
    const RiskReport risk = risk_report(base.with_n(n), estimator, opt);

    if (risk.failures > 0.05 * options.replications) {
      std::ostringstream msg;
      msg << risk.failures << " of " << options.replications
          << " replications failed at n=" << n;
      throw Error(ErrorKind::ExcessiveFailures, msg.str());
    }
    RatePoint p;
    p.n = n;
    p.bandwidth = risk.bandwidth;
    p.risk = options.pointwise ? risk.pointwise.front().risk : risk.global_risk;
    p.se = options.pointwise ? risk.pointwise.front().se : risk.global_se;
    p.failures = risk.failures;
    rep.points.push_back(p);
  }
  if (rep.points.front().failures > 0.01 * options.replications)
    rep.points.front().used_in_fit = false;

  std::vector<double> lx, ly;
  bool positive = true;
  for (const RatePoint& p : rep.points) {
    if (!p.used_in_fit)
      continue;
    if (!(p.risk > 0.0) || !std::isfinite(p.risk))
      positive = false;
    lx.push_back(std::log(static_cast<double>(p.n)));
    ly.push_back(std::log(p.risk));
  }
  rep.slope_defined = positive && lx.size() >= 3;
  if (rep.slope_defined) {
    const LineFit fit = ols_line(lx, ly);
    rep.slope = fit.slope;
    rep.slope_se = fit.slope_se;
  } else {
    rep.slope = std::numeric_limits<double>::quiet_NaN();
    rep.slope_se = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// normality

NormalityStats normality_statistics(std::span<const double> draws)
{
  NormalityStats s;
  s.mean = mean(draws);
  s.sd = std::sqrt(sample_variance(draws));
  s.standardized.resize(draws.size());
  for (std::size_t i = 0; i < draws.size(); ++i)
    s.standardized[i] = (draws[i] - s.mean) / s.sd;
  s.skewness = skewness(s.standardized);
  s.excess_kurtosis = excess_kurtosis(s.standardized);
  s.ks_distance = ks_distance_normal(s.standardized);
  return s;
}

NormalityReport normality_experiment(const Scenario& scenario,
                                     const EstimatorConfig& estimator,
                                     double x0,
                                     int replications,
                                     std::uint64_t seed,
                                     unsigned threads)
{
  if (replications < 500)
    throw Error(ErrorKind::BadParameter, "normality experiment needs R >= 500");
  scenario.check();
  const SampleGenerator gen(scenario);
  const std::vector<double> point{ x0 };
  const Evaluator eval = make_evaluator(scenario, gen, estimator, point, threads);
  const Replications reps =
    run_replications(gen, 1, eval, replications, seed, scenario.n, threads);

  NormalityReport rep;
  rep.scenario = scenario.name;
  rep.estimator = estimator;
  rep.n = scenario.n;
  rep.bandwidth = report_bandwidth(estimator, scenario.n);
  rep.x0 = x0;
  rep.replications = replications;
  rep.failures = reps.failures;
  rep.seed = seed;
  for (std::size_t r = 0; r < reps.failed.size(); ++r)
    if (!reps.failed[r])
      rep.draws.push_back(reps.row(r)[0]);
  if (rep.draws.size() < 2)
    throw Error(ErrorKind::ExcessiveFailures, "fewer than two successful replications");
  NormalityStats s = normality_statistics(rep.draws);
  rep.standardized = std::move(s.standardized);
  rep.draw_mean = s.mean;
  rep.draw_sd = s.sd;
  rep.skewness = s.skewness;
  rep.excess_kurtosis = s.excess_kurtosis;
  rep.ks_distance = s.ks_distance;
  return rep;
}

// ---------------------------------------------------------------------------
// mean effect

MeanEffectReport mean_effect_experiment(double gamma,
                                        double beta,
                                        const std::vector<std::size_t>& ns,
                                        int replications,
                                        std::uint64_t seed,
                                        const EstimatorConfig& estimator,
                                        unsigned threads,
                                        const GridSpec& grid)
{
  const double lower = gamma / (4.0 * gamma + 2.0);
  const double upper = gamma / (2.0 * gamma + 2.0);
  if (!(beta > lower && beta < upper)) {
    std::ostringstream msg;
    msg << "beta=" << beta << " outside (" << lower << ", " << upper << ")";
    throw Error(ErrorKind::BadParameter, msg.str());
  }
  MeanEffectReport rep;
  rep.gamma = gamma;
  rep.beta = beta;
  rep.estimator = estimator;
  rep.replications = replications;
  rep.seed = seed;
  rep.grid = grid;

  for (std::size_t n : ns) {
    Scenario rough = rough_mean_scenario(n, beta);
    rough.var_class.gamma = gamma;
    Scenario flat = default_smooth_scenario(n);
    flat.name = "zero_mean";
    flat.mean_fn = ConstantFn{ 0.0 };
    flat.var_class.gamma = gamma;

    // identical error draws for both means (stream keyed by n)
    const Losses lr = compute_losses(rough, estimator, {}, true, grid, replications, seed, threads);
    const Losses ls = compute_losses(flat, estimator, {}, true, grid, replications, seed, threads);

    MeanEffectPoint p;
    p.n = n;
    p.bandwidth = report_bandwidth(estimator, n);
    const MeanWithError mr = summarize(lr.global);
    const MeanWithError ms = summarize(ls.global);
    p.rough_risk = mr.mean;
    p.rough_se = mr.se;
    p.smooth_risk = ms.mean;
    p.smooth_se = ms.se;
    p.ratio = mr.mean / ms.mean;

    // delta method on paired replications
    std::vector<double> lin;
    for (std::size_t r = 0; r < lr.global.size(); ++r)
      if (!std::isnan(lr.global[r]) && !std::isnan(ls.global[r]))
        lin.push_back((lr.global[r] - p.ratio * ls.global[r]) / ms.mean);
    p.ratio_se = lin.size() >= 2 ? mean_with_error(lin).se
                                 : std::numeric_limits<double>::quiet_NaN();
    rep.points.push_back(p);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// bias / variance structure

BiasVarianceReport bias_variance_experiment(const Scenario& scenario,
                                            const EstimatorConfig& estimator,
                                            const std::vector<double>& bandwidths,
                                            int replications,
                                            std::uint64_t seed,
                                            unsigned threads,
                                            const GridSpec& grid_spec)
{
  if (estimator.kind != EstimatorConfig::Kind::local_polynomial)
    throw Error(ErrorKind::BadParameter, "bias/variance study needs the local polynomial estimator");
  if (bandwidths.size() < 2)
    throw Error(ErrorKind::BadParameter, "need at least two bandwidths");
  scenario.check();
  const SampleGenerator gen(scenario);
  const std::vector<double> grid = grid_spec.values();
  const std::size_t G = grid.size();
  const DifferenceSequence seq = estimator.sequence.resolve();

  std::vector<std::shared_ptr<const LinearPlan>> plans;
  const std::vector<double> centers = centers_for(gen.xs(), seq.order());
  for (double h : bandwidths)
    plans.push_back(std::make_shared<const LinearPlan>(
      centers, smoother_for(estimator, h), grid, threads));

  const Evaluator eval = [&plans, &seq, G](std::span<const double> ys,
                                           std::uint64_t,
                                           std::span<double> out) {
    std::vector<double> sq(ys.size() - static_cast<std::size_t>(seq.order()));
    pseudoresidual_squares(ys, seq, sq);
    for (std::size_t k = 0; k < plans.size(); ++k)
      plans[k]->apply(sq, out.subspan(k * G, G));
  };
  const Replications reps = run_replications(gen, plans.size() * G, eval, replications,
                                             seed, scenario.n, threads);

  std::vector<double> truth(G);
  for (std::size_t g = 0; g < G; ++g)
    truth[g] = evaluate(scenario.var_fn, grid[g]);

  BiasVarianceReport rep;
  rep.scenario = scenario.name;
  rep.n = scenario.n;
  rep.replications = replications - reps.failures;
  const double R = static_cast<double>(rep.replications);

  std::vector<double> bias_sq(G), var(G);
  for (std::size_t k = 0; k < plans.size(); ++k) {
    for (std::size_t g = 0; g < G; ++g) {
      double s = 0.0, s2 = 0.0;
      for (std::size_t r = 0; r < reps.failed.size(); ++r) {
        if (reps.failed[r])
          continue;
        const double v = reps.row(r)[k * G + g];
        s += v;
        s2 += v * v;
      }
      const double m = s / R;
      const double v = (s2 - R * m * m) / (R - 1.0);
      const double b = m - truth[g];
      // (mean - V)^2 overestimates bias^2 by Var/R on average
      bias_sq[g] = b * b - v / R;
      var[g] = v;
    }
    rep.points.push_back({ bandwidths[k], trapezoid(grid, bias_sq), trapezoid(grid, var) });
  }

  std::vector<double> lh, lb, lv;
  for (const BiasVariancePoint& p : rep.points) {
    lv.push_back(std::log(p.variance));
    if (p.sq_bias > 0.0) {
      lh.push_back(std::log(p.bandwidth));
      lb.push_back(std::log(p.sq_bias));
    }
  }
  rep.bias_slope = lh.size() >= 2 ? ols_line(lh, lb).slope
                                  : std::numeric_limits<double>::quiet_NaN();
  std::vector<double> all_lh;
  for (const BiasVariancePoint& p : rep.points)
    all_lh.push_back(std::log(p.bandwidth));
  rep.variance_slope = ols_line(all_lh, lv).slope;
  return rep;
}

} // namespace varest
