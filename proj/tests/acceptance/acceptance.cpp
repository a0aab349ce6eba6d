// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Seeds are fixed so every run reports the same numbers.

#include "varest/diffseq.hpp"
#include "varest/error.hpp"
#include "varest/estimator.hpp"
#include "varest/scenario.hpp"
#include "varest/serialize.hpp"
#include "varest/simlab.hpp"
#include "varest/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace varest;

namespace {

struct Outcome
{
  bool pass = false;
  std::string detail;
};

unsigned worker_threads()
{
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string fmt(const char* f, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome optimal_constants()
{
  double worst = 0.0;
  for (int r = 1; r <= 6; ++r) {
    const double gap = std::abs(variance_factor(optimal_sequence(r)) - (2.0 * r + 1.0) / r);
    worst = std::max(worst, gap);
  }
  return { worst <= 1e-6, fmt("max |C - (2r+1)/r| over r=1..6 = %.3g (limit 1e-6)", worst) };
}

Outcome estimator_algebra()
{
  const auto gsjs = standard_sequence(StandardSequence::gsjs);
  const auto fd = standard_sequence(StandardSequence::first_difference);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> size(3, 500);
  std::normal_distribution<double> z;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = size(rng);
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = static_cast<double>(i + 1) / static_cast<double>(n + 1);
      ys[i] = 5.0 * z(rng) - 2.0;
    }
    const Sample s(std::move(xs), std::move(ys));
    const double g = gsjs_estimate(s);
    const double r = rice_estimate(s);
    worst = std::max(worst, std::abs(g - hkt_estimate(s, gsjs)) / std::max(1.0, g));
    worst = std::max(worst, std::abs(r - hkt_estimate(s, fd)) / std::max(1.0, r));
  }
  return { worst <= 1e-12, fmt("max relative gap over 1000 inputs = %.3g (limit 1e-12)", worst) };
}

Outcome smoother_exactness()
{
  constexpr KernelKind kernels[] = { KernelKind::epanechnikov, KernelKind::uniform,
                                     KernelKind::triangular, KernelKind::biweight };
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0), coef(-3.0, 3.0);
  double worst_moment = 0.0, worst_repro = 0.0;
  int fits = 0;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> xs(400);
    for (auto& x : xs)
      x = u(rng);
    std::sort(xs.begin(), xs.end());
    for (auto k : kernels) {
      for (int p = 0; p <= 4; ++p) {
        const SmootherConfig cfg{ KernelSpec(k), p, 0.1 + 0.04 * p, true };
        std::vector<double> c(p + 1);
        for (auto& v : c)
          v = coef(rng);
        std::vector<double> zs(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
          double v = 0.0;
          for (int j = p; j >= 0; --j)
            v = v * xs[i] + c[j];
          zs[i] = v;
        }
        for (double x : { 0.0, 0.003, 0.25, 0.5, 0.81, 0.997, 1.0 }) {
          const LocalFit fit = fit_at(xs, zs, cfg, x);
          const auto& w = fit.weights;
          const double h = w.bandwidth;
          for (int q = 0; q <= p; ++q) {
            double m = 0.0;
            for (std::size_t i = 0; i < w.weights.size(); ++i)
              m += std::pow((xs[w.first + i] - x) / h, q) * w.weights[i];
            worst_moment = std::max(worst_moment, std::abs(m - (q == 0 ? 1.0 : 0.0)));
          }
          double truth = 0.0;
          for (int j = p; j >= 0; --j)
            truth = truth * x + c[j];
          worst_repro = std::max(worst_repro,
                                 std::abs(fit.intercept() - truth) / std::max(1.0, std::abs(truth)));
          ++fits;
        }
      }
    }
  }
  return { worst_moment <= 1e-9 && worst_repro <= 1e-9,
           fmt("%d fits: max moment error %.3g, max reproduction error %.3g (limit 1e-9)",
               fits, worst_moment, worst_repro) };
}

Outcome homoscedastic_unbiased()
{
  EstimatorConfig est;
  const auto rep = normality_experiment(homoscedastic_scenario(500, 1.0, 2.0), est, 0.5, 2000, 4,
                                        worker_threads());
  const double se = rep.draw_sd / std::sqrt(static_cast<double>(rep.draws.size()));
  const double z = (rep.draw_mean - 2.0) / se;
  return { std::abs(z) <= 3.0,
           fmt("mean Vhat(0.5) = %.5f, SE %.5f, |z| = %.2f (limit 3)", rep.draw_mean, se, std::abs(z)) };
}

RateReport rate_run(bool pointwise, std::uint64_t seed)
{
  EstimatorConfig est;
  est.degree = 3;
  est.bandwidth = BandwidthRule::power_law(0.5, 0.2);
  RateOptions opt;
  opt.pointwise = pointwise;
  opt.x0 = 0.5;
  opt.replications = 100;
  opt.seed = seed;
  opt.threads = worker_threads();
  return rate_experiment(default_smooth_scenario(512), { 512, 1024, 2048, 4096, 8192 }, est, opt);
}

Outcome global_rate()
{
  const auto rep = rate_run(false, 5);
  return { std::abs(rep.slope + 0.8) <= 0.15,
           fmt("slope %.3f (SE %.3f), target -0.8 +/- 0.15", rep.slope, rep.slope_se) };
}

Outcome pointwise_rate()
{
  const auto rep = rate_run(true, 6);
  return { std::abs(rep.slope + 0.8) <= 0.2,
           fmt("slope %.3f (SE %.3f), target -0.8 +/- 0.2", rep.slope, rep.slope_se) };
}

Outcome bias_variance()
{
  EstimatorConfig est;
  est.degree = 1;
  std::vector<double> hs;
  for (int i = 0; i < 6; ++i)
    hs.push_back(0.03 * std::pow(10.0, i / 5.0));
  const auto rep = bias_variance_experiment(default_smooth_scenario(4096), est, hs, 20000, 7,
                                            worker_threads());
  const bool ok = rep.bias_slope >= 3.4 && rep.bias_slope <= 4.6 && rep.variance_slope >= -1.3 &&
                  rep.variance_slope <= -0.7;
  return { ok, fmt("h in [0.03, 0.3]: bias^2 slope %.3f in [3.4, 4.6], variance slope %.3f in [-1.3, -0.7]",
                   rep.bias_slope, rep.variance_slope) };
}

Outcome normality()
{
  EstimatorConfig est;
  est.sequence = SequenceSpec::of_optimal(6);
  est.kernel = KernelKind::uniform;
  est.bandwidth = BandwidthRule::power_law(3.0, 0.3);

  bool ok = true;
  std::string detail;
  for (int t = 0; t < 2; ++t) {
    Scenario s = default_smooth_scenario(t == 0 ? 2000 : 4000);
    if (t == 1)
      s.error_law = ErrorLaw{ ErrorLawKind::student_t, 9.0 };
    const auto rep = normality_experiment(s, est, 0.5, 1000, 8, worker_threads());
    const bool pass = std::abs(rep.skewness) <= 0.15 && std::abs(rep.excess_kurtosis) <= 0.3 &&
                      rep.ks_distance <= 0.05;
    ok = ok && pass;
    detail += fmt("%s%s n=%zu: skew %.3f, exkurt %.3f, KS %.4f", t ? "; " : "",
                  t ? "student_t(9)" : "gaussian", s.n, rep.skewness, rep.excess_kurtosis, rep.ks_distance);
  }
  return { ok, detail + " (limits 0.15, 0.3, 0.05)" };
}

Outcome mean_insensitivity()
{
  EstimatorConfig est;
  est.degree = 3;
  est.bandwidth = BandwidthRule::power_law(0.5, 0.2);
  const auto rep = mean_effect_experiment(2.0, 0.3, { 1024, 2048, 4096 }, 200, 9, est, worker_threads());
  const auto& pts = rep.points;
  bool monotone = true;
  for (std::size_t k = 1; k < pts.size(); ++k)
    monotone = monotone && pts[k].ratio <= pts[k - 1].ratio + 2.0 * std::hypot(pts[k].ratio_se, pts[k - 1].ratio_se);
  const double last = pts.back().ratio;
  std::string detail = "ratios";
  for (const auto& p : pts)
    detail += fmt(" n=%zu: %.6f (SE %.2g)", p.n, p.ratio, p.ratio_se);
  return { last <= 1.5 && monotone, detail + "; need <= 1.5 at 4096, non-increasing within 2 SE" };
}

Outcome determinism()
{
  EstimatorConfig cv;
  cv.bandwidth = BandwidthRule::cross_validated(5, 6);
  EstimatorConfig cubic;
  cubic.degree = 3;
  cubic.bandwidth = BandwidthRule::power_law(0.5, 0.2);

  const auto reports = [&](unsigned threads) {
    RiskOptions ro;
    ro.x0s = { 0.25, 0.5 };
    ro.replications = 12;
    ro.seed = 10;
    ro.threads = threads;
    RateOptions rate;
    rate.replications = 10;
    rate.seed = 10;
    rate.threads = threads;
    std::string all;
    all += dump(json(risk_report(default_smooth_scenario(600), EstimatorConfig{}, ro)));
    all += dump(json(risk_report(default_smooth_scenario(600), cv, ro)));
    all += dump(json(rate_experiment(default_smooth_scenario(256), { 256, 512, 1024, 2048 }, cubic, rate)));
    all += dump(json(normality_experiment(default_smooth_scenario(500), EstimatorConfig{}, 0.5, 500, 10, threads)));
    all += dump(json(mean_effect_experiment(2.0, 0.3, { 512, 1024 }, 20, 10, cubic, threads)));
    all += dump(json(bias_variance_experiment(default_smooth_scenario(800), EstimatorConfig{}, { 0.05, 0.1, 0.2 },
                                              50, 10, threads)));
    return all;
  };
  const std::string one = reports(1);
  const std::string again = reports(1);
  const std::string three = reports(3);
  const std::string eight = reports(8);
  const bool ok = one == again && one == three && one == eight;
  return { ok, fmt("%zu bytes of JSON from 6 reports; repeat %s, 3 threads %s, 8 threads %s", one.size(),
                   one == again ? "identical" : "differs", one == three ? "identical" : "differs",
                   one == eight ? "identical" : "differs") };
}

} // namespace

int main()
{
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
    { "optimal-sequence constants", optimal_constants },
    { "estimator algebra", estimator_algebra },
    { "smoother exactness", smoother_exactness },
    { "unbiasedness under homoscedasticity", homoscedastic_unbiased },
    { "global rate", global_rate },
    { "pointwise rate", pointwise_rate },
    { "bias/variance structure", bias_variance },
    { "normality", normality },
    { "mean insensitivity", mean_insensitivity },
    { "determinism", determinism },
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = { false, std::string("exception: ") + e.what() };
    }
    failed += !o.pass;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
