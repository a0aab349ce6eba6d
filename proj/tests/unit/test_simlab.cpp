#include "varest/error.hpp"
#include "varest/scenario.hpp"
#include "varest/serialize.hpp"
#include "varest/simlab.hpp"
#include "varest/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace varest;

namespace {

EstimatorConfig oracle(double offset)
{
  EstimatorConfig e;
  e.kind = EstimatorConfig::Kind::oracle;
  e.oracle_offset = offset;
  return e;
}

EstimatorConfig rice()
{
  EstimatorConfig e;
  e.kind = EstimatorConfig::Kind::rice;
  return e;
}

// Standard normal quantile by bisection on erfc, independent of the library.
double normal_quantile(double p)
{
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("scenario defaults and validation")
{
  const Scenario s = default_smooth_scenario(100);
  CHECK(s.n == 100);
  const auto xs = s.design_points();
  CHECK(xs.front() == doctest::Approx(1.0 / 101.0));
  CHECK(xs.back() == doctest::Approx(100.0 / 101.0));
  CHECK(evaluate(s.mean_fn, 0.25) == doctest::Approx(3.0));
  CHECK(evaluate(s.var_fn, 0.75) == doctest::Approx(0.25));
  CHECK_NOTHROW(s.check());

  Scenario low = s;
  low.var_fn = ConstantFn{ 0.1 };
  try {
    low.check();
    FAIL("expected BadScenario");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadScenario);
  }
  CHECK_THROWS_AS(generate_sample(low, 1), Error);

  Scenario t = s;
  t.error_law = ErrorLaw{ ErrorLawKind::student_t, 8.0 };
  CHECK_THROWS_AS(t.check(), Error);
  t.error_law.df = 9.0;
  CHECK_NOTHROW(t.check());
}

TEST_CASE("generate_sample is deterministic")
{
  const Scenario s = default_smooth_scenario(300);
  const Sample a = generate_sample(s, 5);
  const Sample b = generate_sample(s, 5);
  const Sample c = generate_sample(s, 6);
  CHECK(std::vector<double>(a.ys().begin(), a.ys().end()) ==
        std::vector<double>(b.ys().begin(), b.ys().end()));
  CHECK(std::vector<double>(a.ys().begin(), a.ys().end()) !=
        std::vector<double>(c.ys().begin(), c.ys().end()));
}

TEST_CASE("zero variance reproduces the mean")
{
  Scenario s = default_smooth_scenario(50);
  s.var_fn = ConstantFn{ 0.0 };
  s.var_class.delta = 0.0;
  const Sample smp = generate_sample(s, 3);
  for (std::size_t i = 0; i < smp.size(); ++i)
    CHECK(smp.ys()[i] == evaluate(s.mean_fn, smp.xs()[i]));
}

TEST_CASE("error laws have unit variance and the stated fourth moment")
{
  for (ErrorLaw law : { ErrorLaw{ ErrorLawKind::gaussian, 0.0 },
                        ErrorLaw{ ErrorLawKind::scaled_uniform, 0.0 },
                        ErrorLaw{ ErrorLawKind::student_t, 12.0 } }) {
    CAPTURE(to_string(law.kind));
    Scenario s = homoscedastic_scenario(4, 0.0, 1.0);
    s.error_law = law;
    const SampleGenerator gen(s);
    std::mt19937_64 rng(101);
    const int reps = 100000;
    std::vector<double> ys(4), e(reps);
    for (int r = 0; r < reps; ++r) {
      gen.draw(rng, ys);
      e[r] = ys[2];
    }
    const auto m = mean_with_error(e);
    CHECK(std::abs(m.mean) < 4.0 * m.se);
    const double mu4 = law.fourth_moment();
    const double var = sample_variance(e);
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt((mu4 - 1.0) / reps));
    double m4 = 0.0;
    for (double v : e)
      m4 += v * v * v * v;
    m4 /= reps;
    CHECK(m4 == doctest::Approx(mu4).epsilon(0.1));
  }
  CHECK(ErrorLaw{ ErrorLawKind::scaled_uniform, 0.0 }.fourth_moment() == doctest::Approx(1.8));
  CHECK(ErrorLaw{ ErrorLawKind::student_t, 9.0 }.fourth_moment() == doctest::Approx(3.0 + 6.0 / 5.0));
}

TEST_CASE("Monte Carlo moments at fixed design points")
{
  const Scenario s = default_smooth_scenario(20);
  const SampleGenerator gen(s);
  const int reps = 100000;
  std::vector<double> ys(20);
  std::vector<std::vector<double>> cols(3, std::vector<double>(reps));
  std::mt19937_64 rng(4);
  for (int r = 0; r < reps; ++r) {
    gen.draw(rng, ys);
    cols[0][r] = ys[0];
    cols[1][r] = ys[7];
    cols[2][r] = ys[19];
  }
  const std::size_t idx[] = { 0, 7, 19 };
  const auto xs = s.design_points();
  for (int k = 0; k < 3; ++k) {
    const double g = evaluate(s.mean_fn, xs[idx[k]]);
    const double v = evaluate(s.var_fn, xs[idx[k]]);
    const auto m = mean_with_error(cols[k]);
    CHECK(std::abs(m.mean - g) < 4.0 * m.se);
    CHECK(std::abs(sample_variance(cols[k]) - v) < 4.0 * v * std::sqrt(2.0 / reps));
  }
}

TEST_CASE("derived seeds differ across streams")
{
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
}

TEST_CASE("risk of calibration estimators")
{
  const Scenario s = default_smooth_scenario(200);
  CHECK(pointwise_risk(s, oracle(0.0), 0.3, 5, 1).risk == 0.0);
  CHECK(pointwise_risk(s, oracle(1.0), 0.3, 5, 1).risk == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(global_risk(s, oracle(0.0), GridSpec{}, 5, 1).risk == 0.0);
  GridSpec full;
  full.full_interval = true;
  CHECK(global_risk(s, oracle(1.0), full, 5, 1).risk == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(pointwise_risk(s, oracle(0.0), 0.3, 1, 1), Error);
}

TEST_CASE("Rice risk shrinks like 1/n")
{
  const auto r500 = pointwise_risk(homoscedastic_scenario(500), rice(), 0.5, 4000, 7);
  const auto r2000 = pointwise_risk(homoscedastic_scenario(2000), rice(), 0.5, 4000, 7);
  CHECK(r500.risk / r2000.risk == doctest::Approx(4.0).epsilon(0.3));
}

TEST_CASE("trapezoidal grid refinement changes the global risk by under 1%")
{
  const Scenario s = default_smooth_scenario(1000);
  EstimatorConfig est;
  GridSpec coarse, fine;
  fine.points = 1001;
  const auto a = global_risk(s, est, coarse, 100, 3);
  const auto b = global_risk(s, est, fine, 100, 3);
  CHECK(std::abs(a.risk - b.risk) < 0.01 * b.risk);
}

TEST_CASE("constant mean shifts do not change the risk")
{
  EstimatorConfig est;
  RiskOptions opt;
  opt.x0s = { 0.5 };
  opt.replications = 50;
  opt.seed = 8;
  const auto a = risk_report(homoscedastic_scenario(800, 0.0, 2.0), est, opt);
  const auto b = risk_report(homoscedastic_scenario(800, 5.0, 2.0), est, opt);
  CHECK(a.global_risk == doctest::Approx(b.global_risk).epsilon(1e-8));
  CHECK(a.pointwise[0].risk == doctest::Approx(b.pointwise[0].risk).epsilon(1e-8));
}

TEST_CASE("risk reports are reproducible and thread independent")
{
  const Scenario s = default_smooth_scenario(700);
  EstimatorConfig est;
  RiskOptions opt;
  opt.x0s = { 0.25, 0.5 };
  opt.replications = 40;
  opt.seed = 77;
  opt.threads = 1;
  const std::string a = dump(json(risk_report(s, est, opt)));
  opt.threads = 4;
  const std::string b = dump(json(risk_report(s, est, opt)));
  CHECK(a == b);

  est.bandwidth = BandwidthRule::cross_validated(5);
  opt.replications = 6;
  opt.threads = 1;
  const std::string c = dump(json(risk_report(s, est, opt)));
  opt.threads = 3;
  CHECK(c == dump(json(risk_report(s, est, opt))));
}

TEST_CASE("doubling replications halves the squared standard error")
{
  const Scenario s = default_smooth_scenario(500);
  EstimatorConfig est;
  const auto a = global_risk(s, est, GridSpec{}, 400, 10);
  const auto b = global_risk(s, est, GridSpec{}, 800, 11);
  const double ratio = (b.se * b.se) / (a.se * a.se);
  CHECK(ratio > 0.35);
  CHECK(ratio < 0.7);
}

TEST_CASE("failed replications are counted, not fatal")
{
  const Scenario s = default_smooth_scenario(100);
  EstimatorConfig est;
  est.bandwidth = BandwidthRule::fixed_h(0.001);
  const auto r = global_risk(s, est, GridSpec{}, 5, 1);
  CHECK(r.failures == 5);
  CHECK(std::isnan(r.risk));
}

TEST_CASE("rate experiment guards and degenerate slope")
{
  const Scenario s = default_smooth_scenario(100);
  RateOptions opt;
  opt.replications = 5;
  opt.seed = 1;
  CHECK_THROWS_AS(rate_experiment(s, { 100, 200, 400 }, EstimatorConfig{}, opt), Error);
  EstimatorConfig lin;
  lin.degree = 2;
  CHECK_THROWS_AS(rate_experiment(s, { 100, 200, 400, 800 }, lin, opt), Error);

  const auto rep = rate_experiment(s, { 100, 200, 400, 800 }, oracle(0.0), opt);
  CHECK_FALSE(rep.slope_defined);
  CHECK(std::isnan(rep.slope));
  for (const auto& p : rep.points)
    CHECK(p.risk == 0.0);
  CHECK(rep.theoretical_slope == doctest::Approx(-0.8));

  EstimatorConfig bad;
  bad.degree = 3;
  bad.bandwidth = BandwidthRule::fixed_h(0.001);
  try {
    rate_experiment(s, { 100, 200, 400, 800 }, bad, opt);
    FAIL("expected ExcessiveFailures");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ExcessiveFailures);
  }
}

TEST_CASE("rate experiment risks decrease with n")
{
  EstimatorConfig est;
  est.degree = 3;
  est.bandwidth = BandwidthRule::rate(2.0, 0.5);
  RateOptions opt;
  opt.replications = 40;
  opt.seed = 2;
  const auto rep = rate_experiment(default_smooth_scenario(100), { 256, 512, 1024, 2048 }, est, opt);
  for (std::size_t i = 1; i < rep.points.size(); ++i)
    CHECK(rep.points[i].risk < rep.points[i - 1].risk);
  CHECK(rep.slope_defined);
  CHECK(rep.slope < 0.0);
}

TEST_CASE("normality diagnostics on exact normal quantiles")
{
  const int m = 1000;
  std::vector<double> q(m);
  for (int i = 0; i < m; ++i)
    q[i] = normal_quantile((i + 0.5) / m);
  const auto s = normality_statistics(q);
  CHECK(s.ks_distance < 0.01);
  CHECK(std::abs(s.skewness) < 1e-10);
  CHECK(std::abs(s.excess_kurtosis) < 0.05);
  CHECK(mean(s.standardized) == doctest::Approx(0.0).scale(1.0));
  CHECK(sample_variance(s.standardized) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> shifted(m);
  for (int i = 0; i < m; ++i)
    shifted[i] = q[i] + 1.0;
  CHECK(ks_distance_normal(shifted) > 0.3);
  CHECK_THROWS_AS(normality_experiment(default_smooth_scenario(500), EstimatorConfig{}, 0.5, 100, 1),
                  Error);
}

TEST_CASE("mean effect experiment")
{
  EstimatorConfig est;
  est.degree = 3;
  CHECK_THROWS_AS(mean_effect_experiment(2.0, 0.1, { 512 }, 5, 1, est), Error);
  CHECK_THROWS_AS(mean_effect_experiment(2.0, 0.4, { 512 }, 5, 1, est), Error);
  const auto rep = mean_effect_experiment(2.0, 0.3, { 512, 1024 }, 20, 1, est);
  REQUIRE(rep.points.size() == 2);
  for (const auto& p : rep.points) {
    CHECK(p.ratio == doctest::Approx(p.rough_risk / p.smooth_risk));
    CHECK(p.ratio_se > 0.0);
  }
}

TEST_CASE("bias and variance study")
{
  EstimatorConfig est;
  const auto rep = bias_variance_experiment(default_smooth_scenario(1024), est,
                                            { 0.08, 0.12, 0.18 }, 200, 3);
  REQUIRE(rep.points.size() == 3);
  CHECK(rep.points[0].variance > rep.points[2].variance);
  CHECK(rep.variance_slope < 0.0);
  CHECK_THROWS_AS(bias_variance_experiment(default_smooth_scenario(100), rice(), { 0.1, 0.2 }, 5, 1),
                  Error);
}

TEST_CASE("summary statistics")
{
  const std::vector<double> v{ 1, 2, 3, 4, 10 };
  CHECK(mean(v) == 4.0);
  CHECK(sample_variance(v) == doctest::Approx(12.5));
  const std::vector<double> sym{ -2, -1, 0, 1, 2 };
  CHECK(skewness(sym) == doctest::Approx(0.0).scale(1.0));
  // m2 = 2, m4 = 6.8
  CHECK(excess_kurtosis(sym) == doctest::Approx(6.8 / 4.0 - 3.0));
  const std::vector<double> x{ 0, 1, 2, 3 }, y{ 1, 3, 5, 7 };
  const auto fit = ols_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.slope_se == doctest::Approx(0.0).scale(1.0));
  CHECK(trapezoid(x, y) == doctest::Approx(12.0));
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
}
