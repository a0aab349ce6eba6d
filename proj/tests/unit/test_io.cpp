#include "varest/csv.hpp"
#include "varest/error.hpp"
#include "varest/serialize.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

using namespace varest;

namespace {

ErrorKind csv_error(std::string_view text)
{
  try {
    parse_sample_csv(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::BadParameter;
}

template<class T>
void check_round_trip(const T& value)
{
  const std::string text = dump(json(value));
  const T back = json::parse(text).get<T>();
  CHECK(dump(json(back)) == text);
}

std::filesystem::path scratch(const std::string& name)
{
  auto dir = std::filesystem::temp_directory_path() / "varest_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

} // namespace

TEST_CASE("format_double round trips")
{
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, (i % 30) - 15);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("sample CSV parsing")
{
  const auto s = parse_sample_csv("\xEF\xBB\xBFx,y\r\n0.1, 2\r\n0.2,-3.5e-1\n\n0.7,+4\n");
  REQUIRE(s.size() == 3);
  CHECK(s.xs()[1] == 0.2);
  CHECK(s.ys()[1] == -0.35);
  CHECK(s.ys()[2] == 4.0);

  CHECK(csv_error("") == ErrorKind::MalformedInput);
  CHECK(csv_error("a,b\n0.1,1\n0.2,2\n") == ErrorKind::MalformedInput);
  CHECK(csv_error("x,y\n0.1,1\n0.2\n") == ErrorKind::MalformedInput);
  CHECK(csv_error("x,y\n0.1,1\n0.2,abc\n") == ErrorKind::MalformedInput);
  CHECK(csv_error("x,y\n0.1,1\n0.2,nan\n") == ErrorKind::MalformedInput);
  CHECK(csv_error("x,y\n0.3,1\n0.2,1\n") == ErrorKind::InvalidSample);
  CHECK(csv_error("x,y\n0.3,1\n1.2,1\n") == ErrorKind::InvalidSample);
  CHECK(csv_error("x,y\n0.3,1\n") == ErrorKind::TooFewObservations);
}

TEST_CASE("estimate CSV round trips")
{
  const auto s = generate_sample(default_smooth_scenario(300), 2);
  const std::vector<double> grid{ 0.1, 0.3333333333333333, 0.9 };
  const auto est = estimate_variance(s, optimal_sequence(2), SmootherConfig{ {}, 1, 0.2, false }, grid);
  const auto table = parse_csv(estimate_to_csv(est));
  CHECK(table.header == std::vector<std::string>{ "x", "vhat" });
  CHECK(table.column("x") == est.grid);
  CHECK(table.column("vhat") == est.values);
  CHECK_THROWS_AS(table.column("nope"), Error);
}

TEST_CASE("atomic writes leave no temporary behind")
{
  const auto path = scratch("atomic.txt");
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  CHECK(read_file(path) == "second");
  auto tmp = path;
  tmp += ".tmp";
  CHECK_FALSE(std::filesystem::exists(tmp));
  CHECK_THROWS(write_file_atomic(scratch("missing_dir") / "x" / "y.txt", "z"));
}

TEST_CASE("configuration JSON round trips")
{
  check_round_trip(SequenceSpec::of_optimal(4));
  check_round_trip(SequenceSpec::of_standard(StandardSequence::gsjs));
  check_round_trip(SequenceSpec::of_coeffs({ 0.5, -0.5, 0.5, -0.5 }));
  check_round_trip(BandwidthRule::fixed_h(0.13));
  check_round_trip(BandwidthRule::power_law(1.7, 0.3));
  check_round_trip(BandwidthRule::cross_validated(7, 9));
  EstimatorConfig e;
  e.degree = 3;
  e.kernel = KernelKind::triangular;
  e.expand_to_minimum = true;
  check_round_trip(e);
  CHECK(json(e).get<EstimatorConfig>() == e);
  e.kind = EstimatorConfig::Kind::oracle;
  e.oracle_offset = 1.0;
  check_round_trip(e);

  Scenario sc = rough_mean_scenario(321, 0.3);
  sc.error_law = ErrorLaw{ ErrorLawKind::student_t, 9.0 };
  check_round_trip(sc);
  CHECK(json(sc).get<Scenario>() == sc);
  Scenario explicit_design = default_smooth_scenario(3);
  explicit_design.design = { 0.1, 0.5, 0.7 };
  explicit_design.mean_fn = PolynomialFn{ { 1.0, -2.0, 0.5 } };
  CHECK(json(explicit_design).get<Scenario>() == explicit_design);

  const auto seq = optimal_sequence(3);
  CHECK(json(seq).get<DifferenceSequence>() == seq);
  CHECK_THROWS_AS(json({ 1.0, 1.0 }).get<DifferenceSequence>(), Error);
  const json summary = sequence_summary(seq);
  CHECK(summary.at("min_constant").get<double>() == doctest::Approx(7.0 / 3.0));
}

TEST_CASE("report JSON round trips")
{
  EstimatorConfig est;
  RiskOptions ro;
  ro.x0s = { 0.5 };
  ro.replications = 10;
  ro.seed = 3;
  const auto risk = risk_report(default_smooth_scenario(300), est, ro);
  check_round_trip(risk);

  RiskReport failed = risk;
  failed.global_risk = std::nan("");
  const json j = failed;
  CHECK(j.at("global_risk").is_null());
  CHECK(std::isnan(j.get<RiskReport>().global_risk));

  EstimatorConfig cubic;
  cubic.degree = 3;
  RateOptions rate_opt;
  rate_opt.replications = 5;
  rate_opt.seed = 4;
  check_round_trip(rate_experiment(default_smooth_scenario(100), { 128, 256, 512, 1024 }, cubic, rate_opt));

  check_round_trip(normality_experiment(default_smooth_scenario(400), est, 0.5, 500, 5));
  check_round_trip(mean_effect_experiment(2.0, 0.3, { 256 }, 5, 6, cubic));

  const auto s = generate_sample(default_smooth_scenario(500), 1);
  const auto cv = cv_select(s, optimal_sequence(2), SmootherConfig{}, BandwidthGrid::geometric_default(s), 5, 2);
  check_round_trip(cv);
  CHECK(json(cv).get<CvReport>() == cv);
}

TEST_CASE("malformed JSON specifications are rejected")
{
  CHECK_THROWS_AS(json::parse(R"({"kind":"wavelet"})").get<FunctionSpec>(), Error);
  CHECK_THROWS_AS(json::parse(R"({"choice":"magic"})").get<SequenceSpec>(), Error);
  CHECK_THROWS_AS(json::parse(R"({"design":"random"})").get<Scenario>(), Error);
  CHECK_THROWS(json::parse(R"({"kind":"sine"})").get<FunctionSpec>());
}
