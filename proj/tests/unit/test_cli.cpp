#include "cli.hpp"

#include "varest/csv.hpp"
#include "varest/scenario.hpp"
#include "varest/serialize.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace varest;
namespace fs = std::filesystem;

namespace {

struct Run
{
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args)
{
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return { code, out.str(), err.str() };
}

fs::path workdir()
{
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "varest_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_sample(const std::string& name, std::size_t n)
{
  const auto s = generate_sample(default_smooth_scenario(n), 11);
  std::string text = "x,y\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    text += format_double(s.xs()[i]) + "," + format_double(s.ys()[i]) + "\n";
  const auto path = workdir() / name;
  write_file_atomic(path, text);
  return path.string();
}

} // namespace

TEST_CASE("usage errors exit with 1")
{
  CHECK(run({}).code == 1);
  CHECK(run({ "frobnicate" }).code == 1);
  CHECK(run({ "diffseq" }).code == 1);
  CHECK(run({ "diffseq", "--optimal", "0" }).code == 1);
  CHECK(run({ "diffseq", "--optimal", "2", "--standard", "gsjs" }).code == 1);
  CHECK(run({ "simulate", "--scenario", "smooth" }).code == 1); // no seed
  CHECK(run({ "rates", "--seed", "1", "--n", "100,200,400" }).code == 1);
  CHECK(run({ "rates", "--seed", "1", "--degree", "2" }).code == 1);
  CHECK(run({ "normality", "--seed", "1", "-R", "100" }).code == 1);
  CHECK(run({ "simulate", "-s", "smooth", "--seed", "1", "--kernel", "gauss" }).code == 1);
  CHECK(run({ "simulate", "-s", "smooth", "--seed", "1", "--bandwidth", "wide" }).code == 1);
  CHECK(run({ "--help" }).code == 0);
}

TEST_CASE("empty scenario list prints usage")
{
  const auto r = run({ "simulate", "--seed", "1" });
  CHECK(r.code == 1);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(r.err.find("--scenario") != std::string::npos);
}

TEST_CASE("diffseq reports the constant next to its minimum")
{
  const auto r = run({ "diffseq", "--optimal", "2" });
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j.at("variance_factor").get<double>() - 2.5) < 1e-6);
  CHECK(j.at("min_constant").get<double>() == 2.5);
  CHECK(j.at("coefficients").size() == 3);

  const auto g = json::parse(run({ "diffseq", "--standard", "gsjs" }).out);
  CHECK(g.at("variance_factor").get<double>() == doctest::Approx(35.0 / 9.0));

  const auto bad = workdir() / "bad_seq.json";
  write_file_atomic(bad, "[1, 1]");
  CHECK(run({ "diffseq", "--check", bad.string() }).code == 2);
  const auto good = workdir() / "good_seq.json";
  write_file_atomic(good, "[0.7071067811865476, -0.7071067811865476]");
  CHECK(run({ "diffseq", "--check", good.string() }).code == 0);
}

TEST_CASE("estimate writes two files deterministically")
{
  const std::string in = write_sample("in.csv", 500);
  const auto out = (workdir() / "est.csv").string();
  auto r = run({ "estimate", "-i", in, "-o", out });
  REQUIRE(r.code == 0);
  CHECK(fs::exists(out));
  CHECK(fs::exists(out + ".json"));
  const auto table = parse_csv(read_file(out));
  CHECK(table.header == std::vector<std::string>{ "x", "vhat" });
  CHECK(table.column("x").size() == 101);

  const auto a = (workdir() / "cv_a.csv").string();
  const auto b = (workdir() / "cv_b.csv").string();
  REQUIRE(run({ "estimate", "-i", in, "-o", a, "--bandwidth", "cv", "--folds", "5", "--seed", "7" }).code == 0);
  REQUIRE(run({ "estimate", "-i", in, "-o", b, "--bandwidth", "cv", "--folds", "5", "--seed", "7",
                "--threads", "3" }).code == 0);
  CHECK(read_file(a) == read_file(b));
  const json pa = json::parse(read_file(a + ".json"));
  const json pb = json::parse(read_file(b + ".json"));
  CHECK(pa.dump() == pb.dump());
  CHECK(pa.contains("cv"));
  CHECK(pa.at("selected_h").get<double>() == pa.at("cv").at("selected").get<double>());
  CHECK(run({ "estimate", "-i", in, "-o", a, "--bandwidth", "cv" }).code == 1);
}

TEST_CASE("estimate input and computation failures")
{
  const auto unsorted = workdir() / "unsorted.csv";
  write_file_atomic(unsorted, "x,y\n0.5,1\n0.2,2\n0.7,3\n0.8,1\n");
  const auto out = (workdir() / "never.csv").string();
  auto r = run({ "estimate", "-i", unsorted.string(), "-o", out });
  CHECK(r.code == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK_FALSE(fs::exists(out + ".json"));
  CHECK(run({ "estimate", "-i", (workdir() / "nonexistent.csv").string(), "-o", out }).code == 2);

  const std::string in = write_sample("small.csv", 200);
  r = run({ "estimate", "-i", in, "-o", out, "--bandwidth", "0.002" });
  CHECK(r.code == 3);
  CHECK(r.err.find("InsufficientSupport") != std::string::npos);
  CHECK(r.err.find("grid point") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
  CHECK(run({ "estimate", "-i", in, "-o", out, "--bandwidth", "0.002", "--expand" }).code == 0);
}

TEST_CASE("simulate output is identical across thread counts")
{
  const std::vector<std::string> base{ "simulate", "-s", "smooth", "-s", "homoscedastic",
                                       "--n", "400", "-R", "30", "--seed", "5", "--x0", "0.5" };
  auto one = base;
  one.insert(one.end(), { "--threads", "1" });
  auto four = base;
  four.insert(four.end(), { "--threads", "4" });
  const auto a = run(one);
  const auto b = run(four);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  REQUIRE(j.at("reports").size() == 2);
  const auto back = j.at("reports")[0].get<RiskReport>();
  CHECK(dump(json(back)) == dump(j.at("reports")[0]));

  const auto spec = workdir() / "scenario.json";
  write_file_atomic(spec, dump(json(homoscedastic_scenario(300))));
  CHECK(run({ "simulate", "-s", spec.string(), "-R", "5", "--seed", "1" }).code == 0);
  write_file_atomic(spec, "{\"mean_fn\": 3}");
  CHECK(run({ "simulate", "-s", spec.string(), "-R", "5", "--seed", "1" }).code == 2);
}

TEST_CASE("rates reports the theoretical slope")
{
  const auto path = (workdir() / "rates.json").string();
  const auto r = run({ "rates", "--gamma", "2", "--n", "128,256,512,1024", "-R", "5", "--seed", "3",
                       "-o", path });
  REQUIRE(r.code == 0);
  const json j = json::parse(read_file(path));
  CHECK(j.at("theoretical_slope").get<double>() == doctest::Approx(-0.8));
  CHECK(j.at("estimator").at("degree").get<int>() == 3);
  CHECK(j.at("points").size() == 4);
}

TEST_CASE("normality writes the report and optional draws")
{
  const auto path = (workdir() / "norm.json").string();
  const auto draws = (workdir() / "draws.csv").string();
  const auto r = run({ "normality", "--n", "300", "-R", "500", "--seed", "4", "-o", path,
                       "--draws", draws, "--errors", "student_t", "--df", "10" });
  REQUIRE(r.code == 0);
  const json j = json::parse(read_file(path));
  const auto table = parse_csv(read_file(draws));
  CHECK(table.column("draw").size() == j.at("draws").size());
  CHECK(run({ "normality", "--n", "300", "-R", "500", "--seed", "4", "--errors", "student_t",
              "--df", "5" }).code == 1);
}
