#include "cli.hpp"

#include "varest/bandwidth.hpp"
#include "varest/csv.hpp"
#include "varest/diffseq.hpp"
#include "varest/error.hpp"
#include "varest/estimator.hpp"
#include "varest/parallel.hpp"
#include "varest/serialize.hpp"
#include "varest/simlab.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace varest::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Thrown while turning flags into a configuration; always exit 1.
struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// Thrown while reading input files; always exit 2.
struct InputError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct EstimatorFlags
{
  std::string estimator = "local_polynomial";
  std::string sequence = "optimal";
  int order = 2;
  std::string sequence_file;
  std::string kernel = "epanechnikov";
  int degree = 1;
  std::string bandwidth = "rate";
  double gamma = 2.0;
  double scale = 0.5;
  double exponent = 0.2;
  int folds = 5;
  int candidates = 12;
  bool expand = false;
};

struct GridFlags
{
  int points = 101;
  bool full_interval = false;
};

void add_estimator_flags(CLI::App* cmd, EstimatorFlags& f)
{
  cmd->add_option("--estimator", f.estimator, "local_polynomial, rice or hkt")
    ->capture_default_str();
  cmd->add_option("--sequence", f.sequence, "optimal, first_difference, rice or gsjs")
    ->capture_default_str();
  cmd->add_option("--order", f.order, "order r of the optimal sequence")->capture_default_str();
  cmd->add_option("--sequence-file", f.sequence_file, "JSON array of sequence coefficients");
  cmd->add_option("--kernel", f.kernel, "epanechnikov, uniform, triangular or biweight")
    ->capture_default_str();
  cmd->add_option("--degree", f.degree, "local polynomial degree p")->capture_default_str();
  cmd
    ->add_option("--bandwidth",
                 f.bandwidth,
                 "a fixed h, 'rate' (scale*n^(-1/(2gamma+1))), 'power' "
                 "(scale*n^(-exponent)) or 'cv'")
    ->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "smoothness used by the rate bandwidth")
    ->capture_default_str();
  cmd->add_option("--scale", f.scale, "bandwidth constant")->capture_default_str();
  cmd->add_option("--exponent", f.exponent, "exponent of the power bandwidth")
    ->capture_default_str();
  cmd->add_option("--folds", f.folds, "cross-validation folds")->capture_default_str();
  cmd->add_option("--candidates", f.candidates, "cross-validation grid size")
    ->capture_default_str();
  cmd->add_flag("--expand", f.expand, "grow h where the window holds too few points");
}

void add_grid_flags(CLI::App* cmd, GridFlags& g)
{
  cmd->add_option("--grid-points", g.points, "points of the integration grid")
    ->capture_default_str();
  cmd->add_flag("--full-interval", g.full_interval, "integrate over [0, 1] instead of [0.05, 0.95]");
}

GridSpec make_grid(const GridFlags& g)
{
  if (g.points < 2)
    throw UsageError("--grid-points must be at least 2");
  GridSpec grid;
  grid.points = g.points;
  grid.full_interval = g.full_interval;
  if (g.full_interval) {
    grid.lo = 0.0;
    grid.hi = 1.0;
  }
  return grid;
}

template<class F>
auto as_usage(F&& f)
{
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

SequenceSpec make_sequence(const EstimatorFlags& f)
{
  if (!f.sequence_file.empty()) {
    std::vector<double> coeffs;
    try {
      coeffs = json::parse(read_file(f.sequence_file)).get<std::vector<double>>();
      DifferenceSequence::validate(coeffs);
    } catch (const std::exception& e) {
      throw InputError(f.sequence_file + ": " + e.what());
    }
    return SequenceSpec::of_coeffs(std::move(coeffs));
  }
  if (f.sequence == "optimal") {
    if (f.order < 1)
      throw UsageError("--order must be positive");
    return SequenceSpec::of_optimal(f.order);
  }
  return as_usage([&] { return SequenceSpec::of_standard(parse_standard_sequence(f.sequence)); });
}

BandwidthRule make_bandwidth(const EstimatorFlags& f)
{
  if (f.bandwidth == "cv") {
    if (f.folds < 2)
      throw UsageError("--folds must be at least 2");
    if (f.candidates < 1)
      throw UsageError("--candidates must be positive");
    return BandwidthRule::cross_validated(f.folds, f.candidates);
  }
  if (!(f.scale > 0.0))
    throw UsageError("--scale must be positive");
  if (f.bandwidth == "rate") {
    if (!(f.gamma > 0.0))
      throw UsageError("--gamma must be positive");
    return BandwidthRule::rate(f.gamma, f.scale);
  }
  if (f.bandwidth == "power") {
    if (!(f.exponent > 0.0 && f.exponent < 1.0))
      throw UsageError("--exponent must lie in (0, 1)");
    return BandwidthRule::power_law(f.scale, f.exponent);
  }
  double h = 0.0;
  std::size_t used = 0;
  try {
    h = std::stod(f.bandwidth, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != f.bandwidth.size() || !(h > 0.0 && h <= 0.5))
    throw UsageError("--bandwidth must be 'rate', 'power', 'cv' or a number in (0, 0.5]");
  return BandwidthRule::fixed_h(h);
}

EstimatorConfig make_estimator(const EstimatorFlags& f)
{
  EstimatorConfig e;
  if (f.estimator == "local_polynomial")
    e.kind = EstimatorConfig::Kind::local_polynomial;
  else if (f.estimator == "rice")
    e.kind = EstimatorConfig::Kind::rice;
  else if (f.estimator == "hkt")
    e.kind = EstimatorConfig::Kind::hkt;
  else
    throw UsageError("unknown estimator '" + f.estimator + "'");
  e.sequence = make_sequence(f);
  e.kernel = as_usage([&] { return parse_kernel(f.kernel); });
  if (f.degree < 0 || f.degree > 10)
    throw UsageError("--degree must lie in [0, 10]");
  e.degree = f.degree;
  e.bandwidth = make_bandwidth(f);
  e.expand_to_minimum = f.expand;
  return e;
}

Scenario load_scenario(const std::string& spec, std::optional<std::size_t> n, double beta)
{
  Scenario s;
  const std::size_t size = n.value_or(1000);
  if (spec == "smooth")
    s = default_smooth_scenario(size);
  else if (spec == "homoscedastic")
    s = homoscedastic_scenario(size);
  else if (spec == "rough")
    s = as_usage([&] { return rough_mean_scenario(size, beta); });
  else {
    try {
      s = json::parse(read_file(spec)).get<Scenario>();
    } catch (const std::exception& e) {
      throw InputError(spec + ": " + e.what());
    }
    if (n)
      s = s.with_n(*n);
  }
  try {
    s.check();
  } catch (const Error& e) {
    throw InputError(spec + ": " + e.what());
  }
  return s;
}

void emit(const std::string& path, const std::string& text, std::ostream& out)
{
  if (path.empty() || path == "-")
    out << text;
  else
    write_file_atomic(path, text);
}

unsigned thread_count(int flag)
{
  if (flag < 0)
    throw UsageError("--threads must be non-negative");
  return flag == 0 ? default_threads() : static_cast<unsigned>(flag);
}

// --- estimate ---------------------------------------------------------------

struct EstimateFlags
{
  std::string input;
  std::string output;
  std::string provenance;
  EstimatorFlags est;
  int grid_points = 101;
  double grid_lo = nan;
  double grid_hi = nan;
  bool clip = false;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

int cmd_estimate(const EstimateFlags& f, std::ostream& out)
{
  const EstimatorConfig config = make_estimator(f.est);
  if (config.kind != EstimatorConfig::Kind::local_polynomial)
    throw UsageError("estimate supports only --estimator local_polynomial");
  if (config.bandwidth.kind == BandwidthRule::Kind::cv && !f.seed)
    throw UsageError("--bandwidth cv needs --seed");
  if (f.grid_points < 1)
    throw UsageError("--grid-points must be positive");
  const unsigned threads = thread_count(f.threads);
  const DifferenceSequence seq = as_usage([&] { return config.sequence.resolve(); });

  std::optional<Sample> sample;
  try {
    sample.emplace(read_sample_csv(f.input));
  } catch (const Error& e) {
    throw InputError(f.input + ": " + e.what());
  }
  if (sample->size() <= static_cast<std::size_t>(seq.order()) + 1)
    throw InputError(f.input + ": too few observations for a sequence of order " +
                     std::to_string(seq.order()));

  const double lo = std::isnan(f.grid_lo) ? sample->xs().front() : f.grid_lo;
  const double hi = std::isnan(f.grid_hi) ? sample->xs().back() : f.grid_hi;
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi))
    throw UsageError("grid must satisfy 0 <= lo <= hi <= 1");
  std::vector<double> grid(static_cast<std::size_t>(f.grid_points));
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = grid.size() == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                             static_cast<double>(grid.size() - 1);

  SmootherConfig smoother;
  smoother.kernel = KernelSpec(config.kernel);
  smoother.degree = config.degree;
  smoother.expand_to_minimum = config.expand_to_minimum;

  json prov{ { "input", f.input }, { "n", sample->size() }, { "bandwidth_rule", config.bandwidth } };
  if (config.bandwidth.kind == BandwidthRule::Kind::cv) {
    const auto candidates = BandwidthGrid::geometric_default(*sample, config.bandwidth.candidates);
    const CvReport report =
      cv_select(*sample, seq, smoother, candidates, config.bandwidth.folds, *f.seed, threads);
    smoother.bandwidth = report.selected;
    prov["cv"] = report;
  } else {
    smoother.bandwidth = config.bandwidth.at(sample->size());
  }
  prov["selected_h"] = smoother.bandwidth;

  EstimateOptions options;
  options.clip_at_zero = f.clip;
  options.threads = threads;
  const VarianceEstimate estimate = estimate_variance(*sample, seq, smoother, grid, options);
  prov["estimate"] = provenance_json(estimate);

  const std::string csv = estimate_to_csv(estimate);
  const std::string sidecar = dump(prov);
  write_file_atomic(f.output, csv);
  write_file_atomic(f.provenance.empty() ? f.output + ".json" : f.provenance, sidecar);
  (void)out;
  return exit_ok;
}

// --- simulate ---------------------------------------------------------------

struct SimulateFlags
{
  std::vector<std::string> scenarios;
  std::optional<std::size_t> n;
  double beta = 0.3;
  int replications = 200;
  std::optional<std::uint64_t> seed;
  std::vector<double> x0s;
  bool no_global = false;
  EstimatorFlags est;
  GridFlags grid;
  std::string output;
  int threads = 0;
};

int cmd_simulate(const SimulateFlags& f, std::ostream& out)
{
  const EstimatorConfig config = make_estimator(f.est);
  if (!f.seed)
    throw UsageError("--seed is required");
  if (f.replications < 2)
    throw UsageError("--replications must be at least 2");
  for (double x : f.x0s)
    if (!(x >= 0.0 && x <= 1.0))
      throw UsageError("--x0 must lie in [0, 1]");
  if (f.x0s.empty() && f.no_global)
    throw UsageError("nothing to compute: give --x0 or drop --no-global");
  RiskOptions options;
  options.x0s = f.x0s;
  options.global = !f.no_global;
  options.grid = make_grid(f.grid);
  options.replications = f.replications;
  options.seed = *f.seed;
  options.threads = thread_count(f.threads);

  std::vector<Scenario> scenarios;
  for (const auto& spec : f.scenarios)
    scenarios.push_back(load_scenario(spec, f.n, f.beta));

  json reports = json::array();
  for (const auto& s : scenarios)
    reports.push_back(risk_report(s, config, options));
  emit(f.output, dump(json{ { "reports", reports } }), out);
  return exit_ok;
}

// --- rates ------------------------------------------------------------------

struct RatesFlags
{
  std::string scenario = "smooth";
  std::vector<std::size_t> ns{ 512, 1024, 2048, 4096, 8192 };
  double beta = 0.3;
  bool pointwise = false;
  double x0 = 0.5;
  int replications = 100;
  std::optional<std::uint64_t> seed;
  EstimatorFlags est;
  GridFlags grid;
  std::string output;
  int threads = 0;
};

int cmd_rates(const RatesFlags& f, bool degree_given, std::ostream& out)
{
  EstimatorFlags ef = f.est;
  if (!degree_given)
    ef.degree = static_cast<int>(std::floor(ef.gamma)) + 1;
  const EstimatorConfig config = make_estimator(ef);
  if (!f.seed)
    throw UsageError("--seed is required");
  if (f.replications < 2)
    throw UsageError("--replications must be at least 2");
  std::vector<std::size_t> distinct = f.ns;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 4)
    throw UsageError("--n needs at least 4 distinct sample sizes");
  if (config.kind == EstimatorConfig::Kind::local_polynomial &&
      config.degree <= static_cast<int>(std::floor(ef.gamma)))
    throw UsageError("--degree must exceed floor(gamma)");
  if (!(f.x0 >= 0.0 && f.x0 <= 1.0))
    throw UsageError("--x0 must lie in [0, 1]");

  RateOptions options;
  options.gamma = ef.gamma;
  options.pointwise = f.pointwise;
  options.x0 = f.x0;
  options.grid = make_grid(f.grid);
  options.replications = f.replications;
  options.seed = *f.seed;
  options.threads = thread_count(f.threads);
  const Scenario base = load_scenario(f.scenario, std::nullopt, f.beta);
  emit(f.output, dump(json(rate_experiment(base, f.ns, config, options))), out);
  return exit_ok;
}

// --- normality --------------------------------------------------------------

struct NormalityFlags
{
  std::string scenario = "smooth";
  std::size_t n = 2000;
  double beta = 0.3;
  double x0 = 0.5;
  int replications = 1000;
  std::optional<std::uint64_t> seed;
  std::string errors = "gaussian";
  double df = 9.0;
  EstimatorFlags est;
  std::string output;
  std::string draws;
  int threads = 0;
};

int cmd_normality(const NormalityFlags& f, std::ostream& out)
{
  const EstimatorConfig config = make_estimator(f.est);
  if (!f.seed)
    throw UsageError("--seed is required");
  if (f.replications < 500)
    throw UsageError("--replications must be at least 500");
  if (!(f.x0 >= 0.0 && f.x0 <= 1.0))
    throw UsageError("--x0 must lie in [0, 1]");
  ErrorLaw law;
  law.kind = as_usage([&] { return parse_error_law(f.errors); });
  if (law.kind == ErrorLawKind::student_t)
    law.df = f.df;
  as_usage([&] { law.check(); return 0; });
  const unsigned threads = thread_count(f.threads);

  Scenario s = load_scenario(f.scenario, f.n, f.beta);
  s.error_law = law;
  const NormalityReport report = normality_experiment(s, config, f.x0, f.replications, *f.seed, threads);

  std::string draws_csv;
  if (!f.draws.empty()) {
    draws_csv = "replication,draw,standardized\n";
    for (std::size_t i = 0; i < report.draws.size(); ++i)
      draws_csv += std::to_string(i) + "," + format_double(report.draws[i]) + "," +
                   format_double(report.standardized[i]) + "\n";
  }
  const std::string text = dump(json(report));
  if (!f.draws.empty())
    write_file_atomic(f.draws, draws_csv);
  emit(f.output, text, out);
  return exit_ok;
}

// --- diffseq ----------------------------------------------------------------

struct DiffseqFlags
{
  std::optional<int> optimal;
  std::string standard;
  std::string check;
  double tolerance = 1e-9;
  std::string output;
};

int cmd_diffseq(const DiffseqFlags& f, std::ostream& out)
{
  const int chosen = (f.optimal ? 1 : 0) + (f.standard.empty() ? 0 : 1) + (f.check.empty() ? 0 : 1);
  if (chosen != 1)
    throw UsageError("give exactly one of --optimal, --standard, --check");
  std::optional<DifferenceSequence> seq;
  if (f.optimal) {
    if (*f.optimal < 1)
      throw UsageError("--optimal needs a positive order");
    if (!(f.tolerance > 0.0))
      throw UsageError("--tolerance must be positive");
    seq.emplace(optimal_sequence(*f.optimal, f.tolerance));
  } else if (!f.standard.empty()) {
    seq.emplace(as_usage([&] { return standard_sequence(parse_standard_sequence(f.standard)); }));
  } else {
    try {
      seq.emplace(json::parse(read_file(f.check)).get<DifferenceSequence>());
    } catch (const std::exception& e) {
      throw InputError(f.check + ": " + e.what());
    }
  }
  emit(f.output, dump(sequence_summary(*seq)), out);
  return exit_ok;
}

std::string message_of(const std::exception& e)
{
  return e.what();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{ "Variance function estimation from difference-based pseudoresiduals", "varest" };
  app.require_subcommand(1);

  EstimateFlags ef;
  auto* estimate = app.add_subcommand("estimate", "estimate V(x) from an x,y CSV file");
  estimate->add_option("--input,-i", ef.input, "CSV with header x,y")->required();
  estimate->add_option("--output,-o", ef.output, "x,vhat CSV to write")->required();
  estimate->add_option("--provenance", ef.provenance, "JSON sidecar (default: OUTPUT.json)");
  add_estimator_flags(estimate, ef.est);
  estimate->add_option("--grid-points", ef.grid_points, "evaluation points")->capture_default_str();
  estimate->add_option("--grid-lo", ef.grid_lo, "first evaluation point (default: smallest x)");
  estimate->add_option("--grid-hi", ef.grid_hi, "last evaluation point (default: largest x)");
  estimate->add_flag("--clip", ef.clip, "replace negative estimates by zero");
  estimate->add_option("--seed", ef.seed, "seed for cross-validation folds");
  estimate->add_option("--threads", ef.threads, "worker threads (0: all cores)")->capture_default_str();

  SimulateFlags sf;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo risk of an estimator");
  simulate->add_option("--scenario,-s", sf.scenarios,
                       "smooth, homoscedastic, rough or a scenario JSON file (repeatable)");
  simulate->add_option("--n", sf.n, "sample size (default 1000 or the file's value)");
  simulate->add_option("--beta", sf.beta, "exponent of the rough mean")->capture_default_str();
  simulate->add_option("--replications,-R", sf.replications)->capture_default_str();
  simulate->add_option("--seed", sf.seed, "master seed (required)");
  simulate->add_option("--x0", sf.x0s, "points for pointwise risk (repeatable)");
  simulate->add_flag("--no-global", sf.no_global, "skip the integrated risk");
  add_estimator_flags(simulate, sf.est);
  add_grid_flags(simulate, sf.grid);
  simulate->add_option("--output,-o", sf.output, "JSON report (default: stdout)");
  simulate->add_option("--threads", sf.threads, "worker threads (0: all cores)")->capture_default_str();

  RatesFlags rf;
  auto* rates = app.add_subcommand("rates", "log-log slope of the risk over sample sizes");
  rates->add_option("--scenario,-s", rf.scenario)->capture_default_str();
  rates->add_option("--n", rf.ns, "sample sizes")->delimiter(',')->capture_default_str();
  rates->add_option("--beta", rf.beta, "exponent of the rough mean")->capture_default_str();
  rates->add_flag("--pointwise", rf.pointwise, "risk at --x0 instead of integrated risk");
  rates->add_option("--x0", rf.x0)->capture_default_str();
  rates->add_option("--replications,-R", rf.replications)->capture_default_str();
  rates->add_option("--seed", rf.seed, "master seed (required)");
  add_estimator_flags(rates, rf.est);
  add_grid_flags(rates, rf.grid);
  rates->add_option("--output,-o", rf.output, "JSON report (default: stdout)");
  rates->add_option("--threads", rf.threads, "worker threads (0: all cores)")->capture_default_str();

  NormalityFlags nf;
  nf.est.bandwidth = "power";
  nf.est.scale = 3.0;
  nf.est.exponent = 0.3;
  nf.est.order = 6;
  nf.est.kernel = "uniform";
  auto* normality = app.add_subcommand("normality", "distribution of studentized V(x0) draws");
  normality->add_option("--scenario,-s", nf.scenario)->capture_default_str();
  normality->add_option("--n", nf.n)->capture_default_str();
  normality->add_option("--beta", nf.beta, "exponent of the rough mean")->capture_default_str();
  normality->add_option("--x0", nf.x0)->capture_default_str();
  normality->add_option("--replications,-R", nf.replications)->capture_default_str();
  normality->add_option("--seed", nf.seed, "master seed (required)");
  normality->add_option("--errors", nf.errors, "gaussian, scaled_uniform or student_t")
    ->capture_default_str();
  normality->add_option("--df", nf.df, "degrees of freedom of student_t errors")
    ->capture_default_str();
  add_estimator_flags(normality, nf.est);
  normality->add_option("--output,-o", nf.output, "JSON report (default: stdout)");
  normality->add_option("--draws", nf.draws, "CSV of the raw replication draws");
  normality->add_option("--threads", nf.threads, "worker threads (0: all cores)")
    ->capture_default_str();

  DiffseqFlags df;
  auto* diffseq = app.add_subcommand("diffseq", "construct or check a difference sequence");
  diffseq->add_option("--optimal", df.optimal, "order r of the optimal sequence");
  diffseq->add_option("--standard", df.standard, "first_difference, rice or gsjs");
  diffseq->add_option("--check", df.check, "JSON array of coefficients to validate");
  diffseq->add_option("--tolerance", df.tolerance, "allowed gap to (2r+1)/r")->capture_default_str();
  diffseq->add_option("--output,-o", df.output, "JSON file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*estimate)
      return cmd_estimate(ef, out);
    if (*simulate) {
      if (sf.scenarios.empty()) {
        err << "simulate: empty scenario list\n" << simulate->help();
        return exit_usage;
      }
      return cmd_simulate(sf, out);
    }
    if (*rates)
      return cmd_rates(rf, rates->get_option("--degree")->count() > 0, out);
    if (*normality)
      return cmd_normality(nf, out);
    return cmd_diffseq(df, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    err << "computation failed: " << message_of(e) << "\n";
    return exit_computation;
  }
}

} // namespace varest::cli
