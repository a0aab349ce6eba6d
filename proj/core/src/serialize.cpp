#include "varest/serialize.hpp"

#include "varest/error.hpp"

#include <cmath>
#include <limits>

namespace varest {

namespace {

json num(double v)
{
  if (!std::isfinite(v))
    return nullptr;
  return v;
}

double get_num(const json& j, const char* key)
{
  const json& v = j.at(key);
  if (v.is_null())
    return std::numeric_limits<double>::quiet_NaN();
  return v.get<double>();
}

json num_array(const std::vector<double>& v)
{
  json a = json::array();
  for (double x : v)
    a.push_back(num(x));
  return a;
}

std::vector<double> get_num_array(const json& j, const char* key)
{
  std::vector<double> out;
  for (const json& v : j.at(key))
    out.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
  return out;
}

std::string_view to_string(SequenceSpec::Choice c)
{
  switch (c) {
    case SequenceSpec::Choice::standard: return "standard";
    case SequenceSpec::Choice::optimal: return "optimal";
    case SequenceSpec::Choice::explicit_coeffs: return "explicit";
  }
  return "unknown";
}

std::string_view to_string(BandwidthRule::Kind k)
{
  switch (k) {
    case BandwidthRule::Kind::fixed: return "fixed";
    case BandwidthRule::Kind::power: return "power";
    case BandwidthRule::Kind::cv: return "cv";
  }
  return "unknown";
}

std::string_view to_string(EstimatorConfig::Kind k)
{
  switch (k) {
    case EstimatorConfig::Kind::local_polynomial: return "local_polynomial";
    case EstimatorConfig::Kind::rice: return "rice";
    case EstimatorConfig::Kind::hkt: return "hkt";
    case EstimatorConfig::Kind::oracle: return "oracle";
  }
  return "unknown";
}

[[noreturn]] void bad(const std::string& what)
{
  throw Error(ErrorKind::MalformedInput, what);
}

} // namespace

void to_json(json& j, const SmootherConfig& c)
{
  j = json{ { "kernel", to_string(c.kernel.kind()) },
            { "degree", c.degree },
            { "bandwidth", num(c.bandwidth) },
            { "expand_to_minimum", c.expand_to_minimum } };
}

void from_json(const json& j, SmootherConfig& c)
{
  c.kernel = KernelSpec(parse_kernel(j.at("kernel").get<std::string>()));
  c.degree = j.at("degree").get<int>();
  c.bandwidth = get_num(j, "bandwidth");
  c.expand_to_minimum = j.value("expand_to_minimum", false);
}

void to_json(json& j, const SequenceSpec& s)
{
  j = json{ { "choice", to_string(s.choice) } };
  switch (s.choice) {
    case SequenceSpec::Choice::standard:
      j["standard"] = to_string(s.standard);
      break;
    case SequenceSpec::Choice::optimal:
      j["order"] = s.order;
      break;
    case SequenceSpec::Choice::explicit_coeffs:
      j["coeffs"] = s.coeffs;
      break;
  }
}

void from_json(const json& j, SequenceSpec& s)
{
  const auto choice = j.at("choice").get<std::string>();
  if (choice == "standard")
    s = SequenceSpec::of_standard(parse_standard_sequence(j.at("standard").get<std::string>()));
  else if (choice == "optimal")
    s = SequenceSpec::of_optimal(j.at("order").get<int>());
  else if (choice == "explicit")
    s = SequenceSpec::of_coeffs(j.at("coeffs").get<std::vector<double>>());
  else
    bad("unknown sequence choice '" + choice + "'");
}

void to_json(json& j, const BandwidthRule& r)
{
  j = json{ { "kind", to_string(r.kind) } };
  switch (r.kind) {
    case BandwidthRule::Kind::fixed:
      j["value"] = num(r.value);
      break;
    case BandwidthRule::Kind::power:
      j["scale"] = num(r.scale);
      j["exponent"] = num(r.exponent);
      break;
    case BandwidthRule::Kind::cv:
      j["folds"] = r.folds;
      j["candidates"] = r.candidates;
      break;
  }
}

void from_json(const json& j, BandwidthRule& r)
{
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "fixed")
    r = BandwidthRule::fixed_h(get_num(j, "value"));
  else if (kind == "power")
    r = BandwidthRule::power_law(get_num(j, "scale"), get_num(j, "exponent"));
  else if (kind == "rate")
    r = BandwidthRule::rate(j.at("gamma").get<double>(), j.at("scale").get<double>());
  else if (kind == "cv")
    r = BandwidthRule::cross_validated(j.value("folds", 5), j.value("candidates", 12));
  else
    bad("unknown bandwidth rule '" + kind + "'");
}

void to_json(json& j, const EstimatorConfig& e)
{
  j = json{ { "kind", to_string(e.kind) } };
  switch (e.kind) {
    case EstimatorConfig::Kind::local_polynomial:
      j["sequence"] = e.sequence;
      j["kernel"] = to_string(e.kernel);
      j["degree"] = e.degree;
      j["bandwidth"] = e.bandwidth;
      j["expand_to_minimum"] = e.expand_to_minimum;
      break;
    case EstimatorConfig::Kind::hkt:
      j["sequence"] = e.sequence;
      break;
    case EstimatorConfig::Kind::rice:
      break;
    case EstimatorConfig::Kind::oracle:
      j["oracle_offset"] = num(e.oracle_offset);
      break;
  }
}

void from_json(const json& j, EstimatorConfig& e)
{
  e = EstimatorConfig{};
  const auto kind = j.value("kind", std::string("local_polynomial"));
  if (kind == "local_polynomial")
    e.kind = EstimatorConfig::Kind::local_polynomial;
  else if (kind == "rice")
    e.kind = EstimatorConfig::Kind::rice;
  else if (kind == "hkt")
    e.kind = EstimatorConfig::Kind::hkt;
  else if (kind == "oracle")
    e.kind = EstimatorConfig::Kind::oracle;
  else
    bad("unknown estimator kind '" + kind + "'");
  if (j.contains("sequence"))
    e.sequence = j.at("sequence").get<SequenceSpec>();
  if (j.contains("kernel"))
    e.kernel = parse_kernel(j.at("kernel").get<std::string>());
  e.degree = j.value("degree", e.degree);
  if (j.contains("bandwidth"))
    e.bandwidth = j.at("bandwidth").get<BandwidthRule>();
  e.expand_to_minimum = j.value("expand_to_minimum", false);
  if (j.contains("oracle_offset"))
    e.oracle_offset = get_num(j, "oracle_offset");
}

void to_json(json& j, const FunctionSpec& f)
{
  std::visit(
    [&j](const auto& fn) {
      using T = std::decay_t<decltype(fn)>;
      if constexpr (std::is_same_v<T, ConstantFn>)
        j = json{ { "kind", "constant" }, { "value", num(fn.value) } };
      else if constexpr (std::is_same_v<T, SineFn>)
        j = json{ { "kind", "sine" },
                  { "offset", num(fn.offset) },
                  { "amplitude", num(fn.amplitude) },
                  { "frequency", num(fn.frequency) } };
      else if constexpr (std::is_same_v<T, PowerAbsFn>)
        j = json{ { "kind", "power_abs" },
                  { "center", num(fn.center) },
                  { "exponent", num(fn.exponent) },
                  { "scale", num(fn.scale) } };
      else
        j = json{ { "kind", "polynomial" }, { "coeffs", fn.coeffs } };
    },
    f);
}

void from_json(const json& j, FunctionSpec& f)
{
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "constant")
    f = ConstantFn{ get_num(j, "value") };
  else if (kind == "sine")
    f = SineFn{ get_num(j, "offset"), get_num(j, "amplitude"), get_num(j, "frequency") };
  else if (kind == "power_abs")
    f = PowerAbsFn{ get_num(j, "center"), get_num(j, "exponent"), get_num(j, "scale") };
  else if (kind == "polynomial")
    f = PolynomialFn{ j.at("coeffs").get<std::vector<double>>() };
  else
    bad("unknown function kind '" + kind + "'");
}

void to_json(json& j, const ErrorLaw& e)
{
  j = json{ { "kind", to_string(e.kind) } };
  if (e.kind == ErrorLawKind::student_t)
    j["df"] = num(e.df);
}

void from_json(const json& j, ErrorLaw& e)
{
  e.kind = parse_error_law(j.at("kind").get<std::string>());
  e.df = e.kind == ErrorLawKind::student_t ? get_num(j, "df") : 0.0;
}

void to_json(json& j, const HoelderClassSpec& h)
{
  j = json{ { "gamma", num(h.gamma) },
            { "c1", num(h.c1) },
            { "c2", num(h.c2) },
            { "delta", num(h.delta) } };
}

void from_json(const json& j, HoelderClassSpec& h)
{
  h.gamma = get_num(j, "gamma");
  h.c1 = get_num(j, "c1");
  h.c2 = get_num(j, "c2");
  h.delta = get_num(j, "delta");
}

void to_json(json& j, const Scenario& s)
{
  j = json{ { "name", s.name },
            { "mean_fn", s.mean_fn },
            { "var_fn", s.var_fn },
            { "design", s.design.empty() ? json("equispaced") : json(s.design) },
            { "error_law", s.error_law },
            { "n", s.n },
            { "mean_class", s.mean_class },
            { "var_class", s.var_class } };
}

void from_json(const json& j, Scenario& s)
{
  s = Scenario{};
  s.name = j.value("name", s.name);
  if (j.contains("mean_fn"))
    s.mean_fn = j.at("mean_fn").get<FunctionSpec>();
  if (j.contains("var_fn"))
    s.var_fn = j.at("var_fn").get<FunctionSpec>();
  if (j.contains("design")) {
    const json& d = j.at("design");
    if (d.is_string()) {
      if (d.get<std::string>() != "equispaced")
        bad("design must be \"equispaced\" or a list of abscissae");
    } else {
      s.design = d.get<std::vector<double>>();
    }
  }
  if (j.contains("error_law"))
    s.error_law = j.at("error_law").get<ErrorLaw>();
  s.n = j.contains("n") ? j.at("n").get<std::size_t>() : s.design.size();
  if (j.contains("mean_class"))
    s.mean_class = j.at("mean_class").get<HoelderClassSpec>();
  if (j.contains("var_class"))
    s.var_class = j.at("var_class").get<HoelderClassSpec>();
}

void to_json(json& j, const GridSpec& g)
{
  j = json{ { "lo", num(g.lo) },
            { "hi", num(g.hi) },
            { "points", g.points },
            { "full_interval", g.full_interval } };
}

void from_json(const json& j, GridSpec& g)
{
  g.lo = get_num(j, "lo");
  g.hi = get_num(j, "hi");
  g.points = j.at("points").get<int>();
  g.full_interval = j.at("full_interval").get<bool>();
}

void to_json(json& j, const PointRisk& p)
{
  j = json{ { "x0", num(p.x0) }, { "risk", num(p.risk) }, { "se", num(p.se) } };
}

void from_json(const json& j, PointRisk& p)
{
  p.x0 = get_num(j, "x0");
  p.risk = get_num(j, "risk");
  p.se = get_num(j, "se");
}

void to_json(json& j, const RiskReport& r)
{
  j = json{ { "report", "risk" },
            { "scenario", r.scenario },
            { "estimator", r.estimator },
            { "n", r.n },
            { "bandwidth", num(r.bandwidth) },
            { "replications", r.replications },
            { "failures", r.failures },
            { "seed", r.seed },
            { "pointwise", r.pointwise },
            { "has_global", r.has_global },
            { "global_risk", num(r.global_risk) },
            { "global_se", num(r.global_se) },
            { "grid", r.grid },
            { "grid_note", r.grid_note } };
}

void from_json(const json& j, RiskReport& r)
{
  r.scenario = j.at("scenario").get<std::string>();
  r.estimator = j.at("estimator").get<EstimatorConfig>();
  r.n = j.at("n").get<std::size_t>();
  r.bandwidth = get_num(j, "bandwidth");
  r.replications = j.at("replications").get<int>();
  r.failures = j.at("failures").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.pointwise = j.at("pointwise").get<std::vector<PointRisk>>();
  r.has_global = j.at("has_global").get<bool>();
  r.global_risk = get_num(j, "global_risk");
  r.global_se = get_num(j, "global_se");
  r.grid = j.at("grid").get<GridSpec>();
  r.grid_note = j.at("grid_note").get<std::string>();
}

void to_json(json& j, const RatePoint& p)
{
  j = json{ { "n", p.n },
            { "bandwidth", num(p.bandwidth) },
            { "risk", num(p.risk) },
            { "se", num(p.se) },
            { "failures", p.failures },
            { "used_in_fit", p.used_in_fit } };
}

void from_json(const json& j, RatePoint& p)
{
  p.n = j.at("n").get<std::size_t>();
  p.bandwidth = get_num(j, "bandwidth");
  p.risk = get_num(j, "risk");
  p.se = get_num(j, "se");
  p.failures = j.at("failures").get<int>();
  p.used_in_fit = j.at("used_in_fit").get<bool>();
}

void to_json(json& j, const RateReport& r)
{
  j = json{ { "report", "rate" },
            { "scenario", r.scenario },
            { "estimator", r.estimator },
            { "target", r.pointwise ? "pointwise" : "global" },
            { "x0", num(r.x0) },
            { "gamma", num(r.gamma) },
            { "replications", r.replications },
            { "seed", r.seed },
            { "grid", r.grid },
            { "grid_note", r.grid.note() },
            { "points", r.points },
            { "slope_defined", r.slope_defined },
            { "slope", num(r.slope) },
            { "slope_se", num(r.slope_se) },
            { "theoretical_slope", num(r.theoretical_slope) } };
}

void from_json(const json& j, RateReport& r)
{
  r.scenario = j.at("scenario").get<std::string>();
  r.estimator = j.at("estimator").get<EstimatorConfig>();
  r.pointwise = j.at("target").get<std::string>() == "pointwise";
  r.x0 = get_num(j, "x0");
  r.gamma = get_num(j, "gamma");
  r.replications = j.at("replications").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.grid = j.at("grid").get<GridSpec>();
  r.points = j.at("points").get<std::vector<RatePoint>>();
  r.slope_defined = j.at("slope_defined").get<bool>();
  r.slope = get_num(j, "slope");
  r.slope_se = get_num(j, "slope_se");
  r.theoretical_slope = get_num(j, "theoretical_slope");
}

void to_json(json& j, const NormalityReport& r)
{
  j = json{ { "report", "normality" },
            { "scenario", r.scenario },
            { "estimator", r.estimator },
            { "n", r.n },
            { "bandwidth", num(r.bandwidth) },
            { "x0", num(r.x0) },
            { "replications", r.replications },
            { "failures", r.failures },
            { "seed", r.seed },
            { "draw_mean", num(r.draw_mean) },
            { "draw_sd", num(r.draw_sd) },
            { "skewness", num(r.skewness) },
            { "excess_kurtosis", num(r.excess_kurtosis) },
            { "ks_distance", num(r.ks_distance) },
            { "draws", num_array(r.draws) },
            { "standardized", num_array(r.standardized) } };
}

void from_json(const json& j, NormalityReport& r)
{
  r.scenario = j.at("scenario").get<std::string>();
  r.estimator = j.at("estimator").get<EstimatorConfig>();
  r.n = j.at("n").get<std::size_t>();
  r.bandwidth = get_num(j, "bandwidth");
  r.x0 = get_num(j, "x0");
  r.replications = j.at("replications").get<int>();
  r.failures = j.at("failures").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.draw_mean = get_num(j, "draw_mean");
  r.draw_sd = get_num(j, "draw_sd");
  r.skewness = get_num(j, "skewness");
  r.excess_kurtosis = get_num(j, "excess_kurtosis");
  r.ks_distance = get_num(j, "ks_distance");
  r.draws = get_num_array(j, "draws");
  r.standardized = get_num_array(j, "standardized");
}

void to_json(json& j, const MeanEffectPoint& p)
{
  j = json{ { "n", p.n },
            { "bandwidth", num(p.bandwidth) },
            { "rough_risk", num(p.rough_risk) },
            { "rough_se", num(p.rough_se) },
            { "smooth_risk", num(p.smooth_risk) },
            { "smooth_se", num(p.smooth_se) },
            { "ratio", num(p.ratio) },
            { "ratio_se", num(p.ratio_se) } };
}

void from_json(const json& j, MeanEffectPoint& p)
{
  p.n = j.at("n").get<std::size_t>();
  p.bandwidth = get_num(j, "bandwidth");
  p.rough_risk = get_num(j, "rough_risk");
  p.rough_se = get_num(j, "rough_se");
  p.smooth_risk = get_num(j, "smooth_risk");
  p.smooth_se = get_num(j, "smooth_se");
  p.ratio = get_num(j, "ratio");
  p.ratio_se = get_num(j, "ratio_se");
}

void to_json(json& j, const MeanEffectReport& r)
{
  j = json{ { "report", "mean_effect" },
            { "gamma", num(r.gamma) },
            { "beta", num(r.beta) },
            { "estimator", r.estimator },
            { "replications", r.replications },
            { "seed", r.seed },
            { "grid", r.grid },
            { "points", r.points } };
}

void from_json(const json& j, MeanEffectReport& r)
{
  r.gamma = get_num(j, "gamma");
  r.beta = get_num(j, "beta");
  r.estimator = j.at("estimator").get<EstimatorConfig>();
  r.replications = j.at("replications").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.grid = j.at("grid").get<GridSpec>();
  r.points = j.at("points").get<std::vector<MeanEffectPoint>>();
}

void to_json(json& j, const BiasVarianceReport& r)
{
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back({ { "bandwidth", num(p.bandwidth) },
                    { "sq_bias", num(p.sq_bias) },
                    { "variance", num(p.variance) } });
  j = json{ { "report", "bias_variance" },
            { "scenario", r.scenario },
            { "n", r.n },
            { "replications", r.replications },
            { "points", pts },
            { "bias_slope", num(r.bias_slope) },
            { "variance_slope", num(r.variance_slope) } };
}

void to_json(json& j, const CvScore& s)
{
  j = json{ { "h", num(s.bandwidth) }, { "cv_score", num(s.score) },
            { "disqualified", s.disqualified } };
  if (s.disqualified)
    j["reason"] = s.reason;
}

void from_json(const json& j, CvScore& s)
{
  s.bandwidth = get_num(j, "h");
  s.score = get_num(j, "cv_score");
  s.disqualified = j.at("disqualified").get<bool>();
  s.reason = j.value("reason", std::string());
}

void to_json(json& j, const CvReport& r)
{
  j = json{ { "scores", r.scores },
            { "selected", num(r.selected) },
            { "folds", r.folds },
            { "seed", r.seed } };
}

void from_json(const json& j, CvReport& r)
{
  r.scores = j.at("scores").get<std::vector<CvScore>>();
  r.selected = get_num(j, "selected");
  r.folds = j.at("folds").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
}

json provenance_json(const VarianceEstimate& e)
{
  json j{ { "sequence", sequence_summary(e.sequence) },
          { "smoother", e.config },
          { "clipped", e.clipped },
          { "any_negative", e.any_negative() },
          { "any_expanded", e.any_expanded() },
          { "grid_size", e.grid.size() } };
  if (e.any_expanded()) {
    json ex = json::array();
    for (std::size_t i = 0; i < e.grid.size(); ++i)
      if (e.expanded[i])
        ex.push_back({ { "x", num(e.grid[i]) }, { "bandwidth", num(e.bandwidths[i]) } });
    j["expanded_points"] = ex;
  }
  if (e.any_negative()) {
    json neg = json::array();
    for (std::size_t i = 0; i < e.grid.size(); ++i)
      if (e.negative[i])
        neg.push_back(num(e.grid[i]));
    j["negative_points"] = neg;
  }
  return j;
}

json sequence_summary(const DifferenceSequence& seq)
{
  return json{ { "order", seq.order() },
               { "coefficients", seq },
               { "variance_factor", num(variance_factor(seq)) },
               { "min_constant", num(min_constant(seq.order())) } };
}

std::string dump(const json& j)
{
  return j.dump(2) + "\n";
}

} // namespace varest
