#include "varest/scenario.hpp"

#include "varest/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace varest {

namespace {

template<class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

double evaluate(const FunctionSpec& fn, double x)
{
  return std::visit(
    overloaded{
      [](const ConstantFn& f) { return f.value; },
      [x](const SineFn& f) {
        return f.offset +
               f.amplitude * std::sin(2.0 * std::numbers::pi * f.frequency * x);
      },
      [x](const PowerAbsFn& f) {
        return f.scale * std::pow(std::abs(x - f.center), f.exponent);
      },
      [x](const PolynomialFn& f) {
        double v = 0.0;
        for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it)
          v = v * x + *it;
        return v;
      },
    },
    fn);
}

ErrorLawKind parse_error_law(std::string_view name)
{
  if (name == "gaussian")
    return ErrorLawKind::gaussian;
  if (name == "scaled_uniform" || name == "uniform")
    return ErrorLawKind::scaled_uniform;
  if (name == "student_t")
    return ErrorLawKind::student_t;
  throw Error(ErrorKind::UnknownKind, "unknown error law '" + std::string(name) + "'");
}

std::string_view to_string(ErrorLawKind kind)
{
  switch (kind) {
    case ErrorLawKind::gaussian: return "gaussian";
    case ErrorLawKind::scaled_uniform: return "scaled_uniform";
    case ErrorLawKind::student_t: return "student_t";
  }
  return "unknown";
}

void ErrorLaw::check() const
{
  if (kind == ErrorLawKind::student_t && !(df > 8.0))
    throw Error(ErrorKind::BadScenario,
                "student_t errors need df > 8, got " + std::to_string(df));
}

double ErrorLaw::fourth_moment() const
{
  switch (kind) {
    case ErrorLawKind::gaussian:
      return 3.0;
    case ErrorLawKind::scaled_uniform:
      return 9.0 / 5.0;
    case ErrorLawKind::student_t:
      return 3.0 * (df - 2.0) / (df - 4.0);
  }
  return 0.0;
}

std::vector<double> Scenario::design_points() const
{
  if (!design.empty())
    return design;
  std::vector<double> xs(n);
  const double denom = static_cast<double>(n) + 1.0;
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = static_cast<double>(i + 1) / denom;
  return xs;
}

void Scenario::check() const
{
  if (!design.empty() && design.size() != n)
    throw Error(ErrorKind::BadScenario, "explicit design length differs from n");
  if (n < 2)
    throw Error(ErrorKind::BadScenario, "scenario needs n >= 2");
  error_law.check();
  const auto xs = design_points();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0 && xs[i] < 1.0) || (i > 0 && !(xs[i] > xs[i - 1])))
      throw Error(ErrorKind::BadScenario,
                  "design must be strictly increasing inside (0,1)");
    const double v = evaluate(var_fn, xs[i]);
    if (!(v >= 0.0) || !std::isfinite(v))
      throw Error(ErrorKind::BadScenario,
                  "variance function is negative at x=" + std::to_string(xs[i]));
    if (var_class.delta > 0.0 && v < var_class.delta)
      throw Error(ErrorKind::BadScenario,
                  "variance " + std::to_string(v) + " below delta=" +
                    std::to_string(var_class.delta) +
                    " at x=" + std::to_string(xs[i]));
    if (!std::isfinite(evaluate(mean_fn, xs[i])))
      throw Error(ErrorKind::BadScenario, "mean function is not finite");
  }
}

Scenario Scenario::with_n(std::size_t new_n) const
{
  Scenario s = *this;
  s.n = new_n;
  s.design.clear();
  return s;
}

Scenario default_smooth_scenario(std::size_t n)
{
  Scenario s;
  s.name = "smooth";
  s.n = n;
  return s;
}

Scenario homoscedastic_scenario(std::size_t n, double mean, double variance)
{
  Scenario s;
  s.name = "homoscedastic";
  s.mean_fn = ConstantFn{ mean };
  s.var_fn = ConstantFn{ variance };
  s.n = n;
  s.var_class.delta = variance;
  return s;
}

Scenario rough_mean_scenario(std::size_t n, double beta)
{
  Scenario s = default_smooth_scenario(n);
  s.name = "rough_mean";
  s.mean_fn = PowerAbsFn{ 0.5, beta, 1.0 };
  s.mean_class.gamma = beta;
  return s;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b)
{
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ splitmix64(a + 0x632be59bd9b4e019ULL));
  h = splitmix64(h ^ splitmix64(b + 0x8cb92ba72f3d8dd7ULL));
  return h;
}

SampleGenerator::SampleGenerator(const Scenario& scenario)
  : law_(scenario.error_law)
  , xs_(scenario.design_points())
{
  scenario.check();
  means_.resize(xs_.size());
  sds_.resize(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    means_[i] = evaluate(scenario.mean_fn, xs_[i]);
    sds_[i] = std::sqrt(evaluate(scenario.var_fn, xs_[i]));
  }
}

void SampleGenerator::draw(std::mt19937_64& rng, std::span<double> ys) const
{
  switch (law_.kind) {
    case ErrorLawKind::gaussian: {
      std::normal_distribution<double> dist;
      for (std::size_t i = 0; i < ys.size(); ++i)
        ys[i] = means_[i] + sds_[i] * dist(rng);
      break;
    }
    case ErrorLawKind::scaled_uniform: {
      const double a = std::sqrt(3.0);
      std::uniform_real_distribution<double> dist(-a, a);
      for (std::size_t i = 0; i < ys.size(); ++i)
        ys[i] = means_[i] + sds_[i] * dist(rng);
      break;
    }
    case ErrorLawKind::student_t: {
      std::student_t_distribution<double> dist(law_.df);
      const double scale = std::sqrt((law_.df - 2.0) / law_.df);
      for (std::size_t i = 0; i < ys.size(); ++i)
        ys[i] = means_[i] + sds_[i] * scale * dist(rng);
      break;
    }
  }
}

Sample SampleGenerator::draw(std::uint64_t seed) const
{
  std::mt19937_64 rng(seed);
  std::vector<double> ys(xs_.size());
  draw(rng, ys);
  return Sample(xs_, std::move(ys));
}

Sample generate_sample(const Scenario& scenario, std::uint64_t seed)
{
  return SampleGenerator(scenario).draw(seed);
}

} // namespace varest
