#pragma once

#include "varest/estimator.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace varest {

//! Named closed-form functions on [0, 1] used as mean and variance.
struct ConstantFn
{
  double value = 0.0;
  bool operator==(const ConstantFn&) const = default;
};

//! offset + amplitude * sin(2 pi frequency x)
struct SineFn
{
  double offset = 0.0;
  double amplitude = 1.0;
  double frequency = 1.0;
  bool operator==(const SineFn&) const = default;
};

//! scale * |x - center|^exponent; Hoelder continuous with that exponent.
struct PowerAbsFn
{
  double center = 0.5;
  double exponent = 0.5;
  double scale = 1.0;
  bool operator==(const PowerAbsFn&) const = default;
};

//! sum_k coeffs[k] x^k
struct PolynomialFn
{
  std::vector<double> coeffs;
  bool operator==(const PolynomialFn&) const = default;
};

using FunctionSpec = std::variant<ConstantFn, SineFn, PowerAbsFn, PolynomialFn>;

double evaluate(const FunctionSpec& fn, double x);

struct HoelderClassSpec
{
  double gamma = 2.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double delta = 0.0; // lower bound for variance functions; <= 0 disables the check

  bool operator==(const HoelderClassSpec&) const = default;
};

enum class ErrorLawKind
{
  gaussian,
  scaled_uniform,
  student_t
};

//! Zero-mean, unit-variance error distribution with finite fourth moment.
struct ErrorLaw
{
  ErrorLawKind kind = ErrorLawKind::gaussian;
  double df = 0.0; // student_t only; must exceed 8

  bool operator==(const ErrorLaw&) const = default;

  void check() const;
  //! E eps^4
  double fourth_moment() const;
};

ErrorLawKind parse_error_law(std::string_view name);
std::string_view to_string(ErrorLawKind kind);

struct Scenario
{
  std::string name = "smooth";
  FunctionSpec mean_fn = SineFn{ 2.0, 1.0, 1.0 };
  FunctionSpec var_fn = SineFn{ 0.5, 0.25, 1.0 };
  //! Empty means equispaced x_i = i/(n+1).
  std::vector<double> design;
  ErrorLaw error_law{};
  std::size_t n = 1000;
  HoelderClassSpec mean_class{ 2.0, 1.0, 1.0, 0.0 };
  HoelderClassSpec var_class{ 2.0, 1.0, 1.0, 0.25 };

  bool operator==(const Scenario&) const = default;

  //! Design abscissae (equispaced or explicit).
  std::vector<double> design_points() const;
  //! Throws BadScenario on an inconsistent specification or when V drops
  //! below var_class.delta somewhere on the design.
  void check() const;
  //! Same scenario with an equispaced design of size n.
  Scenario with_n(std::size_t n) const;
};

//! g = 2 + sin(2 pi x), V = 0.5 + 0.25 sin(2 pi x).
Scenario default_smooth_scenario(std::size_t n);
//! g = 1, V = 2.
Scenario homoscedastic_scenario(std::size_t n, double mean = 1.0, double variance = 2.0);
//! g = |x - 1/2|^beta with the default smooth V.
Scenario rough_mean_scenario(std::size_t n, double beta);

//! Deterministic 64-bit seed for a sub-stream, e.g. (master, n, replication).
std::uint64_t derive_seed(std::uint64_t master,
                          std::uint64_t a,
                          std::uint64_t b = 0);

//! Design values g(x_i) and sqrt(V(x_i)) cached for repeated draws.
class SampleGenerator
{
public:
  explicit SampleGenerator(const Scenario& scenario);

  std::span<const double> xs() const { return xs_; }
  std::span<const double> means() const { return means_; }
  std::span<const double> sds() const { return sds_; }

  //! Fills ys with one draw of the model using `rng`.
  void draw(std::mt19937_64& rng, std::span<double> ys) const;
  Sample draw(std::uint64_t seed) const;

private:
  ErrorLaw law_;
  std::vector<double> xs_;
  std::vector<double> means_;
  std::vector<double> sds_;
};

//! y_i = g(x_i) + sqrt(V(x_i)) eps_i, reproducible from `seed`.
Sample generate_sample(const Scenario& scenario, std::uint64_t seed);

} // namespace varest
