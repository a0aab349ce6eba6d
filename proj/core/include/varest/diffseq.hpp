#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace varest {

//! Coefficients (d_0, ..., d_r) with sum zero and unit squared norm.
//!
//! Instances are only produced by `validate()` (or by helpers that call it),
//! so every live object satisfies the defining constraints.
class DifferenceSequence
{
public:
  static constexpr double tolerance = 1e-12;

  //! Validates `coeffs` and throws `Error` with kind TooShort, SumNotZero,
  //! NormNotOne or DegenerateEndpoint when a constraint fails.
  static DifferenceSequence validate(std::vector<double> coeffs);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](std::size_t j) const { return coeffs_[j]; }

  bool operator==(const DifferenceSequence&) const = default;

private:
  explicit DifferenceSequence(std::vector<double> coeffs)
    : coeffs_(std::move(coeffs))
  {}

  std::vector<double> coeffs_;
};

enum class StandardSequence
{
  first_difference,
  gsjs
};

StandardSequence parse_standard_sequence(std::string_view name);
std::string_view to_string(StandardSequence kind);

//! (1, -1)/sqrt(2) or (1, -2, 1)/sqrt(6).
DifferenceSequence standard_sequence(StandardSequence kind);

//! Lag-k autocorrelation sum_{j=0}^{r-k} d_j d_{j+k}, for k = 1..r.
std::vector<double> lag_products(std::span<const double> d);

//! Variance inflation constant C = 2 (1 + 2 sum_k rho_k^2) where rho_k are
//! the lag products. For every valid sequence C >= (2r + 1)/r.
double variance_factor(const DifferenceSequence& seq);

//! (2r + 1)/r; throws NonPositiveOrder for r < 1.
double min_constant(int r);

struct OptimizerOptions
{
  std::uint64_t seed = 0x5eed'd1ffULL;
  int max_restarts = 400;
  int max_iterations = 2000;
  double gradient_tolerance = 1e-10;
};

//! Difference sequence of order r whose variance factor is within
//! `tolerance` of min_constant(r). Canonicalized so d_0 > 0 and, among the
//! sign/reversal images of the optimum, the lexicographically largest one.
//! Throws ConvergenceFailure if no restart reaches the tolerance.
DifferenceSequence optimal_sequence(int r,
                                    double tolerance = 1e-9,
                                    const OptimizerOptions& options = {});

} // namespace varest
