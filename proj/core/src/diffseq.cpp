#include "varest/diffseq.hpp"

#include "varest/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace varest {

DifferenceSequence DifferenceSequence::validate(std::vector<double> coeffs)
{
  if (coeffs.size() < 2)
    throw Error(ErrorKind::TooShort,
                "a difference sequence needs at least two coefficients, got " +
                  std::to_string(coeffs.size()));
  double sum = 0.0;
  double sumsq = 0.0;
  for (double d : coeffs) {
    if (!std::isfinite(d))
      throw Error(ErrorKind::NormNotOne, "non-finite coefficient");
    sum += d;
    sumsq += d * d;
  }
  if (std::abs(sum) > tolerance)
    throw Error(ErrorKind::SumNotZero,
                "coefficients sum to " + std::to_string(sum));
  if (std::abs(sumsq - 1.0) > tolerance)
    throw Error(ErrorKind::NormNotOne,
                "squared norm is " + std::to_string(sumsq));
  if (coeffs.front() == 0.0 || coeffs.back() == 0.0)
    throw Error(ErrorKind::DegenerateEndpoint,
                "first and last coefficients must be nonzero");
  return DifferenceSequence(std::move(coeffs));
}

StandardSequence parse_standard_sequence(std::string_view name)
{
  if (name == "first_difference" || name == "rice")
    return StandardSequence::first_difference;
  if (name == "gsjs")
    return StandardSequence::gsjs;
  throw Error(ErrorKind::UnknownKind,
              "unknown standard sequence '" + std::string(name) + "'");
}

std::string_view to_string(StandardSequence kind)
{
  switch (kind) {
    case StandardSequence::first_difference:
      return "first_difference";
    case StandardSequence::gsjs:
      return "gsjs";
  }
  return "unknown";
}

DifferenceSequence standard_sequence(StandardSequence kind)
{
  switch (kind) {
    case StandardSequence::first_difference: {
      const double c = 1.0 / std::sqrt(2.0);
      return DifferenceSequence::validate({ c, -c });
    }
    case StandardSequence::gsjs: {
      // (1/2, -1, 1/2) scaled to unit norm
      const double c = 1.0 / std::sqrt(6.0);
      return DifferenceSequence::validate({ c, -2.0 * c, c });
    }
  }
  throw Error(ErrorKind::UnknownKind, "unknown standard sequence");
}

std::vector<double> lag_products(std::span<const double> d)
{
  const std::size_t r = d.size() - 1;
  std::vector<double> rho(r, 0.0);
  for (std::size_t k = 1; k <= r; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j + k <= r; ++j)
      s += d[j] * d[j + k];
    rho[k - 1] = s;
  }
  return rho;
}

double variance_factor(const DifferenceSequence& seq)
{
  double acc = 0.0;
  for (double rho : lag_products(seq.coeffs()))
    acc += rho * rho;
  return 2.0 * (1.0 + 2.0 * acc);
}

double min_constant(int r)
{
  if (r < 1)
    throw Error(ErrorKind::NonPositiveOrder,
                "order must be >= 1, got " + std::to_string(r));
  return (2.0 * r + 1.0) / r;
}

namespace {

// Orthonormal basis of the hyperplane {sum d = 0} in R^{r+1} (Helmert).
Eigen::MatrixXd helmert_basis(int r)
{
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(r + 1, r);
  for (int k = 1; k <= r; ++k) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    basis.col(k - 1).head(k).setConstant(scale);
    basis(k, k - 1) = -k * scale;
  }
  return basis;
}

// Sum of squared lag products and its gradient with respect to d.
double autocorrelation_energy(const Eigen::VectorXd& d, Eigen::VectorXd* grad)
{
  const Eigen::Index r = d.size() - 1;
  Eigen::VectorXd rho(r);
  for (Eigen::Index k = 1; k <= r; ++k)
    rho(k - 1) = d.head(r + 1 - k).dot(d.tail(r + 1 - k));
  if (grad) {
    grad->setZero(d.size());
    for (Eigen::Index k = 1; k <= r; ++k) {
      const double c = 2.0 * rho(k - 1);
      for (Eigen::Index m = 0; m <= r; ++m) {
        double dr = 0.0;
        if (m + k <= r)
          dr += d(m + k);
        if (m - k >= 0)
          dr += d(m - k);
        (*grad)(m) += c * dr;
      }
    }
  }
  return rho.squaredNorm();
}

struct SphereObjective
{
  Eigen::MatrixXd basis;

  // F(theta) = energy(B theta / |theta|); scale invariant in theta.
  double operator()(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) const
  {
    const double norm = theta.norm();
    const Eigen::VectorXd u = theta / norm;
    const Eigen::VectorXd d = basis * u;
    Eigen::VectorXd gd;
    const double f = autocorrelation_energy(d, &gd);
    Eigen::VectorXd g = basis.transpose() * gd;
    g -= u * u.dot(g);
    grad = g / norm;
    return f;
  }
};

struct LocalResult
{
  Eigen::VectorXd theta;
  double value;
  double grad_norm;
};

LocalResult bfgs(const SphereObjective& objective,
                 Eigen::VectorXd theta,
                 const OptimizerOptions& options)
{
  const Eigen::Index dim = theta.size();
  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::VectorXd grad(dim);
  double value = objective(theta, grad);

  for (int it = 0; it < options.max_iterations; ++it) {
    if (grad.norm() < options.gradient_tolerance)
      break;
    Eigen::VectorXd direction = -inv_hessian * grad;
    double slope = grad.dot(direction);
    if (slope >= 0.0) {
      inv_hessian.setIdentity();
      direction = -grad;
      slope = -grad.squaredNorm();
    }

    double step = 1.0;
    Eigen::VectorXd next;
    Eigen::VectorXd next_grad(dim);
    double next_value = value;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      next = theta + step * direction;
      next_value = objective(next, next_grad);
      if (next_value <= value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      break;

    const Eigen::VectorXd s = next - theta;
    const Eigen::VectorXd y = next_grad - grad;
    const double sy = s.dot(y);
    if (sy > 1e-300) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
      inv_hessian = (id - rho * s * y.transpose()) * inv_hessian *
                      (id - rho * y * s.transpose()) +
                    rho * s * s.transpose();
    }
    // keep |theta| near one; the objective does not depend on it
    const double norm = next.norm();
    theta = next / norm;
    grad = next_grad * norm;
    inv_hessian /= norm * norm;
    value = next_value;
  }
  return { theta / theta.norm(), value, grad.norm() };
}

std::vector<double> canonical_form(const Eigen::VectorXd& d)
{
  std::vector<double> plain(d.data(), d.data() + d.size());
  std::vector<double> reversed(plain.rbegin(), plain.rend());
  std::array<std::vector<double>, 4> images{ plain, reversed, plain, reversed };
  for (double& v : images[2])
    v = -v;
  for (double& v : images[3])
    v = -v;
  std::vector<double> best;
  for (auto& img : images) {
    if (img.front() <= 0.0)
      continue;
    if (best.empty() || img > best)
      best = img;
  }
  return best;
}

} // namespace

DifferenceSequence optimal_sequence(int r,
                                    double tolerance,
                                    const OptimizerOptions& options)
{
  const double target = min_constant(r);
  if (!(tolerance > 0.0))
    throw Error(ErrorKind::BadParameter, "tolerance must be positive");

  const SphereObjective objective{ helmert_basis(r) };
  std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(r));
  std::normal_distribution<double> normal;

  double best_gap = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < options.max_restarts; ++restart) {
    Eigen::VectorXd theta(r);
    for (Eigen::Index i = 0; i < r; ++i)
      theta(i) = normal(rng);
    if (theta.norm() == 0.0)
      continue;
    theta.normalize();

    const LocalResult local = bfgs(objective, theta, options);
    const Eigen::VectorXd d = (objective.basis * local.theta).normalized();

    // Re-project onto the constraint set exactly before validation.
    Eigen::VectorXd projected = d.array() - d.mean();
    projected.normalize();
    std::vector<double> coeffs = canonical_form(projected);
    if (coeffs.empty() || coeffs.back() == 0.0)
      continue;

    DifferenceSequence seq = DifferenceSequence::validate(std::move(coeffs));
    const double gap = variance_factor(seq) - target;
    best_gap = std::min(best_gap, gap);
    if (gap < tolerance && local.grad_norm < options.gradient_tolerance)
      return seq;
  }
  throw Error(ErrorKind::ConvergenceFailure,
              "order " + std::to_string(r) + ": best gap to (2r+1)/r was " +
                std::to_string(best_gap) + " after " +
                std::to_string(options.max_restarts) + " restarts");
}

} // namespace varest
