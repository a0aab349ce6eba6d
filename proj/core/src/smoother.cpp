#include "varest/smoother.hpp"

#include "varest/error.hpp"
#include "varest/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace varest {

void SmootherConfig::check() const
{
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    throw Error(ErrorKind::BadParameter,
                "bandwidth must be positive, got " + std::to_string(bandwidth));
  if (degree < 0)
    throw Error(ErrorKind::BadParameter,
                "degree must be >= 0, got " + std::to_string(degree));
}

double EffectiveWeights::apply(std::span<const double> values) const
{
  double s = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k)
    s += weights[k] * values[first + k];
  return s;
}

namespace {

struct Window
{
  std::size_t first;
  std::size_t last; // one past
};

Window window_at(std::span<const double> xs, double x, double h)
{
  const auto lo = std::lower_bound(xs.begin(), xs.end(), x - h);
  const auto hi = std::upper_bound(lo, xs.end(), x + h);
  return { static_cast<std::size_t>(lo - xs.begin()),
           static_cast<std::size_t>(hi - xs.begin()) };
}

// Bandwidth just large enough that `needed` distinct abscissae receive
// positive kernel weight.
double minimum_bandwidth(std::span<const double> xs, double x, int needed)
{
  std::size_t right = static_cast<std::size_t>(
    std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
  std::size_t left = right; // candidates are xs[left-1] and xs[right]
  int distinct = 0;
  double last_taken = std::numeric_limits<double>::quiet_NaN();
  double dist = 0.0;
  while (distinct < needed && (left > 0 || right < xs.size())) {
    const double dl = left > 0 ? x - xs[left - 1]
                               : std::numeric_limits<double>::infinity();
    const double dr = right < xs.size()
                        ? xs[right] - x
                        : std::numeric_limits<double>::infinity();
    double taken;
    if (dl <= dr) {
      taken = xs[--left];
      dist = dl;
    } else {
      taken = xs[right++];
      dist = dr;
    }
    if (!(taken == last_taken)) {
      ++distinct;
      last_taken = taken;
    }
  }
  if (distinct < needed)
    return std::numeric_limits<double>::infinity();
  return 1.01 * dist;
}

// QR factorization of the sqrt-kernel-weighted local design in the scaled
// abscissa u = (x_i - x)/h.
struct LocalSystem
{
  Window window{};
  double h = 0.0;
  bool expanded = false;
  std::vector<double> kernel_values; // per window entry
  std::vector<double> scaled;        // u per window entry
  std::vector<std::size_t> active;   // window offsets with K > 0
  Eigen::MatrixXd design;            // sqrt(K) u^j over active rows
  Eigen::HouseholderQR<Eigen::MatrixXd> qr;
  double rcond = 0.0;
};

int count_distinct_active(std::span<const double> xs,
                          const Window& w,
                          const std::vector<std::size_t>& active)
{
  int distinct = 0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t a : active) {
    const double v = xs[w.first + a];
    if (!(v == prev)) {
      ++distinct;
      prev = v;
    }
  }
  return distinct;
}

void populate(LocalSystem& sys,
              std::span<const double> xs,
              const SmootherConfig& config,
              double x)
{
  sys.window = window_at(xs, x, sys.h);
  const std::size_t m = sys.window.last - sys.window.first;
  sys.kernel_values.assign(m, 0.0);
  sys.scaled.assign(m, 0.0);
  sys.active.clear();
  for (std::size_t k = 0; k < m; ++k) {
    const double u = (xs[sys.window.first + k] - x) / sys.h;
    sys.scaled[k] = u;
    sys.kernel_values[k] = config.kernel(u);
    if (sys.kernel_values[k] > 0.0)
      sys.active.push_back(k);
  }
}

LocalSystem build_system(std::span<const double> xs,
                         const SmootherConfig& config,
                         double x)
{
  config.check();
  const int q = config.degree + 1;
  LocalSystem sys;
  sys.h = config.bandwidth;
  populate(sys, xs, config, x);

  int distinct = count_distinct_active(xs, sys.window, sys.active);
  if (distinct < q && config.expand_to_minimum) {
    const double grown = minimum_bandwidth(xs, x, q);
    if (std::isfinite(grown) && grown > sys.h) {
      sys.h = grown;
      sys.expanded = true;
      populate(sys, xs, config, x);
      distinct = count_distinct_active(xs, sys.window, sys.active);
    }
  }
  if (distinct < q) {
    std::ostringstream msg;
    msg << "only " << distinct << " distinct abscissae with positive weight "
        << "at x=" << x << " (h=" << sys.h << ", need " << q << ")";
    throw Error(ErrorKind::InsufficientSupport, msg.str());
  }

  const auto rows = static_cast<Eigen::Index>(sys.active.size());
  sys.design.resize(rows, q);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::size_t k = sys.active[static_cast<std::size_t>(i)];
    const double s = std::sqrt(sys.kernel_values[k]);
    double p = s;
    for (int j = 0; j < q; ++j) {
      sys.design(i, j) = p;
      p *= sys.scaled[k];
    }
  }
  sys.qr.compute(sys.design);

  const Eigen::MatrixXd r_factor =
    sys.qr.matrixQR().topLeftCorner(q, q).triangularView<Eigen::Upper>();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(r_factor).singularValues();
  sys.rcond = sv(0) > 0.0 ? sv(q - 1) / sv(0) : 0.0;
  if (!(sys.rcond >= rank_threshold)) {
    std::ostringstream msg;
    msg << "local design at x=" << x << " has reciprocal condition "
        << sys.rcond << " (h=" << sys.h << ", degree " << config.degree << ")";
    throw Error(ErrorKind::RankDeficient, msg.str());
  }
  return sys;
}

EffectiveWeights weights_from(const LocalSystem& sys, double x)
{
  const Eigen::Index q = sys.design.cols();
  const auto r_factor =
    sys.qr.matrixQR().topLeftCorner(q, q).triangularView<Eigen::Upper>();
  // g = (R^T R)^{-1} e_1, so that a_0 = sum_i K_i (sum_j u_i^j g_j) z_i
  Eigen::VectorXd g = Eigen::VectorXd::Unit(q, 0);
  r_factor.transpose().solveInPlace(g);
  r_factor.solveInPlace(g);

  EffectiveWeights out;
  out.eval_point = x;
  out.first = sys.window.first;
  out.weights.assign(sys.window.last - sys.window.first, 0.0);
  out.bandwidth = sys.h;
  out.expanded = sys.expanded;
  for (std::size_t k : sys.active) {
    const double u = sys.scaled[k];
    double poly = 0.0;
    for (Eigen::Index j = q - 1; j >= 0; --j)
      poly = poly * u + g(j);
    out.weights[k] = sys.kernel_values[k] * poly;
  }
  return out;
}

} // namespace

EffectiveWeights local_weights(std::span<const double> xs,
                               const SmootherConfig& config,
                               double x)
{
  return weights_from(build_system(xs, config, x), x);
}

LocalFit fit_at(std::span<const double> xs,
                std::span<const double> zs,
                const SmootherConfig& config,
                double x)
{
  if (xs.size() != zs.size())
    throw Error(ErrorKind::BadParameter, "abscissae and responses differ in length");
  const LocalSystem sys = build_system(xs, config, x);

  const auto rows = static_cast<Eigen::Index>(sys.active.size());
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::size_t k = sys.active[static_cast<std::size_t>(i)];
    rhs(i) = std::sqrt(sys.kernel_values[k]) * zs[sys.window.first + k];
  }
  const Eigen::VectorXd beta = sys.qr.solve(rhs);

  LocalFit fit;
  fit.coefficients.resize(static_cast<std::size_t>(beta.size()));
  // beta is in powers of (x_i - x)/h; report powers of (x - x_i)
  double scale = 1.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    fit.coefficients[static_cast<std::size_t>(j)] = sign * beta(j) / scale;
    scale *= sys.h;
  }
  fit.weights = weights_from(sys, x);
  fit.condition_estimate = sys.rcond;
  return fit;
}

std::vector<LocalFit> fit_on_grid(std::span<const double> xs,
                                  std::span<const double> zs,
                                  const SmootherConfig& config,
                                  std::span<const double> grid,
                                  unsigned threads)
{
  std::vector<LocalFit> fits(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t g) {
    try {
      fits[g] = fit_at(xs, zs, config, grid[g]);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "grid point " << g << " (x=" << grid[g] << "): " << e.detail();
      throw Error(e.kind(), msg.str());
    }
  });
  return fits;
}

CltDiagnostics clt_diagnostics(const EffectiveWeights& weights,
                               std::size_t n,
                               double h)
{
  CltDiagnostics d;
  for (double w : weights.weights) {
    d.max_abs_weight = std::max(d.max_abs_weight, std::abs(w));
    d.sum_sq_weights += w * w;
  }
  const double nh = static_cast<double>(n) * h;
  d.scaled_max = nh * d.max_abs_weight;
  d.scaled_sum_sq = nh * d.sum_sq_weights;
  return d;
}

} // namespace varest
