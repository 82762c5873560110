#include "densmatch/kde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace densmatch {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143268;

// Quantile with (n+1)p indexing, linearly interpolated and clamped to the
// order statistics.
double quantile(std::vector<double> sorted, double p) {
  const auto n = static_cast<double>(sorted.size());
  const double h = (n + 1.0) * p;
  if (h <= 1.0) return sorted.front();
  if (h >= n) return sorted.back();
  const auto j = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(j);
  return sorted[j - 1] + frac * (sorted[j] - sorted[j - 1]);
}

void require_samples(const SampleResponses& samples) {
  if (samples.values.size() < 2) {
    throw std::invalid_argument("kde: need at least 2 samples");
  }
}

}  // namespace

double silverman_bandwidth(const Eigen::VectorXd& values) {
  if (values.size() < 2) {
    throw std::invalid_argument("silverman_bandwidth: need at least 2 samples");
  }
  const auto m = static_cast<double>(values.size());
  const double mean = values.mean();
  const double var = (values.array() - mean).square().sum() / (m - 1.0);
  const double sd = std::sqrt(var);

  std::vector<double> sorted(values.data(), values.data() + values.size());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);

  const double scale = std::min(sd, iqr / 1.34);
  if (!(scale > 0.0)) {
    throw std::invalid_argument("silverman_bandwidth: samples have zero spread");
  }
  return 0.9 * scale * std::pow(m, -0.2);
}

double resolve_bandwidth(const KdeConfig& cfg, const Eigen::VectorXd& values) {
  if (cfg.bandwidth) {
    if (!(*cfg.bandwidth > 0.0)) {
      throw std::invalid_argument("KdeConfig: explicit bandwidth must be positive");
    }
    return *cfg.bandwidth;
  }
  return silverman_bandwidth(values);
}

std::pair<double, double> kernel_and_derivative(Kernel kernel, double h, double x) {
  if (!(h > 0.0)) throw std::invalid_argument("kernel_and_derivative: h must be positive");
  switch (kernel) {
    case Kernel::gaussian: {
      const double zed = x / h;
      const double k = kInvSqrt2Pi / h * std::exp(-0.5 * zed * zed);
      return {k, -x / (h * h) * k};
    }
  }
  throw std::invalid_argument("kernel_and_derivative: unknown kernel");
}

DensityVector kde_estimate(const SampleResponses& samples, const QuadratureGrid& grid,
                           const KdeConfig& cfg) {
  require_samples(samples);
  const double h = resolve_bandwidth(cfg, samples.values);
  const auto m = static_cast<int>(samples.values.size());

  const Eigen::ArrayXd nodes = grid.nodes().array();
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(grid.size());
  for (int j = 0; j < m; ++j) {
    acc += (-0.5 * ((nodes - samples.values[j]) / h).square()).exp();
  }
  acc *= kInvSqrt2Pi / (h * static_cast<double>(m));
  return DensityVector(grid, acc.matrix());
}

Eigen::VectorXd kde_gradient(const SampleResponses& samples, const QuadratureGrid& grid,
                             const KdeConfig& cfg, const DensityVector& target) {
  require_samples(samples);
  if (!samples.jacobian) {
    throw std::invalid_argument("kde_gradient: samples need a design Jacobian");
  }
  if (!(target.grid() == grid)) {
    throw std::invalid_argument("kde_gradient: target grid mismatch");
  }
  const auto m = static_cast<int>(samples.values.size());
  if (samples.jacobian->rows() != m) {
    throw std::invalid_argument("kde_gradient: Jacobian row count must equal sample count");
  }
  const double h = resolve_bandwidth(cfg, samples.values);

  const DensityVector estimate = kde_estimate(samples, grid, cfg);
  const Eigen::ArrayXd weighted_residual =
      (target.values().array() - estimate.values().array()) * grid.weights().array();

  // gamma_j = sum_i (t - Ke)_i w_i K'(f_i - f_j) / M, then grad = 2 J^T gamma.
  const Eigen::ArrayXd nodes = grid.nodes().array();
  Eigen::VectorXd gamma(m);
  const double norm = kInvSqrt2Pi / (h * static_cast<double>(m));
  for (int j = 0; j < m; ++j) {
    const Eigen::ArrayXd x = nodes - samples.values[j];
    const Eigen::ArrayXd kprime = (-0.5 * (x / h).square()).exp() * (-x / (h * h)) * norm;
    gamma[j] = (weighted_residual * kprime).sum();
  }
  return 2.0 * samples.jacobian->transpose() * gamma;
}

Eigen::MatrixXd kde_sensitivity(const SampleResponses& samples, const QuadratureGrid& grid,
                                const KdeConfig& cfg) {
  require_samples(samples);
  if (!samples.jacobian) {
    throw std::invalid_argument("kde_sensitivity: samples need a design Jacobian");
  }
  const auto m = static_cast<int>(samples.values.size());
  if (samples.jacobian->rows() != m) {
    throw std::invalid_argument("kde_sensitivity: Jacobian row count must equal sample count");
  }
  const double h = resolve_bandwidth(cfg, samples.values);

  const Eigen::ArrayXd nodes = grid.nodes().array();
  const double norm = kInvSqrt2Pi / (h * static_cast<double>(m));
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(grid.size(), samples.jacobian->cols());
  for (int j = 0; j < m; ++j) {
    const Eigen::ArrayXd x = nodes - samples.values[j];
    const Eigen::VectorXd kprime =
        ((-0.5 * (x / h).square()).exp() * (-x / (h * h)) * norm).matrix();
    // d q~ / d s = -K' F' row contribution.
    out.noalias() -= kprime * samples.jacobian->row(j);
  }
  return out;
}

}  // namespace densmatch
