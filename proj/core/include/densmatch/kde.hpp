#pragma once

#include <Eigen/Core>

#include <optional>
#include <utility>

#include "densmatch/quadrature.hpp"

namespace densmatch {

enum class Kernel { gaussian };

/// Bandwidth selection: explicit h when set, Silverman's rule otherwise.
struct KdeConfig {
  std::optional<double> bandwidth;
  Kernel kernel = Kernel::gaussian;
};

/// Model responses f_j at M frozen uncertainty samples, with the optional
/// M x n design Jacobian d f_j / d s_k needed for gradients.
struct SampleResponses {
  Eigen::VectorXd values;
  std::optional<Eigen::MatrixXd> jacobian;
};

/// h = 0.9 * min(sample std, IQR / 1.34) * M^(-1/5).
double silverman_bandwidth(const Eigen::VectorXd& values);

/// Bandwidth from config, falling back to Silverman on the given values.
double resolve_bandwidth(const KdeConfig& cfg, const Eigen::VectorXd& values);

/// Gaussian kernel value and derivative: K_h(x) = exp(-x^2 / 2h^2) / (h sqrt(2 pi)).
std::pair<double, double> kernel_and_derivative(Kernel kernel, double h, double x);

/// Kernel density estimate (1/M) sum_j K_h(f_i - f_j) on the grid nodes.
DensityVector kde_estimate(const SampleResponses& samples, const QuadratureGrid& grid,
                           const KdeConfig& cfg);

/// Gradient of the discretized distance to the target with respect to the
/// design variables: 2 (t - K e)^T W K' F', as an n-vector. The samples (and
/// the bandwidth resolved from them) define the objective; requires the
/// Jacobian.
Eigen::VectorXd kde_gradient(const SampleResponses& samples, const QuadratureGrid& grid,
                             const KdeConfig& cfg, const DensityVector& target);

/// Design sensitivity of the estimate itself, d q~(f_i) / d s_k = -(K' F')_ik,
/// as an N x n matrix. The kernel-smoothed counterpart of the exact derived
/// density sensitivity.
Eigen::MatrixXd kde_sensitivity(const SampleResponses& samples, const QuadratureGrid& grid,
                                const KdeConfig& cfg);

}  // namespace densmatch
