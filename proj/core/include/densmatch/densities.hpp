#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <utility>
#include <variant>

#include "densmatch/quadrature.hpp"

namespace densmatch {

/// Beta(alpha, beta_shape) rescaled to the interval [lower, upper].
///
/// Shapes are restricted to alpha, beta_shape >= 1 so the density stays
/// bounded at the support endpoints.
class ScaledBeta {
public:
  ScaledBeta(double alpha, double beta_shape, double lower, double upper);

  double alpha() const noexcept { return alpha_; }
  double beta_shape() const noexcept { return beta_shape_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  double width() const noexcept { return upper_ - lower_; }

  /// Density at u; zero outside [lower, upper].
  double pdf(double u) const;

  /// Analytic d(pdf)/du. u must be strictly interior to the support; the
  /// derivative may be unbounded at the endpoints.
  double pdf_derivative(double u) const;

  double cdf(double u) const;

  /// Quantile for prob in [0, 1], solved to 1e-12 by safeguarded Newton.
  double inverse_cdf(double prob) const;

  double mean() const noexcept;
  double variance() const noexcept;
  std::pair<double, double> moments() const noexcept { return {mean(), variance()}; }

  /// Location of the density maximum (requires alpha + beta_shape > 2).
  double mode() const;

private:
  double alpha_;
  double beta_shape_;
  double lower_;
  double upper_;
  double log_beta_;  // log B(alpha, beta_shape)
};

/// Deterministic inverse-CDF sampler. Owns its RNG state; one caller per
/// instance.
class BetaSampler {
public:
  BetaSampler(ScaledBeta dist, std::uint64_t seed);

  double operator()();
  Eigen::VectorXd draw(int n);

private:
  ScaledBeta dist_;
  std::mt19937_64 rng_;
};

/// n i.i.d. draws from dist, deterministic for a fixed seed.
Eigen::VectorXd sample(const ScaledBeta& dist, int n, std::uint64_t seed);

/// Designer-supplied target pdf: Gaussian or scaled beta.
class TargetDensity {
public:
  static TargetDensity gaussian(double mean, double stddev);
  static TargetDensity scaled_beta(const ScaledBeta& dist);

  /// Raw pdf value at any real qoi value (nonnegative everywhere).
  double operator()(double f) const;

  /// Interval holding essentially all target mass: mean +/- 6 sigma for the
  /// Gaussian, the exact support for the scaled beta.
  std::pair<double, double> effective_support() const;

  bool is_gaussian() const noexcept;

private:
  struct Gaussian {
    double mean;
    double stddev;
  };
  explicit TargetDensity(std::variant<Gaussian, ScaledBeta> impl) : impl_(std::move(impl)) {}
  std::variant<Gaussian, ScaledBeta> impl_;
};

/// Target evaluated at the grid nodes. With renormalize (the default) the
/// values are rescaled so the quadrature integral is exactly 1, so truncation
/// to the grid interval does not bias the distance.
DensityVector target_pdf_on_grid(const TargetDensity& target, const QuadratureGrid& grid,
                                 bool renormalize = true);

}  // namespace densmatch
