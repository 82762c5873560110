#include "densmatch/densities.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <stdexcept>

namespace densmatch {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143268;

// Uniform in [0, 1) from the top 53 bits of the engine output; avoids the
// implementation-defined std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
  return std::ldexp(static_cast<double>(rng() >> 11), -53);
}

}  // namespace

ScaledBeta::ScaledBeta(double alpha, double beta_shape, double lower, double upper)
    : alpha_(alpha), beta_shape_(beta_shape), lower_(lower), upper_(upper) {
  if (!(alpha >= 1.0) || !(beta_shape >= 1.0)) {
    throw std::invalid_argument("ScaledBeta: shapes must be >= 1");
  }
  if (!(upper > lower) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw std::invalid_argument("ScaledBeta: requires finite upper > lower");
  }
  log_beta_ = std::lgamma(alpha) + std::lgamma(beta_shape) - std::lgamma(alpha + beta_shape);
}

double ScaledBeta::pdf(double u) const {
  if (u < lower_ || u > upper_) return 0.0;
  const double z = (u - lower_) / width();
  // pow(0, 0) == 1 covers the alpha == 1 / beta_shape == 1 endpoint values.
  return std::exp(-log_beta_) * std::pow(z, alpha_ - 1.0) *
         std::pow(1.0 - z, beta_shape_ - 1.0) / width();
}

double ScaledBeta::pdf_derivative(double u) const {
  const double z = (u - lower_) / width();
  if (!(z > 0.0) || !(z < 1.0)) {
    throw std::domain_error("ScaledBeta::pdf_derivative: u must be strictly interior");
  }
  const double logarithmic = (alpha_ - 1.0) / z - (beta_shape_ - 1.0) / (1.0 - z);
  return pdf(u) * logarithmic / width();
}

double ScaledBeta::cdf(double u) const {
  if (u <= lower_) return 0.0;
  if (u >= upper_) return 1.0;
  const double z = (u - lower_) / width();
  return boost::math::ibeta(alpha_, beta_shape_, z);
}

double ScaledBeta::inverse_cdf(double prob) const {
  if (!(prob >= 0.0) || !(prob <= 1.0)) {
    throw std::invalid_argument("ScaledBeta::inverse_cdf: prob must lie in [0, 1]");
  }
  if (prob == 0.0) return lower_;
  if (prob == 1.0) return upper_;

  // Safeguarded Newton on z in (0, 1); bisection step whenever Newton leaves
  // the bracket or stalls.
  double lo = 0.0, hi = 1.0;
  double z = alpha_ / (alpha_ + beta_shape_);
  for (int it = 0; it < 200; ++it) {
    const double resid = boost::math::ibeta(alpha_, beta_shape_, z) - prob;
    if (resid > 0.0) {
      hi = z;
    } else {
      lo = z;
    }
    const double dens = std::exp(-log_beta_) * std::pow(z, alpha_ - 1.0) *
                        std::pow(1.0 - z, beta_shape_ - 1.0);
    double z_next;
    if (dens > 0.0) {
      z_next = z - resid / dens;
      if (!(z_next > lo) || !(z_next < hi)) z_next = 0.5 * (lo + hi);
    } else {
      z_next = 0.5 * (lo + hi);
    }
    const double delta = std::abs(z_next - z);
    z = z_next;
    if (delta <= 1e-12) break;
  }
  return lower_ + width() * z;
}

double ScaledBeta::mean() const noexcept {
  return lower_ + width() * alpha_ / (alpha_ + beta_shape_);
}

double ScaledBeta::variance() const noexcept {
  const double ab = alpha_ + beta_shape_;
  return width() * width() * alpha_ * beta_shape_ / (ab * ab * (ab + 1.0));
}

double ScaledBeta::mode() const {
  if (!(alpha_ + beta_shape_ > 2.0)) {
    throw std::domain_error("ScaledBeta::mode: undefined for alpha + beta_shape <= 2");
  }
  return lower_ + width() * (alpha_ - 1.0) / (alpha_ + beta_shape_ - 2.0);
}

BetaSampler::BetaSampler(ScaledBeta dist, std::uint64_t seed)
    : dist_(std::move(dist)), rng_(seed) {}

double BetaSampler::operator()() { return dist_.inverse_cdf(uniform01(rng_)); }

Eigen::VectorXd BetaSampler::draw(int n) {
  if (n < 1) throw std::invalid_argument("BetaSampler::draw: n must be >= 1");
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out[i] = (*this)();
  return out;
}

Eigen::VectorXd sample(const ScaledBeta& dist, int n, std::uint64_t seed) {
  BetaSampler sampler(dist, seed);
  return sampler.draw(n);
}

TargetDensity TargetDensity::gaussian(double mean, double stddev) {
  if (!(stddev > 0.0)) {
    throw std::invalid_argument("TargetDensity::gaussian: stddev must be positive");
  }
  return TargetDensity(Gaussian{mean, stddev});
}

TargetDensity TargetDensity::scaled_beta(const ScaledBeta& dist) {
  return TargetDensity(dist);
}

double TargetDensity::operator()(double f) const {
  if (const auto* g = std::get_if<Gaussian>(&impl_)) {
    const double zed = (f - g->mean) / g->stddev;
    return kInvSqrt2Pi / g->stddev * std::exp(-0.5 * zed * zed);
  }
  return std::get<ScaledBeta>(impl_).pdf(f);
}

std::pair<double, double> TargetDensity::effective_support() const {
  if (const auto* g = std::get_if<Gaussian>(&impl_)) {
    return {g->mean - 6.0 * g->stddev, g->mean + 6.0 * g->stddev};
  }
  const auto& beta = std::get<ScaledBeta>(impl_);
  return {beta.lower(), beta.upper()};
}

bool TargetDensity::is_gaussian() const noexcept {
  return std::holds_alternative<Gaussian>(impl_);
}

DensityVector target_pdf_on_grid(const TargetDensity& target, const QuadratureGrid& grid,
                                 bool renormalize) {
  Eigen::VectorXd values(grid.size());
  for (int i = 0; i < grid.size(); ++i) values[i] = target(grid.node(i));
  if (renormalize) {
    const double mass = grid.integrate(values);
    if (!(mass > 0.0) || !std::isfinite(mass)) {
      throw std::invalid_argument("target_pdf_on_grid: target has no mass on the grid");
    }
    values /= mass;
  }
  return DensityVector(grid, std::move(values));
}

}  // namespace densmatch
