#pragma once

#include <Eigen/Core>

#include <cmath>
#include <random>

namespace densmatch::testing {

inline double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < 1e-12) return 0.0;
  return std::abs(a - b) / scale;
}

inline double max_rel_err(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    worst = std::max(worst, rel_err(a[k], b[k]));
  }
  return worst;
}

inline double uniform01(std::mt19937_64& rng) {
  return std::ldexp(static_cast<double>(rng() >> 11), -53);
}

inline double gauss_draw(std::mt19937_64& rng) {
  // Box-Muller; deterministic across platforms.
  const double u1 = std::max(uniform01(rng), 1e-300);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace densmatch::testing
