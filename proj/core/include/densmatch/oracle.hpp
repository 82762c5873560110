#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>

#include "densmatch/densities.hpp"
#include "densmatch/models.hpp"

namespace densmatch {

/// Equal-width histogram normalized to unit mass.
struct Histogram {
  Eigen::VectorXd edges;      // n_bins + 1, ascending
  Eigen::VectorXd densities;  // n_bins

  int n_bins() const { return static_cast<int>(densities.size()); }
  double bin_width() const { return edges[1] - edges[0]; }
  double bin_center(int i) const { return 0.5 * (edges[i] + edges[i + 1]); }
};

/// Propagate n_samples draws of p through the model at design s.
Eigen::VectorXd mc_propagate(const UncertainModel& model, const Eigen::VectorXd& s,
                             const ScaledBeta& p, int n_samples, std::uint64_t seed);

/// Histogram over equal-width bins spanning the sample range.
Histogram histogram_density(const Eigen::VectorXd& samples, int n_bins);

/// Histogram over the given explicit bin edges (equispaced, ascending).
/// Samples outside the edges are dropped; density normalizes by the total
/// sample count.
Histogram histogram_density(const Eigen::VectorXd& samples, const Eigen::VectorXd& edges);

/// Central finite differences, per-coordinate step = step * max(1, |s_k|).
Eigen::VectorXd finite_diff_gradient(const std::function<double(const Eigen::VectorXd&)>& objective,
                                     const Eigen::VectorXd& s, double step);

}  // namespace densmatch
