#pragma once

#include <Eigen/Core>

#include <utility>

namespace densmatch {

/// Equispaced nodes on [f_lower, f_upper] with composite-trapezoid weights.
///
/// Invariants: nodes strictly increasing with spacing (f_upper - f_lower)/(N-1),
/// end weights spacing/2, interior weights spacing, sum of weights equal to the
/// interval width.
class QuadratureGrid {
public:
  QuadratureGrid(double f_lower, double f_upper, int n_points);

  double f_lower() const noexcept { return f_lower_; }
  double f_upper() const noexcept { return f_upper_; }
  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  double spacing() const noexcept { return spacing_; }

  double node(int i) const { return nodes_[i]; }
  double weight(int i) const { return weights_[i]; }
  const Eigen::VectorXd& nodes() const noexcept { return nodes_; }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }

  /// Trapezoid integral of nodal values (values.size() must equal size()).
  double integrate(const Eigen::VectorXd& values) const;

  friend bool operator==(const QuadratureGrid& a, const QuadratureGrid& b) noexcept {
    return a.f_lower_ == b.f_lower_ && a.f_upper_ == b.f_upper_ &&
           a.nodes_.size() == b.nodes_.size();
  }

private:
  double f_lower_;
  double f_upper_;
  double spacing_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
};

/// Nonnegative density values attached to the grid they were evaluated on.
class DensityVector {
public:
  DensityVector(QuadratureGrid grid, Eigen::VectorXd values);

  const QuadratureGrid& grid() const noexcept { return grid_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  double value(int i) const { return values_[i]; }

  /// Quadrature integral of the density.
  double integral() const;
  /// First and second quadrature moments of the density.
  double mean() const;
  double variance() const;
  /// sqrt(v^T W v).
  double l2_norm() const;

private:
  QuadratureGrid grid_;
  Eigen::VectorXd values_;
};

/// Discretized squared-L2 distance (t - r)^T W (t - r). Both vectors must
/// share the same grid.
double distance(const DensityVector& t, const DensityVector& r);

/// Smallest interval covering both inputs, padded by 10% of the union width
/// on each side. Used to pick default grid bounds for matching runs.
std::pair<double, double> padded_union_bounds(std::pair<double, double> a,
                                              std::pair<double, double> b);

}  // namespace densmatch
