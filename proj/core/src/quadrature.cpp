#include "densmatch/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace densmatch {

QuadratureGrid::QuadratureGrid(double f_lower, double f_upper, int n_points)
    : f_lower_(f_lower), f_upper_(f_upper) {
  if (!(f_upper > f_lower)) {
    throw std::invalid_argument("QuadratureGrid: f_upper must exceed f_lower");
  }
  if (n_points < 2) {
    throw std::invalid_argument("QuadratureGrid: need at least 2 points");
  }
  if (!std::isfinite(f_lower) || !std::isfinite(f_upper)) {
    throw std::invalid_argument("QuadratureGrid: bounds must be finite");
  }
  spacing_ = (f_upper - f_lower) / static_cast<double>(n_points - 1);
  nodes_.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    nodes_[i] = f_lower + spacing_ * static_cast<double>(i);
  }
  nodes_[n_points - 1] = f_upper;
  weights_ = Eigen::VectorXd::Constant(n_points, spacing_);
  weights_[0] = weights_[n_points - 1] = 0.5 * spacing_;
}

double QuadratureGrid::integrate(const Eigen::VectorXd& values) const {
  if (values.size() != nodes_.size()) {
    throw std::invalid_argument("QuadratureGrid::integrate: size mismatch");
  }
  return weights_.dot(values);
}

DensityVector::DensityVector(QuadratureGrid grid, Eigen::VectorXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.nodes().size()) {
    throw std::invalid_argument("DensityVector: values length must match grid");
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
      throw std::invalid_argument("DensityVector: values must be finite and nonnegative");
    }
  }
}

double DensityVector::integral() const { return grid_.integrate(values_); }

double DensityVector::mean() const {
  return grid_.weights().dot(grid_.nodes().cwiseProduct(values_).eval());
}

double DensityVector::variance() const {
  const double m = mean();
  const Eigen::ArrayXd centered = grid_.nodes().array() - m;
  return (grid_.weights().array() * centered.square() * values_.array()).sum();
}

double DensityVector::l2_norm() const {
  return std::sqrt((grid_.weights().array() * values_.array().square()).sum());
}

double distance(const DensityVector& t, const DensityVector& r) {
  if (!(t.grid() == r.grid())) {
    throw std::invalid_argument("distance: density vectors must share a grid");
  }
  const Eigen::ArrayXd diff = t.values().array() - r.values().array();
  return (t.grid().weights().array() * diff.square()).sum();
}

std::pair<double, double> padded_union_bounds(std::pair<double, double> a,
                                              std::pair<double, double> b) {
  const double lo = std::min(a.first, b.first);
  const double hi = std::max(a.second, b.second);
  if (!(hi > lo)) {
    throw std::invalid_argument("padded_union_bounds: degenerate interval");
  }
  const double pad = 0.1 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace densmatch
