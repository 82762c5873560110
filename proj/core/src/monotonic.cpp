#include "densmatch/monotonic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace densmatch {

namespace {

void validate_states(const SurrogateStates& states) {
  if (!(states.u1 < states.u2)) {
    throw std::invalid_argument("fit_surrogate: requires u1 < u2");
  }
  if (states.dq1_ds.size() != states.dq2_ds.size()) {
    throw std::invalid_argument("fit_surrogate: sensitivity vectors must share length");
  }
}

// Exact rows of D; nodes mapping outside the open support give zero rows.
Eigen::MatrixXd sensitivity_rows(const LinearSurrogate& sur, const ScaledBeta& p,
                                 const QuadratureGrid& grid) {
  const auto n = static_cast<int>(sur.da_ds.size());
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(grid.size(), n);
  const double sign_a = sur.a > 0.0 ? 1.0 : -1.0;
  const double inv_abs_a = 1.0 / std::abs(sur.a);
  const double inv_a2 = 1.0 / (sur.a * sur.a);
  for (int i = 0; i < grid.size(); ++i) {
    const double shifted = grid.node(i) - sur.b;
    const double v = shifted / sur.a;
    if (!(v > p.lower()) || !(v < p.upper())) continue;
    const double pv = p.pdf(v);
    const double dpv = p.pdf_derivative(v);
    // dv/ds_k = (-db/ds_k * a - (f_i - b) * da/ds_k) / a^2
    const Eigen::VectorXd dv = (-sur.db_ds * sur.a - shifted * sur.da_ds) * inv_a2;
    rows.row(i) = (-sign_a * inv_a2 * pv) * sur.da_ds.transpose() +
                  (inv_abs_a * dpv) * dv.transpose();
  }
  return rows;
}

}  // namespace

LinearSurrogate fit_surrogate(const SurrogateStates& states, ShiftFormula shift) {
  validate_states(states);
  const double du = states.u2 - states.u1;
  const double a = (states.q2 - states.q1) / du;
  const double eps_a =
      1e-12 * std::max({std::abs(states.q1), std::abs(states.q2), 1.0}) / du;
  if (std::abs(a) <= eps_a) {
    throw DegenerateSurrogateError(
        "fit_surrogate: flat response, derived pdf would be a point mass");
  }
  LinearSurrogate sur;
  sur.a = a;
  sur.da_ds = (states.dq2_ds - states.dq1_ds) / du;
  if (shift == ShiftFormula::consistent) {
    sur.b = states.q2 - a * states.u2;
    sur.db_ds = (states.u2 * states.dq1_ds - states.u1 * states.dq2_ds) / du;
  } else {
    sur.b = (states.u1 * states.q2 - states.u2 * states.q1) / du;
    sur.db_ds = (states.u1 * states.dq2_ds - states.u2 * states.dq1_ds) / du;
  }
  return sur;
}

std::pair<double, double> surrogate_image(const LinearSurrogate& surrogate,
                                          const ScaledBeta& p) {
  const double q_lo = surrogate.a * p.lower() + surrogate.b;
  const double q_hi = surrogate.a * p.upper() + surrogate.b;
  return {std::min(q_lo, q_hi), std::max(q_lo, q_hi)};
}

DensityVector derived_pdf(const LinearSurrogate& surrogate, const ScaledBeta& p,
                          const QuadratureGrid& grid) {
  const double inv_abs_a = 1.0 / std::abs(surrogate.a);
  Eigen::VectorXd values(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    values[i] = inv_abs_a * p.pdf((grid.node(i) - surrogate.b) / surrogate.a);
  }
  return DensityVector(grid, std::move(values));
}

SensitivityMatrix pdf_sensitivity(const LinearSurrogate& surrogate, const ScaledBeta& p,
                                  const QuadratureGrid& grid) {
  Eigen::MatrixXd rows = sensitivity_rows(surrogate, p, grid);

  std::vector<int> interior;
  interior.reserve(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const double v = (grid.node(i) - surrogate.b) / surrogate.a;
    if (v > p.lower() && v < p.upper()) interior.push_back(i);
  }
  // The z = 0 image end sits at low f for increasing surrogates, high f for
  // decreasing ones.
  const bool alpha_side_low_f = surrogate.a > 0.0;
  const auto zero_rows = [&rows](int i0, int i1) {
    rows.row(i0).setZero();
    rows.row(i1).setZero();
  };
  if (interior.size() >= 4) {
    if (p.alpha() < 2.0) {
      if (alpha_side_low_f) {
        zero_rows(interior[0], interior[1]);
      } else {
        zero_rows(interior[interior.size() - 1], interior[interior.size() - 2]);
      }
    }
    if (p.beta_shape() < 2.0) {
      if (alpha_side_low_f) {
        zero_rows(interior[interior.size() - 1], interior[interior.size() - 2]);
      } else {
        zero_rows(interior[0], interior[1]);
      }
    }
  }
  return SensitivityMatrix{grid, std::move(rows)};
}

std::pair<double, Eigen::VectorXd> distance_and_gradient(const LinearSurrogate& surrogate,
                                                         const ScaledBeta& p,
                                                         const QuadratureGrid& grid,
                                                         const DensityVector& target) {
  if (!(target.grid() == grid)) {
    throw std::invalid_argument("distance_and_gradient: target grid mismatch");
  }
  const DensityVector r = derived_pdf(surrogate, p, grid);
  const double dist = distance(target, r);
  const Eigen::MatrixXd rows = sensitivity_rows(surrogate, p, grid);
  const Eigen::VectorXd weighted_residual =
      (r.values().array() - target.values().array()).matrix().cwiseProduct(grid.weights());
  Eigen::VectorXd gradient = 2.0 * rows.transpose() * weighted_residual;
  return {dist, std::move(gradient)};
}

}  // namespace densmatch
