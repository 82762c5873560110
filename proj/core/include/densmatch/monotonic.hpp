#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <utility>

#include "densmatch/densities.hpp"
#include "densmatch/quadrature.hpp"

namespace densmatch {

/// Thrown when the two-state response is too flat to define a surrogate
/// (the derived pdf would collapse to a point mass).
class DegenerateSurrogateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two model states bracketing the uncertainty range, with their adjoint
/// design sensitivities. Requires u1 < u2; no ordering is imposed on q1, q2.
struct SurrogateStates {
  double u1 = 0.0;
  double u2 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  Eigen::VectorXd dq1_ds;
  Eigen::VectorXd dq2_ds;
};

/// Shift convention for the linear surrogate.
///
/// `consistent` computes b = q2 - a*u2 (and the matching db/ds), which
/// reproduces both states exactly. `swapped_numerator` uses the closed form
/// with the numerator terms transposed, (u1*q2 - u2*q1)/(u2 - u1); it negates
/// the shift and its sensitivity and is retained only to demonstrate how that
/// sign error breaks finite-difference verification.
enum class ShiftFormula { consistent, swapped_numerator };

/// q = a*u + b fitted through two states, with design sensitivities of the
/// slope and shift.
struct LinearSurrogate {
  double a = 0.0;
  double b = 0.0;
  Eigen::VectorXd da_ds;
  Eigen::VectorXd db_ds;
};

LinearSurrogate fit_surrogate(const SurrogateStates& states,
                              ShiftFormula shift = ShiftFormula::consistent);

/// Image [min, max] of the uncertainty support under the surrogate.
std::pair<double, double> surrogate_image(const LinearSurrogate& surrogate,
                                          const ScaledBeta& p);

/// Exact pdf of the qoi through the surrogate: r_i = p((f_i - b)/a) / |a|,
/// zero for nodes mapping outside the uncertainty support.
DensityVector derived_pdf(const LinearSurrogate& surrogate, const ScaledBeta& p,
                          const QuadratureGrid& grid);

/// Design sensitivities d r_i / d s_k of the derived pdf at the grid nodes.
struct SensitivityMatrix {
  QuadratureGrid grid;
  Eigen::MatrixXd entries;  // N x n
};

/// Rows at nodes mapping outside the open image are zero. For the entries
/// produced by `pdf_sensitivity` the two nodes adjacent to an image endpoint
/// where the input pdf derivative is unbounded (shape < 2 on that side) are
/// also zeroed; their trapezoid contribution is O(spacing) and the raw values
/// would dominate any plot or export.
SensitivityMatrix pdf_sensitivity(const LinearSurrogate& surrogate, const ScaledBeta& p,
                                  const QuadratureGrid& grid);

/// Squared-L2 distance to the target and its exact design gradient
/// 2 (r - t)^T W D. The gradient is assembled from the exact per-node
/// sensitivities (no endpoint regularization) so it agrees with finite
/// differences of the full pipeline.
std::pair<double, Eigen::VectorXd> distance_and_gradient(const LinearSurrogate& surrogate,
                                                         const ScaledBeta& p,
                                                         const QuadratureGrid& grid,
                                                         const DensityVector& target);

}  // namespace densmatch
