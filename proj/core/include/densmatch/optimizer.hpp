#pragma once

#include <Eigen/Core>

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "densmatch/densities.hpp"
#include "densmatch/models.hpp"
#include "densmatch/monotonic.hpp"
#include "densmatch/quadrature.hpp"

namespace densmatch {

enum class OptimMethod { bfgs, steepest_descent };

struct OptimizerConfig {
  int max_function_calls = 40;
  double design_tolerance = 1e-5;
  double gradient_tolerance = 1e-10;
  double ls_shrink = 0.5;
  double ls_sufficient_decrease = 1e-4;
  OptimMethod method = OptimMethod::bfgs;
};

/// Everything one function call produces: the two bracketing states with
/// their adjoint sensitivities, the fitted surrogate, and the distance with
/// its design gradient.
struct EvaluationRecord {
  double u1 = 0.0;
  double u2 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  Eigen::VectorXd dq1_ds;
  Eigen::VectorXd dq2_ds;
  double a = std::numeric_limits<double>::quiet_NaN();
  double b = std::numeric_limits<double>::quiet_NaN();
  double distance = 0.0;
  Eigen::VectorXd gradient;
};

/// One function call of the matching workflow: evaluate the model at the two
/// bounding uncertainty states (exactly two model evaluations), fit the
/// surrogate, and return the distance to the target with its gradient.
EvaluationRecord objective_eval(const UncertainModel& model, const Eigen::VectorXd& s,
                                const ScaledBeta& p, const DensityVector& target,
                                const QuadratureGrid& grid);

enum class Termination {
  step_tolerance,
  gradient_tolerance,
  call_budget,
  objective_error,
};

const char* termination_name(Termination t);

struct CallRecord {
  int call = 0;  // 1-based
  Eigen::VectorXd s;
  double distance = 0.0;
  double normalized_distance = 0.0;  // distance / first-call distance
  double gradient_norm = 0.0;
  double a = std::numeric_limits<double>::quiet_NaN();
  double b = std::numeric_limits<double>::quiet_NaN();
  bool accepted = false;
};

struct RunTrace {
  std::vector<CallRecord> calls;
  Termination termination = Termination::call_budget;
  std::string message;
  Eigen::VectorXd best_s;
  double best_distance = std::numeric_limits<double>::quiet_NaN();

  int function_calls() const { return static_cast<int>(calls.size()); }
};

using ObjectiveFn = std::function<EvaluationRecord(const Eigen::VectorXd&)>;

/// Gradient-based minimization of an arbitrary objective with optional box
/// bounds (handled by projection with gradient masking at active bounds).
/// Every objective evaluation, including rejected line-search probes, counts
/// against the function-call budget and is recorded in the trace.
RunTrace minimize_objective(const ObjectiveFn& objective, const Eigen::VectorXd& s0,
                            const std::optional<DesignBox>& bounds,
                            const OptimizerConfig& cfg = {});

/// The density-matching workflow: minimize the monotonic distance over the
/// design variables, two model evaluations per function call.
RunTrace minimize(const UncertainModel& model, const Eigen::VectorXd& s0, const ScaledBeta& p,
                  const DensityVector& target, const QuadratureGrid& grid,
                  const OptimizerConfig& cfg = {});

}  // namespace densmatch
