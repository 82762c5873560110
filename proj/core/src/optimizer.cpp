#include "densmatch/optimizer.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <utility>

namespace densmatch {

namespace {

// Zero gradient components that push into an active bound; the projected
// direction could not move there anyway.
Eigen::VectorXd masked_gradient(const Eigen::VectorXd& g, const Eigen::VectorXd& s,
                                const std::optional<DesignBox>& bounds) {
  if (!bounds) return g;
  Eigen::VectorXd out = g;
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    if ((s[k] <= bounds->lower[k] && g[k] > 0.0) || (s[k] >= bounds->upper[k] && g[k] < 0.0)) {
      out[k] = 0.0;
    }
  }
  return out;
}

}  // namespace

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::step_tolerance:
      return "step_tolerance";
    case Termination::gradient_tolerance:
      return "gradient_tolerance";
    case Termination::call_budget:
      return "call_budget";
    case Termination::objective_error:
      return "objective_error";
  }
  return "unknown";
}

EvaluationRecord objective_eval(const UncertainModel& model, const Eigen::VectorXd& s,
                                const ScaledBeta& p, const DensityVector& target,
                                const QuadratureGrid& grid) {
  // The two bounding-state evaluations are independent; order does not matter.
  const ModelEvaluation low = model.evaluate(s, model.uncertainty_lower());
  const ModelEvaluation high = model.evaluate(s, model.uncertainty_upper());

  SurrogateStates states;
  states.u1 = model.uncertainty_lower();
  states.u2 = model.uncertainty_upper();
  states.q1 = low.q;
  states.q2 = high.q;
  states.dq1_ds = low.dq_ds;
  states.dq2_ds = high.dq_ds;

  const LinearSurrogate surrogate = fit_surrogate(states);
  auto [dist, grad] = distance_and_gradient(surrogate, p, grid, target);

  EvaluationRecord rec;
  rec.u1 = states.u1;
  rec.u2 = states.u2;
  rec.q1 = states.q1;
  rec.q2 = states.q2;
  rec.dq1_ds = std::move(states.dq1_ds);
  rec.dq2_ds = std::move(states.dq2_ds);
  rec.a = surrogate.a;
  rec.b = surrogate.b;
  rec.distance = dist;
  rec.gradient = std::move(grad);
  return rec;
}

RunTrace minimize_objective(const ObjectiveFn& objective, const Eigen::VectorXd& s0,
                            const std::optional<DesignBox>& bounds,
                            const OptimizerConfig& cfg) {
  if (cfg.max_function_calls < 1) {
    throw std::invalid_argument("OptimizerConfig: max_function_calls must be >= 1");
  }
  if (!(cfg.design_tolerance > 0.0)) {
    throw std::invalid_argument("OptimizerConfig: design_tolerance must be positive");
  }

  RunTrace trace;
  const auto n = s0.size();
  int calls = 0;
  double first_distance = std::numeric_limits<double>::quiet_NaN();

  const auto project = [&](const Eigen::VectorXd& s) {
    return bounds ? bounds->project(s) : s;
  };
  const auto record = [&](const Eigen::VectorXd& s, const EvaluationRecord& rec,
                          bool accepted) {
    CallRecord cr;
    cr.call = ++calls;
    cr.s = s;
    cr.distance = rec.distance;
    cr.normalized_distance = first_distance > 0.0 ? rec.distance / first_distance : 1.0;
    cr.gradient_norm = masked_gradient(rec.gradient, s, bounds).norm();
    cr.a = rec.a;
    cr.b = rec.b;
    cr.accepted = accepted;
    trace.calls.push_back(std::move(cr));
  };
  const auto note_best = [&](const Eigen::VectorXd& s, double d) {
    if (!(trace.best_distance <= d)) {
      trace.best_distance = d;
      trace.best_s = s;
    }
  };

  Eigen::VectorXd s = project(s0);
  EvaluationRecord cur;
  try {
    cur = objective(s);
  } catch (const std::exception& e) {
    trace.termination = Termination::objective_error;
    trace.message = e.what();
    return trace;
  }
  first_distance = cur.distance;
  record(s, cur, true);
  note_best(s, cur.distance);
  if (trace.calls.back().gradient_norm < cfg.gradient_tolerance) {
    trace.termination = Termination::gradient_tolerance;
    return trace;
  }

  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(n, n);
  bool scale_pending = true;

  while (true) {
    const Eigen::VectorXd g = masked_gradient(cur.gradient, s, bounds);
    Eigen::VectorXd dir = cfg.method == OptimMethod::bfgs
                              ? Eigen::VectorXd(-(inv_hessian * g))
                              : Eigen::VectorXd(-g);
    if (dir.dot(g) >= 0.0) {
      inv_hessian.setIdentity();
      scale_pending = true;
      dir = -g;
    }

    double alpha = 1.0;
    while (true) {
      const Eigen::VectorXd s_trial = project(s + alpha * dir);
      const Eigen::VectorXd step = s_trial - s;
      if (step.norm() < cfg.design_tolerance) {
        trace.termination = Termination::step_tolerance;
        return trace;
      }
      if (calls >= cfg.max_function_calls) {
        trace.termination = Termination::call_budget;
        return trace;
      }
      EvaluationRecord trial;
      try {
        trial = objective(s_trial);
      } catch (const std::exception& e) {
        trace.termination = Termination::objective_error;
        trace.message = e.what();
        return trace;
      }
      const bool accepted =
          trial.distance <= cur.distance + cfg.ls_sufficient_decrease * g.dot(step);
      record(s_trial, trial, accepted);
      if (!accepted) {
        alpha *= cfg.ls_shrink;
        continue;
      }

      if (cfg.method == OptimMethod::bfgs) {
        const Eigen::VectorXd y = trial.gradient - cur.gradient;
        const double sy = y.dot(step);
        if (sy > 1e-12 * y.norm() * step.norm()) {
          if (scale_pending) {
            inv_hessian *= sy / y.squaredNorm();
            scale_pending = false;
          }
          const double rho = 1.0 / sy;
          const Eigen::MatrixXd outer =
              Eigen::MatrixXd::Identity(n, n) - rho * step * y.transpose();
          inv_hessian = outer * inv_hessian * outer.transpose() +
                        rho * step * step.transpose();
        }
      }

      s = s_trial;
      cur = std::move(trial);
      note_best(s, cur.distance);
      if (trace.calls.back().gradient_norm < cfg.gradient_tolerance) {
        trace.termination = Termination::gradient_tolerance;
        return trace;
      }
      break;
    }
  }
}

RunTrace minimize(const UncertainModel& model, const Eigen::VectorXd& s0, const ScaledBeta& p,
                  const DensityVector& target, const QuadratureGrid& grid,
                  const OptimizerConfig& cfg) {
  const auto objective = [&](const Eigen::VectorXd& s) {
    return objective_eval(model, s, p, target, grid);
  };
  return minimize_objective(objective, s0, model.design_bounds(), cfg);
}

}  // namespace densmatch
