#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <optional>

namespace densmatch {

/// Per-variable design box.
struct DesignBox {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  bool contains(const Eigen::VectorXd& s) const;
  Eigen::VectorXd project(const Eigen::VectorXd& s) const;
};

/// A design vector, optionally carrying the box it must stay inside.
struct DesignPoint {
  Eigen::VectorXd s;
  std::optional<DesignBox> bounds;

  void validate() const;
};

/// One model response: the qoi and its adjoint-style design sensitivities.
struct ModelEvaluation {
  double q = 0.0;
  Eigen::VectorXd dq_ds;
};

/// Deterministic response surface standing in for a CFD solve: given a design
/// and an uncertainty value, produce the qoi and d qoi / d s. Shipped models
/// are monotonic in the uncertainty over [uncertainty_lower, uncertainty_upper].
class UncertainModel {
 public:
  virtual ~UncertainModel() = default;

  virtual int design_dimension() const = 0;
  virtual double uncertainty_lower() const = 0;
  virtual double uncertainty_upper() const = 0;
  virtual std::optional<DesignBox> design_bounds() const { return std::nullopt; }

  /// Validates s and u, then evaluates. Identical inputs give bit-identical
  /// results.
  ModelEvaluation evaluate(const Eigen::VectorXd& s, double u) const;

 protected:
  virtual ModelEvaluation do_evaluate(const Eigen::VectorXd& s, double u) const = 0;
};

/// Single-variable analytic model, linear in the uncertainty:
/// q(s, u) interpolates the states q1(s) = 30 + 0.1 s at u = 0.1 and
/// q2(s) = 50 - 0.2 s at u = 0.2; at s = 0 this is exactly q = 200 u + 10.
std::unique_ptr<UncertainModel> example_model();

/// Fan root efficiency (pr^((gamma-1)/gamma) - 1) / (tr - 1) for pressure and
/// temperature ratios; gamma is the heat-capacity ratio.
double fan_root_efficiency(double pr, double tr, double gamma = 1.4);

/// Synthetic fan-stage surrogate: uncertainty is the rear-seal leakage
/// fraction in [0.0013, 0.0030]; the qoi is fan root efficiency computed from
/// smooth PR(s, u) and TR(s) maps. Efficiency decreases strictly in the
/// leakage at every design; the design variables (box [-1, 1]^n) move both
/// the efficiency level and the leakage slope, so the slope magnitude can be
/// reduced by more than half across the box. Coefficients are drawn
/// deterministically from the seed; sensitivities are analytic.
std::unique_ptr<UncertainModel> synthetic_fan_model(int n_design, std::uint64_t seed);

}  // namespace densmatch
