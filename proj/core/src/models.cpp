#include "densmatch/models.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace densmatch {

namespace {

double uniform01(std::mt19937_64& rng) {
  return std::ldexp(static_cast<double>(rng() >> 11), -53);
}

double sech2(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

class ExampleModel final : public UncertainModel {
 public:
  int design_dimension() const override { return 1; }
  double uncertainty_lower() const override { return 0.1; }
  double uncertainty_upper() const override { return 0.2; }

 protected:
  ModelEvaluation do_evaluate(const Eigen::VectorXd& s, double u) const override {
    const double lambda = (0.2 - u) / 0.1;
    const double q1 = 30.0 + 0.1 * s[0];
    const double q2 = 50.0 - 0.2 * s[0];
    ModelEvaluation out;
    out.q = q1 * lambda + q2 * (1.0 - lambda);
    out.dq_ds = Eigen::VectorXd::Constant(1, 0.1 * lambda - 0.2 * (1.0 - lambda));
    return out;
  }
};

// PR(s, u) = 1.5 + 0.05 L(s) - A(s) (u - u_lo), TR(s) = 1.14 + 0.012 T(s),
// eta = fan_root_efficiency(PR, TR). A(s) = 12 (0.15 + 0.85 G(s)) stays
// positive, so eta is strictly decreasing in u everywhere; G spans enough of
// (0, 1) across the box corners to cut the slope magnitude by well over half.
class SyntheticFanModel final : public UncertainModel {
 public:
  SyntheticFanModel(int n, std::uint64_t seed) : n_(n) {
    if (n < 1) throw std::invalid_argument("synthetic_fan_model: n_design must be >= 1");
    std::mt19937_64 rng(seed);
    theta_.resize(n);
    mu_.resize(n);
    phi_.resize(n);
    zeta_.resize(n);
    tau_.resize(n);
    for (int i = 0; i < n; ++i) {
      theta_[i] = 0.8 + 0.7 * uniform01(rng);
      mu_[i] = 0.6 + 0.4 * uniform01(rng);
      phi_[i] = 2.0 + uniform01(rng);
      zeta_[i] = uniform01(rng) < 0.5 ? -1.0 : 1.0;
      tau_[i] = 2.0 * uniform01(rng) - 1.0;
    }
  }

  int design_dimension() const override { return n_; }
  double uncertainty_lower() const override { return kLeakLow; }
  double uncertainty_upper() const override { return kLeakHigh; }
  std::optional<DesignBox> design_bounds() const override {
    return DesignBox{Eigen::VectorXd::Constant(n_, -1.0), Eigen::VectorXd::Constant(n_, 1.0)};
  }

 protected:
  ModelEvaluation do_evaluate(const Eigen::VectorXd& s, double u) const override {
    const double inv_n = 1.0 / static_cast<double>(n_);
    double level = 0.0, slope_arg = 0.0, temp = 0.0;
    for (int i = 0; i < n_; ++i) {
      level += mu_[i] * std::tanh(theta_[i] * s[i]);
      slope_arg += phi_[i] * zeta_[i] * s[i];
      temp += tau_[i] * std::tanh(s[i]);
    }
    level *= inv_n;
    slope_arg *= inv_n;
    temp *= inv_n;

    const double g = logistic(slope_arg);
    const double slope = kSlopeMax * (0.15 + 0.85 * g);
    const double pr = 1.5 + 0.05 * level - slope * (u - kLeakLow);
    const double tr = 1.14 + 0.012 * temp;

    const double exponent = (kGamma - 1.0) / kGamma;
    const double pr_pow = std::pow(pr, exponent);
    const double eta = (pr_pow - 1.0) / (tr - 1.0);
    const double deta_dpr = exponent * std::pow(pr, exponent - 1.0) / (tr - 1.0);
    const double deta_dtr = -(pr_pow - 1.0) / ((tr - 1.0) * (tr - 1.0));

    const double dg = g * (1.0 - g);
    ModelEvaluation out;
    out.q = eta;
    out.dq_ds.resize(n_);
    for (int k = 0; k < n_; ++k) {
      const double dpr = 0.05 * mu_[k] * theta_[k] * sech2(theta_[k] * s[k]) * inv_n -
                         (u - kLeakLow) * kSlopeMax * 0.85 * dg * phi_[k] * zeta_[k] * inv_n;
      const double dtr = 0.012 * tau_[k] * sech2(s[k]) * inv_n;
      out.dq_ds[k] = deta_dpr * dpr + deta_dtr * dtr;
    }
    return out;
  }

 private:
  static constexpr double kLeakLow = 0.0013;
  static constexpr double kLeakHigh = 0.0030;
  static constexpr double kSlopeMax = 12.0;
  static constexpr double kGamma = 1.4;

  int n_;
  std::vector<double> theta_, mu_, phi_, zeta_, tau_;
};

}  // namespace

bool DesignBox::contains(const Eigen::VectorXd& s) const {
  if (s.size() != lower.size()) return false;
  return (s.array() >= lower.array()).all() && (s.array() <= upper.array()).all();
}

Eigen::VectorXd DesignBox::project(const Eigen::VectorXd& s) const {
  return s.cwiseMax(lower).cwiseMin(upper);
}

void DesignPoint::validate() const {
  if (bounds && !bounds->contains(s)) {
    throw std::invalid_argument("DesignPoint: design is outside its bounds");
  }
}

ModelEvaluation UncertainModel::evaluate(const Eigen::VectorXd& s, double u) const {
  if (s.size() != design_dimension()) {
    throw std::invalid_argument("UncertainModel::evaluate: design dimension mismatch");
  }
  if (u < uncertainty_lower() || u > uncertainty_upper()) {
    throw std::invalid_argument("UncertainModel::evaluate: u outside uncertainty bounds");
  }
  if (const auto box = design_bounds(); box && !box->contains(s)) {
    throw std::invalid_argument("UncertainModel::evaluate: design outside bounds");
  }
  return do_evaluate(s, u);
}

std::unique_ptr<UncertainModel> example_model() { return std::make_unique<ExampleModel>(); }

double fan_root_efficiency(double pr, double tr, double gamma) {
  if (!(pr > 1.0)) throw std::domain_error("fan_root_efficiency: requires pr > 1");
  if (!(tr > 1.0)) throw std::domain_error("fan_root_efficiency: requires tr > 1");
  return (std::pow(pr, (gamma - 1.0) / gamma) - 1.0) / (tr - 1.0);
}

std::unique_ptr<UncertainModel> synthetic_fan_model(int n_design, std::uint64_t seed) {
  return std::make_unique<SyntheticFanModel>(n_design, seed);
}

}  // namespace densmatch
