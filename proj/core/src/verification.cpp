#include "densmatch/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "densmatch/oracle.hpp"
#include "densmatch/optimizer.hpp"
#include "densmatch/quadrature.hpp"

namespace densmatch {

namespace {

double uniform01(std::mt19937_64& rng) {
  return std::ldexp(static_cast<double>(rng() >> 11), -53);
}

// Symmetric relative error; components where both sides are below 1e-12 are
// masked.
double max_rel_err(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const double scale = std::max(std::abs(a[k]), std::abs(b[k]));
    if (scale < 1e-12) continue;
    worst = std::max(worst, std::abs(a[k] - b[k]) / scale);
  }
  return worst;
}

CheckResult make_check(std::string name, double observed, double threshold,
                       std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.observed = observed;
  c.threshold = threshold;
  c.pass = observed <= threshold;
  c.detail = std::move(detail);
  return c;
}

// Line through the two states, built from first principles: slope through the
// points, anchored at the second state. This is the oracle side of the shift
// convention checks.
LinearSurrogate oracle_interpolant(const SurrogateStates& states) {
  LinearSurrogate sur;
  const double du = states.u2 - states.u1;
  sur.a = (states.q2 - states.q1) / du;
  sur.b = states.q2 - sur.a * states.u2;
  sur.da_ds = (states.dq2_ds - states.dq1_ds) / du;
  sur.db_ds = (states.u2 * states.dq1_ds - states.u1 * states.dq2_ds) / du;
  return sur;
}

SurrogateStates states_at(const UncertainModel& model, const Eigen::VectorXd& s) {
  const ModelEvaluation low = model.evaluate(s, model.uncertainty_lower());
  const ModelEvaluation high = model.evaluate(s, model.uncertainty_upper());
  SurrogateStates states;
  states.u1 = model.uncertainty_lower();
  states.u2 = model.uncertainty_upper();
  states.q1 = low.q;
  states.q2 = high.q;
  states.dq1_ds = low.dq_ds;
  states.dq2_ds = high.dq_ds;
  return states;
}

}  // namespace

std::vector<CheckResult> run_verification(const UncertainModel& model, const Eigen::VectorXd& s,
                                          const ScaledBeta& p, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ull);

  // -- input pdf ------------------------------------------------------------
  {
    QuadratureGrid grid(p.lower(), p.upper(), 2000);
    Eigen::VectorXd values(grid.size());
    for (int i = 0; i < grid.size(); ++i) values[i] = p.pdf(grid.node(i));
    out.push_back(make_check("input_pdf_normalization",
                             std::abs(grid.integrate(values) - 1.0), 1e-3));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double u = p.lower() + p.width() * (0.01 + 0.98 * uniform01(rng));
      const double h = 1e-6 * p.width();
      const double fd = (p.pdf(u + h) - p.pdf(u - h)) / (2.0 * h);
      const double an = p.pdf_derivative(u);
      const double scale = std::max({std::abs(an), std::abs(fd), 1e-12});
      worst = std::max(worst, std::abs(an - fd) / scale);
    }
    out.push_back(make_check("input_pdf_derivative_fd", worst, 1e-5));
  }

  const SurrogateStates states = states_at(model, s);
  const LinearSurrogate sur = fit_surrogate(states, opts.shift);
  const LinearSurrogate oracle_sur = oracle_interpolant(states);

  // -- surrogate reproduces both states --------------------------------------
  {
    const double e1 = std::abs(sur.a * states.u1 + sur.b - states.q1) /
                      std::max(1.0, std::abs(states.q1));
    const double e2 = std::abs(sur.a * states.u2 + sur.b - states.q2) /
                      std::max(1.0, std::abs(states.q2));
    std::ostringstream detail;
    detail << "a=" << sur.a << " b=" << sur.b;
    out.push_back(
        make_check("surrogate_state_consistency", std::max(e1, e2), 1e-10, detail.str()));
  }

  // -- model adjoints vs finite differences ----------------------------------
  {
    double worst = 0.0;
    for (const double u : {states.u1, states.u2}) {
      const Eigen::VectorXd fd = finite_diff_gradient(
          [&](const Eigen::VectorXd& sv) { return model.evaluate(sv, u).q; }, s, 1e-6);
      worst = std::max(worst, max_rel_err(model.evaluate(s, u).dq_ds, fd));
    }
    out.push_back(make_check("model_adjoint_fd", worst, 1e-7));
  }

  // Grids: exact image for normalization/moments, padded image for matching.
  const auto [img_lo, img_hi] = surrogate_image(oracle_sur, p);
  const QuadratureGrid image_grid(img_lo, img_hi, opts.grid_points);
  const auto [pad_lo, pad_hi] = padded_union_bounds({img_lo, img_hi}, {img_lo, img_hi});
  const QuadratureGrid padded_grid(pad_lo, pad_hi, opts.grid_points);

  // -- derived pdf normalization and moment identities -----------------------
  const DensityVector r_oracle = derived_pdf(oracle_sur, p, image_grid);
  out.push_back(
      make_check("derived_pdf_normalization", std::abs(r_oracle.integral() - 1.0), 1e-3));
  {
    const double exact_mean = oracle_sur.a * p.mean() + oracle_sur.b;
    const double exact_var = oracle_sur.a * oracle_sur.a * p.variance();
    const double em = std::abs(r_oracle.mean() - exact_mean) / std::max(1e-12, std::abs(exact_mean));
    const double ev = std::abs(r_oracle.variance() - exact_var) / exact_var;
    out.push_back(make_check("derived_moment_identity", std::max(em, ev), 1e-3));
  }

  // -- distance gradient vs end-to-end finite differences --------------------
  const double derived_std = std::sqrt(r_oracle.variance());
  const TargetDensity target_density =
      TargetDensity::gaussian(r_oracle.mean() + 0.5 * derived_std, derived_std);
  const DensityVector target = target_pdf_on_grid(target_density, padded_grid);
  {
    const LinearSurrogate sur_padded = fit_surrogate(states, opts.shift);
    const auto [dist, grad] = distance_and_gradient(sur_padded, p, padded_grid, target);
    (void)dist;
    const Eigen::VectorXd fd = finite_diff_gradient(
        [&](const Eigen::VectorXd& sv) {
          const LinearSurrogate line = oracle_interpolant(states_at(model, sv));
          return distance(target, derived_pdf(line, p, padded_grid));
        },
        s, opts.fd_step);
    out.push_back(make_check("monotonic_gradient_fd", max_rel_err(grad, fd),
                             opts.fd_tolerance));
  }

  // -- sensitivity matrix vs finite differences at interior nodes ------------
  {
    const SensitivityMatrix d_mat = pdf_sensitivity(sur, p, padded_grid);
    const int n = model.design_dimension();
    Eigen::MatrixXd fd(padded_grid.size(), n);
    for (int k = 0; k < n; ++k) {
      const double h = 1e-4 * std::max(1.0, std::abs(s[k]));
      Eigen::VectorXd sp = s, sm = s;
      sp[k] += h;
      sm[k] -= h;
      const Eigen::VectorXd rp =
          derived_pdf(oracle_interpolant(states_at(model, sp)), p, padded_grid).values();
      const Eigen::VectorXd rm =
          derived_pdf(oracle_interpolant(states_at(model, sm)), p, padded_grid).values();
      fd.col(k) = (rp - rm) / (2.0 * h);
    }
    std::vector<int> interior;
    for (int i = 0; i < padded_grid.size(); ++i) {
      const double f = padded_grid.node(i);
      if (f > img_lo && f < img_hi) interior.push_back(i);
    }
    double worst = 0.0;
    if (interior.size() > 4) {
      for (int k = 0; k < n; ++k) {
        double sup = 0.0;
        for (std::size_t j = 2; j + 2 < interior.size(); ++j) {
          sup = std::max(sup, std::abs(fd(interior[j], k)));
        }
        const double floor = 1e-3 * sup;
        for (std::size_t j = 2; j + 2 < interior.size(); ++j) {
          const int i = interior[j];
          const double denom = std::max(std::abs(fd(i, k)), floor);
          if (denom <= 0.0) continue;
          worst = std::max(worst, std::abs(d_mat.entries(i, k) - fd(i, k)) / denom);
        }
      }
    }
    out.push_back(make_check("sensitivity_matrix_fd", worst, opts.fd_tolerance));
  }

  // -- Monte-Carlo moment identities for the interpolant ---------------------
  {
    const Eigen::VectorXd u_draws = sample(p, opts.mc_samples, opts.seed + 1);
    const Eigen::VectorXd q_draws =
        (oracle_sur.a * u_draws.array() + oracle_sur.b).matrix();
    const auto m = static_cast<double>(q_draws.size());
    const double mean = q_draws.mean();
    const Eigen::ArrayXd centered = q_draws.array() - mean;
    const double m2 = centered.square().sum() / m;
    const double m4 = centered.square().square().sum() / m;
    const double var = m2 * m / (m - 1.0);
    const double se_mean = std::sqrt(var / m);
    const double se_var = std::sqrt(std::max(0.0, m4 - m2 * m2) / m);

    const double exact_mean = oracle_sur.a * p.mean() + oracle_sur.b;
    const double exact_var = oracle_sur.a * oracle_sur.a * p.variance();
    out.push_back(make_check("mc_mean_identity", std::abs(mean - exact_mean) / se_mean, 3.0));
    out.push_back(make_check("mc_variance_identity", std::abs(var - exact_var) / se_var, 3.0));
  }

  // -- histogram vs derived pdf, against seed-split self-noise ---------------
  {
    const int n_draws = std::max(opts.mc_samples / 2, 1000);
    const Eigen::VectorXd ua = sample(p, n_draws, opts.seed + 2);
    const Eigen::VectorXd ub = sample(p, n_draws, opts.seed + 3);
    const Eigen::VectorXd qa = (oracle_sur.a * ua.array() + oracle_sur.b).matrix();
    const Eigen::VectorXd qb = (oracle_sur.a * ub.array() + oracle_sur.b).matrix();
    const int n_bins = 200;
    Eigen::VectorXd edges(n_bins + 1);
    for (int i = 0; i <= n_bins; ++i) {
      edges[i] = img_lo + (img_hi - img_lo) * static_cast<double>(i) / n_bins;
    }
    const Histogram ha = histogram_density(qa, edges);
    const Histogram hb = histogram_density(qb, edges);
    const double width = ha.bin_width();
    double self_noise = 0.0, vs_derived = 0.0;
    for (int i = 0; i < n_bins; ++i) {
      const double exact = p.pdf((ha.bin_center(i) - oracle_sur.b) / oracle_sur.a) /
                           std::abs(oracle_sur.a);
      self_noise += (ha.densities[i] - hb.densities[i]) * (ha.densities[i] - hb.densities[i]) * width;
      vs_derived += (ha.densities[i] - exact) * (ha.densities[i] - exact) * width;
    }
    self_noise = std::sqrt(self_noise);
    vs_derived = std::sqrt(vs_derived);
    out.push_back(make_check("histogram_vs_derived", vs_derived, 3.0 * self_noise));
  }

  return out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

}  // namespace densmatch
