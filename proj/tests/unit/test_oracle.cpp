#include <doctest.h>

#include <cmath>

#include "densmatch/models.hpp"
#include "densmatch/monotonic.hpp"
#include "densmatch/oracle.hpp"
#include "test_support.hpp"

using namespace densmatch;

TEST_SUITE("oracle") {

TEST_CASE("finite differences on analytic objectives") {
  Eigen::VectorXd s(2);
  s << 1.0, 2.0;
  const Eigen::VectorXd quad = finite_diff_gradient(
      [](const Eigen::VectorXd& x) { return x.squaredNorm(); }, s, 1e-5);
  CHECK(std::abs(quad[0] - 2.0) <= 1e-8);
  CHECK(std::abs(quad[1] - 4.0) <= 1e-8);

  const Eigen::VectorXd lin = finite_diff_gradient(
      [](const Eigen::VectorXd& x) { return 3.0 * x[0]; }, Eigen::VectorXd::Zero(1), 1e-5);
  CHECK(lin[0] == doctest::Approx(3.0).epsilon(1e-10));

  CHECK_THROWS_AS(finite_diff_gradient([](const Eigen::VectorXd&) { return 0.0; },
                                       Eigen::VectorXd::Zero(1), 0.0),
                  std::invalid_argument);
}

TEST_CASE("mc propagation of the linear example model") {
  const auto model = example_model();
  const ScaledBeta p(1.7, 3.2, 0.1, 0.2);
  const Eigen::VectorXd s0 = Eigen::VectorXd::Zero(1);

  const Eigen::VectorXd one = mc_propagate(*model, s0, p, 1, 3);
  CHECK(one[0] >= 30.0);
  CHECK(one[0] <= 50.0);

  const int n = 1000000;
  const Eigen::VectorXd q = mc_propagate(*model, s0, p, n, 3);
  const double exact_mean = 200.0 * p.mean() + 10.0;
  const double exact_var = 200.0 * 200.0 * p.variance();

  const double mean = q.mean();
  const Eigen::ArrayXd centered = q.array() - mean;
  const double m2 = centered.square().sum() / n;
  const double m4 = centered.square().square().sum() / n;
  const double var = m2 * n / (n - 1.0);

  CHECK(std::abs(mean - exact_mean) <= 3.0 * std::sqrt(exact_var / n));
  CHECK(std::abs(var - exact_var) <= 3.0 * std::sqrt((m4 - m2 * m2) / n));

  const Eigen::VectorXd q2 = mc_propagate(*model, s0, p, 100, 3);
  CHECK(q2 == q.head(100));  // seed determinism
}

TEST_CASE("histogram of uniform draws is flat") {
  const ScaledBeta uniform(1.0, 1.0, 0.0, 1.0);
  const Eigen::VectorXd draws = sample(uniform, 1000000, 7);
  const Histogram h = histogram_density(draws, 10);
  CHECK(h.n_bins() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(std::abs(h.densities[i] - 1.0) <= 0.02);
  }
  // integral is exact by construction
  CHECK(h.densities.sum() * h.bin_width() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("all mass inside a single bin") {
  Eigen::VectorXd samples(5);
  samples << 0.31, 0.33, 0.35, 0.37, 0.39;
  Eigen::VectorXd edges(11);
  for (int i = 0; i <= 10; ++i) edges[i] = 0.1 * i;
  const Histogram h = histogram_density(samples, edges);
  for (int i = 0; i < 10; ++i) {
    if (i == 3) {
      CHECK(h.densities[i] == doctest::Approx(10.0).epsilon(1e-14));
    } else {
      CHECK(h.densities[i] == 0.0);
    }
  }
}

TEST_CASE("histogram input validation") {
  Eigen::VectorXd flat = Eigen::VectorXd::Constant(10, 2.5);
  CHECK_THROWS_AS(histogram_density(flat, 5), std::invalid_argument);
  CHECK_THROWS_AS(histogram_density(Eigen::VectorXd::Ones(1), 5), std::invalid_argument);
  Eigen::VectorXd ok(3);
  ok << 0.0, 0.5, 1.0;
  CHECK_THROWS_AS(histogram_density(ok, 0), std::invalid_argument);
}

TEST_CASE("fd oracle confirms the monotonic gradient at the paper design") {
  // duplicated on purpose from the matching tests: this is the oracle run
  const auto model = example_model();
  const ScaledBeta p(1.7, 3.2, 0.1, 0.2);
  const QuadratureGrid grid(28.0, 52.0, 1500);
  const DensityVector target = target_pdf_on_grid(TargetDensity::gaussian(37.0, 1.0), grid);

  const auto objective = [&](const Eigen::VectorXd& s) {
    const ModelEvaluation lo = model->evaluate(s, 0.1);
    const ModelEvaluation hi = model->evaluate(s, 0.2);
    SurrogateStates states{0.1, 0.2, lo.q, hi.q, lo.dq_ds, hi.dq_ds};
    return distance(target, derived_pdf(fit_surrogate(states), p, grid));
  };
  const Eigen::VectorXd fd = finite_diff_gradient(objective, Eigen::VectorXd::Zero(1), 1e-5);

  const ModelEvaluation lo = model->evaluate(Eigen::VectorXd::Zero(1), 0.1);
  const ModelEvaluation hi = model->evaluate(Eigen::VectorXd::Zero(1), 0.2);
  SurrogateStates states{0.1, 0.2, lo.q, hi.q, lo.dq_ds, hi.dq_ds};
  const auto [dist, grad] = distance_and_gradient(fit_surrogate(states), p, grid, target);
  (void)dist;
  CHECK(densmatch::testing::rel_err(grad[0], fd[0]) <= 1e-5);
}

}  // TEST_SUITE
