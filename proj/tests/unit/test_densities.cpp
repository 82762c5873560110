#include <doctest.h>

#include <cmath>

#include "densmatch/densities.hpp"
#include "densmatch/quadrature.hpp"
#include "test_support.hpp"

using namespace densmatch;
using densmatch::testing::uniform01;

TEST_SUITE("densities") {

TEST_CASE("scaled beta pdf closed-form values") {
  const ScaledBeta symmetric(2.0, 2.0, 0.0, 1.0);
  CHECK(symmetric.pdf(0.5) == doctest::Approx(1.5).epsilon(1e-12));

  const ScaledBeta paper(1.7, 3.2, 0.1, 0.2);
  CHECK(paper.pdf(0.05) == 0.0);
  CHECK(paper.pdf(0.25) == 0.0);
  CHECK(paper.pdf(0.1) == 0.0);  // alpha > 1: vanishes at the endpoint
  CHECK(paper.pdf(0.2) == 0.0);
}

TEST_CASE("pdf maximum sits at the closed-form mode") {
  const ScaledBeta paper(1.7, 3.2, 0.1, 0.2);
  const double mode = 0.1 + 0.1 * (1.7 - 1.0) / (1.7 + 3.2 - 2.0);
  CHECK(paper.mode() == doctest::Approx(mode).epsilon(1e-14));

  // grid search over 1e5 interior points
  double best_u = 0.0, best_pdf = -1.0;
  const int n = 100000;
  for (int i = 1; i < n; ++i) {
    const double u = 0.1 + 0.1 * static_cast<double>(i) / n;
    const double v = paper.pdf(u);
    if (v > best_pdf) {
      best_pdf = v;
      best_u = u;
    }
  }
  CHECK(std::abs(best_u - mode) <= 2.0 * 0.1 / n);
  CHECK(paper.pdf(mode) >= best_pdf);
  CHECK(paper.pdf(mode) == doctest::Approx(18.89349075769024).epsilon(1e-10));
}

TEST_CASE("pdf derivative analytic values") {
  const ScaledBeta symmetric(2.0, 2.0, 0.0, 1.0);
  CHECK(symmetric.pdf_derivative(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(symmetric.pdf_derivative(0.25) == doctest::Approx(3.0).epsilon(1e-12));

  const ScaledBeta paper(1.7, 3.2, 0.1, 0.2);
  CHECK(std::abs(paper.pdf_derivative(paper.mode())) <= 1e-9);
}

TEST_CASE("pdf derivative rejects endpoint evaluation") {
  const ScaledBeta paper(1.7, 3.2, 0.1, 0.2);
  CHECK_THROWS_AS(paper.pdf_derivative(0.1), std::domain_error);
  CHECK_THROWS_AS(paper.pdf_derivative(0.2), std::domain_error);
  CHECK_THROWS_AS(paper.pdf_derivative(0.3), std::domain_error);
}

TEST_CASE("pdf derivative matches central differences at random interior points") {
  for (const ScaledBeta& dist :
       {ScaledBeta(1.7, 3.2, 0.1, 0.2), ScaledBeta(1.7, 2.8, 0.0013, 0.0030)}) {
    std::mt19937_64 rng(91);
    const double h = 1e-6 * dist.width();
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double u = dist.lower() + dist.width() * (0.01 + 0.98 * uniform01(rng));
      const double fd = (dist.pdf(u + h) - dist.pdf(u - h)) / (2.0 * h);
      worst = std::max(worst, densmatch::testing::rel_err(dist.pdf_derivative(u), fd));
    }
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("moments") {
  const ScaledBeta paper(1.7, 3.2, 0.1, 0.2);
  CHECK(paper.mean() == doctest::Approx(0.1 + 0.1 * 1.7 / 4.9).epsilon(1e-14));

  const auto [mean, variance] = ScaledBeta(2.0, 2.0, 0.0, 1.0).moments();
  CHECK(mean == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(variance == doctest::Approx(0.05).epsilon(1e-14));

  const ScaledBeta leakage(1.7, 2.8, 0.0013, 0.0030);
  CHECK(leakage.mean() == doctest::Approx(0.0013 + 0.0017 * (1.7 / 4.5)).epsilon(1e-14));

  // cross-check against a large Monte-Carlo mean
  const Eigen::VectorXd draws = sample(leakage, 1000000, 11);
  const double se = std::sqrt(leakage.variance() / 1e6);
  CHECK(std::abs(draws.mean() - leakage.mean()) <= 3.0 * se);
}

TEST_CASE("constructor rejects invalid parameters") {
  CHECK_THROWS_AS(ScaledBeta(0.9, 3.2, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ScaledBeta(1.7, 0.5, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ScaledBeta(1.7, 3.2, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ScaledBeta(1.7, 3.2, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("normalization on a 2000-point trapezoid grid") {
  for (const ScaledBeta& dist :
       {ScaledBeta(1.7, 3.2, 0.1, 0.2), ScaledBeta(1.7, 2.8, 0.0013, 0.0030),
        ScaledBeta(1.0, 1.0, -2.0, 5.0), ScaledBeta(1.0, 4.0, 0.0, 1.0),
        ScaledBeta(6.5, 2.0, 10.0, 11.0)}) {
    const QuadratureGrid grid(dist.lower(), dist.upper(), 2000);
    Eigen::VectorXd values(grid.size());
    for (int i = 0; i < grid.size(); ++i) values[i] = dist.pdf(grid.node(i));
    CHECK(grid.integrate(values) == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("cdf and inverse cdf agree") {
  const ScaledBeta dist(1.7, 3.2, 0.1, 0.2);
  for (double prob : {0.0, 1e-6, 0.01, 0.3, 0.5, 0.77, 0.999, 1.0}) {
    const double u = dist.inverse_cdf(prob);
    CHECK(u >= dist.lower());
    CHECK(u <= dist.upper());
    CHECK(dist.cdf(u) == doctest::Approx(prob).epsilon(1e-9));
  }
}

TEST_CASE("sampling is deterministic and in-support") {
  const ScaledBeta dist(1.7, 3.2, 0.1, 0.2);
  const Eigen::VectorXd one = sample(dist, 1, 5);
  CHECK(one[0] >= 0.1);
  CHECK(one[0] <= 0.2);

  const Eigen::VectorXd a = sample(dist, 1000, 42);
  const Eigen::VectorXd b = sample(dist, 1000, 42);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXd c = sample(dist, 1000, 43);
  CHECK((a - c).cwiseAbs().maxCoeff() > 0.0);

  CHECK_THROWS_AS(sample(dist, 0, 1), std::invalid_argument);
}

TEST_CASE("sample mean obeys the CLT bound") {
  const ScaledBeta dist(1.7, 3.2, 0.1, 0.2);
  const int n = 100000;
  const Eigen::VectorXd draws = sample(dist, n, 2024);
  CHECK(draws.minCoeff() >= dist.lower());
  CHECK(draws.maxCoeff() <= dist.upper());
  const double se = std::sqrt(dist.variance() / n);
  CHECK(std::abs(draws.mean() - dist.mean()) <= 3.0 * se);
}

TEST_CASE("gaussian target on a wide grid") {
  const TargetDensity target = TargetDensity::gaussian(0.0, 1.0);
  const QuadratureGrid grid(-8.0, 8.0, 2000);

  const DensityVector raw = target_pdf_on_grid(target, grid, /*renormalize=*/false);
  CHECK(std::abs(raw.integral() - 1.0) <= 1e-10);

  const DensityVector renorm = target_pdf_on_grid(target, grid);
  CHECK(renorm.integral() == doctest::Approx(1.0).epsilon(1e-13));

  CHECK(target(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * 3.14159265358979324)).epsilon(1e-14));
  const TargetDensity shifted = TargetDensity::gaussian(3.0, 0.5);
  CHECK(shifted(3.0) == doctest::Approx(2.0 / std::sqrt(2.0 * 3.14159265358979324)).epsilon(1e-14));
}

TEST_CASE("scaled-beta target matches the pdf pointwise") {
  const ScaledBeta dist(1.7, 3.2, 0.1, 0.2);
  const TargetDensity target = TargetDensity::scaled_beta(dist);
  const QuadratureGrid grid(0.1, 0.2, 501);
  const DensityVector raw = target_pdf_on_grid(target, grid, /*renormalize=*/false);
  for (int i = 0; i < grid.size(); i += 50) {
    CHECK(raw.value(i) == dist.pdf(grid.node(i)));
  }
  CHECK(target_pdf_on_grid(target, grid).integral() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("target with no grid mass is rejected") {
  const ScaledBeta dist(1.7, 3.2, 0.1, 0.2);
  const TargetDensity target = TargetDensity::scaled_beta(dist);
  const QuadratureGrid grid(5.0, 6.0, 101);
  CHECK_THROWS_AS(target_pdf_on_grid(target, grid), std::invalid_argument);
}

}  // TEST_SUITE
