#include "densmatch/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace densmatch {

Eigen::VectorXd mc_propagate(const UncertainModel& model, const Eigen::VectorXd& s,
                             const ScaledBeta& p, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("mc_propagate: n_samples must be >= 1");
  BetaSampler sampler(p, seed);
  Eigen::VectorXd out(n_samples);
  for (int j = 0; j < n_samples; ++j) {
    out[j] = model.evaluate(s, sampler()).q;
  }
  return out;
}

Histogram histogram_density(const Eigen::VectorXd& samples, int n_bins) {
  if (n_bins < 1) throw std::invalid_argument("histogram_density: n_bins must be >= 1");
  if (samples.size() < 2) throw std::invalid_argument("histogram_density: need >= 2 samples");
  const double lo = samples.minCoeff();
  const double hi = samples.maxCoeff();
  if (!(hi > lo)) throw std::invalid_argument("histogram_density: degenerate sample range");
  Eigen::VectorXd edges(n_bins + 1);
  const double width = (hi - lo) / n_bins;
  for (int i = 0; i <= n_bins; ++i) edges[i] = lo + width * i;
  edges[n_bins] = hi;
  return histogram_density(samples, edges);
}

Histogram histogram_density(const Eigen::VectorXd& samples, const Eigen::VectorXd& edges) {
  const int n_bins = static_cast<int>(edges.size()) - 1;
  if (n_bins < 1) throw std::invalid_argument("histogram_density: need >= 2 edges");
  if (samples.size() < 2) throw std::invalid_argument("histogram_density: need >= 2 samples");
  const double lo = edges[0];
  const double hi = edges[n_bins];
  const double width = (hi - lo) / n_bins;
  if (!(width > 0.0)) throw std::invalid_argument("histogram_density: bad edges");

  Eigen::VectorXd counts = Eigen::VectorXd::Zero(n_bins);
  for (Eigen::Index j = 0; j < samples.size(); ++j) {
    const double x = samples[j];
    if (x < lo || x > hi) continue;
    int bin = static_cast<int>((x - lo) / width);
    if (bin >= n_bins) bin = n_bins - 1;  // right edge closes the last bin
    counts[bin] += 1.0;
  }
  Histogram h;
  h.edges = edges;
  h.densities = counts / (static_cast<double>(samples.size()) * width);
  return h;
}

Eigen::VectorXd finite_diff_gradient(const std::function<double(const Eigen::VectorXd&)>& objective,
                                     const Eigen::VectorXd& s, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite_diff_gradient: step must be positive");
  Eigen::VectorXd grad(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const double h = step * std::max(1.0, std::abs(s[k]));
    Eigen::VectorXd sp = s, sm = s;
    sp[k] += h;
    sm[k] -= h;
    grad[k] = (objective(sp) - objective(sm)) / (2.0 * h);
  }
  return grad;
}

}  // namespace densmatch
