#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "densmatch/densities.hpp"
#include "densmatch/models.hpp"
#include "densmatch/monotonic.hpp"

namespace densmatch {

struct CheckResult {
  std::string name;
  bool pass = false;
  double observed = 0.0;   // measured statistic
  double threshold = 0.0;  // bound it was held to
  std::string detail;
};

struct VerifyOptions {
  int grid_points = 2000;
  double fd_step = 1e-5;
  double fd_tolerance = 1e-5;
  int mc_samples = 1000000;
  std::uint64_t seed = 0;
  ShiftFormula shift = ShiftFormula::consistent;
};

/// Independent-oracle verification of the matching pipeline at design s:
/// pdf normalization and derivative checks, surrogate/state consistency,
/// derived-pdf normalization and moment identities, finite-difference checks
/// of the distance gradient and the sensitivity matrix, and Monte-Carlo
/// agreement. The oracle side always builds the interpolant through the two
/// states geometrically, so a wrong shift convention in `shift` shows up as
/// failed checks rather than silent self-agreement.
std::vector<CheckResult> run_verification(const UncertainModel& model, const Eigen::VectorXd& s,
                                          const ScaledBeta& p, const VerifyOptions& opts = {});

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace densmatch
