#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "densmatch/monotonic.hpp"
#include "densmatch/optimizer.hpp"
#include "densmatch/oracle.hpp"
#include "densmatch/quadrature.hpp"
#include "densmatch/verification.hpp"

namespace densmatch {

/// Shortest-width formatting with 17 significant digits; round-trips exactly.
std::string format_double(double x);

/// Two columns: node, value.
void write_density_csv(std::ostream& os, const DensityVector& density);

/// node, then one sensitivity column per design variable.
void write_sensitivity_csv(std::ostream& os, const SensitivityMatrix& matrix);

/// edge_lo, edge_hi, density.
void write_histogram_csv(std::ostream& os, const Histogram& histogram);

/// call, normalized_distance, gradient_norm.
void write_convergence_csv(std::ostream& os, const RunTrace& trace);

/// Full per-call trace as JSON.
void write_trace_json(std::ostream& os, const RunTrace& trace);

/// Pass/fail report per verification check as JSON.
void write_verify_json(std::ostream& os, const std::vector<CheckResult>& checks);

}  // namespace densmatch
