#include "densmatch/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace densmatch {

namespace {

// JSON value for a double: plain number, or null for non-finite entries
// (e.g. the surrogate fields of a kernel-based run).
std::string json_number(double x) {
  if (!std::isfinite(x)) return "null";
  return format_double(x);
}

std::string json_vector(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += json_number(v[i]);
  }
  out += "]";
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_density_csv(std::ostream& os, const DensityVector& density) {
  os << "node,value\n";
  for (int i = 0; i < density.grid().size(); ++i) {
    os << format_double(density.grid().node(i)) << ',' << format_double(density.value(i))
       << '\n';
  }
}

void write_sensitivity_csv(std::ostream& os, const SensitivityMatrix& matrix) {
  os << "node";
  for (Eigen::Index k = 0; k < matrix.entries.cols(); ++k) os << ",drds" << k;
  os << '\n';
  for (int i = 0; i < matrix.grid.size(); ++i) {
    os << format_double(matrix.grid.node(i));
    for (Eigen::Index k = 0; k < matrix.entries.cols(); ++k) {
      os << ',' << format_double(matrix.entries(i, k));
    }
    os << '\n';
  }
}

void write_histogram_csv(std::ostream& os, const Histogram& histogram) {
  os << "edge_lo,edge_hi,density\n";
  for (int i = 0; i < histogram.n_bins(); ++i) {
    os << format_double(histogram.edges[i]) << ',' << format_double(histogram.edges[i + 1])
       << ',' << format_double(histogram.densities[i]) << '\n';
  }
}

void write_convergence_csv(std::ostream& os, const RunTrace& trace) {
  os << "call,normalized_distance,gradient_norm\n";
  for (const CallRecord& rec : trace.calls) {
    os << rec.call << ',' << format_double(rec.normalized_distance) << ','
       << format_double(rec.gradient_norm) << '\n';
  }
}

void write_trace_json(std::ostream& os, const RunTrace& trace) {
  os << "{\n";
  os << "  \"termination\": \"" << termination_name(trace.termination) << "\",\n";
  os << "  \"message\": \"" << json_escape(trace.message) << "\",\n";
  os << "  \"function_calls\": " << trace.function_calls() << ",\n";
  os << "  \"best_distance\": " << json_number(trace.best_distance) << ",\n";
  os << "  \"best_s\": " << json_vector(trace.best_s) << ",\n";
  os << "  \"calls\": [\n";
  for (std::size_t i = 0; i < trace.calls.size(); ++i) {
    const CallRecord& rec = trace.calls[i];
    os << "    {\"call\": " << rec.call << ", \"s\": " << json_vector(rec.s)
       << ", \"distance\": " << json_number(rec.distance)
       << ", \"normalized_distance\": " << json_number(rec.normalized_distance)
       << ", \"gradient_norm\": " << json_number(rec.gradient_norm)
       << ", \"a\": " << json_number(rec.a) << ", \"b\": " << json_number(rec.b)
       << ", \"accepted\": " << (rec.accepted ? "true" : "false") << "}"
       << (i + 1 < trace.calls.size() ? ",\n" : "\n");
  }
  os << "  ]\n";
  os << "}\n";
}

void write_verify_json(std::ostream& os, const std::vector<CheckResult>& checks) {
  os << "{\n";
  os << "  \"all_pass\": " << (all_pass(checks) ? "true" : "false") << ",\n";
  os << "  \"checks\": [\n";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const CheckResult& c = checks[i];
    os << "    {\"name\": \"" << json_escape(c.name) << "\", \"pass\": "
       << (c.pass ? "true" : "false") << ", \"observed\": " << json_number(c.observed)
       << ", \"threshold\": " << json_number(c.threshold) << ", \"detail\": \""
       << json_escape(c.detail) << "\"}" << (i + 1 < checks.size() ? ",\n" : "\n");
  }
  os << "  ]\n";
  os << "}\n";
}

}  // namespace densmatch
