#include "tft/report.hpp"

#include <sstream>

namespace tft {

namespace {

std::string join(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace

std::string format_report(const ValidationReport& report) {
  std::ostringstream os;
  for (const auto& axiom : report.checked_axioms()) {
    os << "  " << axiom << ": " << (report.failed(axiom) ? "FAIL" : "ok") << "\n";
  }
  for (const auto& v : report.violations()) {
    os << "  violation " << v.axiom;
    if (!v.grading.empty()) os << " grading (" << join(v.grading) << ")";
    if (!v.index.empty()) os << " index (" << join(v.index) << ")";
    const auto n = report.occurrences(v.axiom);
    if (n > 1) os << " [" << n << " instances]";
    if (!v.detail.empty()) os << ": " << v.detail;
    os << "\n";
  }
  return os.str();
}

}  // namespace tft
