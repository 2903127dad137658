#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tft {

struct Violation {
  std::string axiom;
  std::vector<std::size_t> grading;  // group elements involved, if any
  std::vector<std::size_t> index;    // witnessing basis indices
  std::string detail;
};

/// Outcome of an axiom sweep. Only the first witness per axiom is kept; the
/// number of failing instances is counted.
class ValidationReport {
 public:
  void checked(std::string axiom) {
    if (std::find(checked_.begin(), checked_.end(), axiom) == checked_.end()) {
      checked_.push_back(std::move(axiom));
    }
  }

  void fail(Violation v) {
    checked(v.axiom);
    auto& count = counts_[v.axiom];
    if (count++ == 0) violations_.push_back(std::move(v));
  }

  bool pass() const { return violations_.empty(); }
  bool failed(std::string_view axiom) const {
    return std::any_of(violations_.begin(), violations_.end(),
                       [&](const Violation& v) { return v.axiom == axiom; });
  }
  std::size_t occurrences(const std::string& axiom) const {
    auto it = counts_.find(axiom);
    return it == counts_.end() ? 0 : it->second;
  }

  const std::vector<std::string>& checked_axioms() const { return checked_; }
  const std::vector<Violation>& violations() const { return violations_; }

  std::vector<std::string> failed_axioms() const {
    std::vector<std::string> out;
    for (const auto& v : violations_) out.push_back(v.axiom);
    return out;
  }

  void merge(const ValidationReport& other) {
    for (const auto& a : other.checked_) checked(a);
    for (const auto& v : other.violations_) {
      auto& count = counts_[v.axiom];
      if (count == 0) violations_.push_back(v);
      count += other.occurrences(v.axiom);
    }
  }

 private:
  std::vector<std::string> checked_;
  std::vector<Violation> violations_;
  std::map<std::string, std::size_t> counts_;
};

std::string format_report(const ValidationReport& report);

}  // namespace tft
