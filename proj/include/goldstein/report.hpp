#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace goldstein {

struct CheckEntry {
  std::string name;
  bool passed = false;
  // Signed slack of the worst case: >= 0 means within limits.
  double worst_margin = 0.0;
  std::string detail;
};

struct Report {
  std::vector<CheckEntry> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  void add(std::string name, bool ok, double margin, std::string detail = {}) {
    checks.push_back({std::move(name), ok, margin, std::move(detail)});
  }
};

std::ostream& operator<<(std::ostream& os, const Report& report);

}  // namespace goldstein
