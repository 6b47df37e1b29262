#pragma once

#include <string>
#include <vector>

#include "hcsa/scalar_field.hpp"

namespace hcsa {

/// Named residuals plus boolean findings, compared against one tolerance.
struct Report {
  struct Residual {
    std::string name;
    Real value;
  };
  struct Finding {
    std::string name;
    bool ok = true;
    std::string detail;
  };

  Real tolerance;
  std::vector<Residual> residuals;
  std::vector<Finding> findings;

  void residual(std::string name, Real value) { residuals.push_back({std::move(name), std::move(value)}); }
  void finding(std::string name, bool ok, std::string detail = {}) {
    findings.push_back({std::move(name), ok, std::move(detail)});
  }

  [[nodiscard]] Real max_residual() const {
    Real best = 0;
    for (const auto& r : residuals)
      if (r.value > best) best = r.value;
    return best;
  }

  [[nodiscard]] bool passed() const {
    for (const auto& f : findings)
      if (!f.ok) return false;
    for (const auto& r : residuals)
      if (!(r.value <= tolerance)) return false;
    return true;
  }

  /// Name of the first failing item, empty when passed.
  [[nodiscard]] std::string first_failure() const {
    for (const auto& f : findings)
      if (!f.ok) return f.name + (f.detail.empty() ? "" : ": " + f.detail);
    for (const auto& r : residuals)
      if (!(r.value <= tolerance)) return r.name + " residual " + r.value.str(6);
    return {};
  }

  void merge(const Report& other) {
    residuals.insert(residuals.end(), other.residuals.begin(), other.residuals.end());
    findings.insert(findings.end(), other.findings.begin(), other.findings.end());
  }
};

}  // namespace hcsa
