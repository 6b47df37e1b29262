#pragma once

#include <string>
#include <vector>

#include "hcsa/linalg.hpp"
#include "hcsa/parameters.hpp"
#include "hcsa/report.hpp"

namespace hcsa {

/// Residuals of the affine defining relations for generator matrices T_i (s_i), X_k (x_k), X_k^{-1}, C_k.
/// `xinv` is ignored in the degenerate variant.
inline void check_relations(const ParameterSet& p, const std::vector<Matrix>& T, const std::vector<Matrix>& x,
                            const std::vector<Matrix>& xinv, const std::vector<Matrix>& C, Report& rep) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return;
  const Matrix id = Matrix::identity(x.front().rows());
  const Scalar eps = p.hecke_epsilon();
  auto tag = [](int k) { return std::to_string(k + 1); };

  for (int i = 0; i + 1 < n; ++i) {
    const std::string s = tag(i);
    if (p.degenerate()) {
      rep.residual("s" + s + "^2=1", max_abs_difference(T[i] * T[i], id));
      rep.residual("s" + s + "x" + s + "=x" + tag(i + 1) + "s" + s + "-(1+c" + s + "c" + tag(i + 1) + ")",
                   max_abs(T[i] * x[i] - x[i + 1] * T[i] + id + C[i] * C[i + 1]));
      rep.residual("s" + s + "c" + tag(i + 1) + "=c" + s + "s" + s, max_abs_difference(T[i] * C[i + 1], C[i] * T[i]));
      rep.residual("s" + s + "x" + tag(i + 1) + "=x" + s + "s" + s + "+1-c" + s + "c" + tag(i + 1),
                   max_abs(T[i] * x[i + 1] - x[i] * T[i] - id + C[i] * C[i + 1]));
    } else {
      rep.residual("T" + s + "^2=eps T" + s + "+1", max_abs(T[i] * T[i] - eps * T[i] - id));
      rep.residual("T" + s + "X" + s, max_abs(T[i] * x[i] - x[i + 1] * T[i] + eps * (x[i + 1] + C[i] * C[i + 1] * x[i])));
      rep.residual("T" + s + "X" + tag(i + 1),
                   max_abs(T[i] * x[i + 1] - x[i] * T[i] - eps * ((id - C[i] * C[i + 1]) * x[i + 1])));
      rep.residual("T" + s + "C" + tag(i + 1), max_abs(T[i] * C[i + 1] - C[i] * T[i] + eps * (C[i] - C[i + 1])));
    }
    rep.residual("T" + s + "C" + s + "=C" + tag(i + 1) + "T" + s, max_abs_difference(T[i] * C[i], C[i + 1] * T[i]));
    for (int j = 0; j < n; ++j) {
      if (j == i || j == i + 1) continue;
      rep.residual("T" + s + "X" + tag(j) + " commute", max_abs_difference(T[i] * x[j], x[j] * T[i]));
      rep.residual("T" + s + "C" + tag(j) + " commute", max_abs_difference(T[i] * C[j], C[j] * T[i]));
    }
    for (int j = i + 2; j + 1 < n; ++j)
      rep.residual("T" + s + "T" + tag(j) + " commute", max_abs_difference(T[i] * T[j], T[j] * T[i]));
    if (i + 2 < n)
      rep.residual("braid " + s, max_abs_difference(T[i] * T[i + 1] * T[i], T[i + 1] * T[i] * T[i + 1]));
  }
  for (int k = 0; k < n; ++k) {
    const std::string s = tag(k);
    rep.residual("C" + s + "^2=1", max_abs_difference(C[k] * C[k], id));
    if (p.degenerate()) {
      rep.residual("x" + s + "c" + s + "=-c" + s + "x" + s, max_abs(x[k] * C[k] + C[k] * x[k]));
    } else {
      rep.residual("X" + s + "Xinv" + s + "=1", max_abs_difference(x[k] * xinv[k], id));
      rep.residual("X" + s + "C" + s + "=C" + s + "Xinv" + s, max_abs_difference(x[k] * C[k], C[k] * xinv[k]));
    }
    for (int j = k + 1; j < n; ++j) {
      rep.residual("C" + s + "C" + tag(j) + " anticommute", max_abs(C[k] * C[j] + C[j] * C[k]));
      rep.residual("X" + s + "C" + tag(j) + " commute", max_abs_difference(x[k] * C[j], C[j] * x[k]));
      rep.residual("X" + tag(j) + "C" + s + " commute", max_abs_difference(x[j] * C[k], C[k] * x[j]));
    }
  }
}

}  // namespace hcsa
