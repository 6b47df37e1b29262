#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcsa/linalg.hpp"
#include "hcsa/parameters.hpp"
#include "hcsa/report.hpp"

namespace hcsa {

enum class ModuleType { M, Q };

inline std::string to_string(ModuleType t) { return t == ModuleType::M ? "M" : "Q"; }

/// Irreducible module of the torus-Clifford subalgebra in a basis where every X_k is diagonal.
struct TorusModule {
  Variant variant = Variant::nondegenerate;
  int dim = 0;
  std::vector<int> parity;
  /// x_eigen[k][v]: eigenvalue of X_{k+1} (x_{k+1} when degenerate) on basis vector v.
  std::vector<std::vector<Scalar>> x_eigen;
  std::vector<Matrix> C;
  ModuleType type = ModuleType::M;
  /// Odd operator squaring to 1 that supercommutes with all generators; present iff type Q.
  std::optional<Matrix> odd_involution;
  ResidueSequence residues;
  /// Number of type Q rank-one factors.
  int type_q_factors = 0;
  /// Number of halvings; each keeps the +i eigenspace of the even involution product.
  int splits = 0;

  [[nodiscard]] int positions() const { return static_cast<int>(x_eigen.size()); }

  [[nodiscard]] Matrix X(int k) const { return Matrix::diagonal(x_eigen.at(k)); }

  [[nodiscard]] Matrix X_inverse(int k) const {
    std::vector<Scalar> d;
    for (const auto& x : x_eigen.at(k)) d.push_back(Scalar(1) / x);
    return Matrix::diagonal(d);
  }

  [[nodiscard]] Matrix parity_matrix() const {
    std::vector<Scalar> d;
    for (int p : parity) d.emplace_back(p ? -1 : 1);
    return Matrix::diagonal(d);
  }
};

/// Two-dimensional module for one residue: basis v0 (even), v1 (odd), C swaps them.
inline TorusModule rank_one_module(const Scalar& res, const ParameterSet& p) {
  TorusModule v;
  v.variant = p.variant;
  v.dim = 2;
  v.parity = {0, 1};
  const Precision& pr = p.precision;
  if (p.degenerate()) {
    Scalar qv = qval(res, p);
    const bool is_q = approx_eq(qv, Scalar(0), pr);
    Scalar s = is_q ? Scalar(0) : sqrt_principal(qv);
    v.x_eigen = {{s, -s}};
    v.type = is_q ? ModuleType::Q : ModuleType::M;
  } else {
    if (res.is_exact_zero()) throw InvalidParameter("residue 0 has no rank-one module");
    Scalar qv = qval(res, p);
    Scalar b;
    if (approx_eq(qv, Scalar(2), pr)) {
      b = Scalar(1);
      v.type = ModuleType::Q;
    } else if (approx_eq(qv, Scalar(-2), pr)) {
      b = Scalar(-1);
      v.type = ModuleType::Q;
    } else {
      b = b_plus(res, p);
      v.type = ModuleType::M;
    }
    v.x_eigen = {{b, Scalar(1) / b}};
  }
  Matrix c(2, 2);
  c.set(0, 1, Scalar(1));
  c.set(1, 0, Scalar(1));
  v.C = {c};
  if (v.type == ModuleType::Q) {
    Matrix j(2, 2);
    j.set(0, 1, -imaginary_unit());
    j.set(1, 0, imaginary_unit());
    v.odd_involution = j;
    v.type_q_factors = 1;
  }
  v.residues = make_residue_sequence({res}, p);
  return v;
}

namespace detail {

/// Restricts the tensor module to the +i eigenspace of a monomial even operator J with J^2 = -1.
inline TorusModule split_on_eigenspace(const TorusModule& full, const Matrix& j, const Precision& pr) {
  const int d = full.dim;
  std::vector<int> partner(static_cast<std::size_t>(d), -1);
  std::vector<Scalar> coeff(static_cast<std::size_t>(d));
  // J e_k = coeff[k] e_partner[k]
  for (int r = 0; r < d; ++r)
    for (const auto& [c, x] : j.row(r)) {
      if (partner[c] != -1) throw SplitFailure("involution product is not monomial");
      partner[c] = r;
      coeff[c] = x;
    }
  std::vector<int> reps;
  for (int k = 0; k < d; ++k) {
    if (partner[k] < 0) throw SplitFailure("involution product is singular");
    if (partner[k] == k) throw SplitFailure("involution product has a fixed basis vector");
    if (k < partner[k]) reps.push_back(k);
  }
  if (static_cast<int>(reps.size()) * 2 != d) throw SplitFailure("eigenspace does not have half dimension");
  for (int k : reps) {
    if (full.parity[k] != full.parity[partner[k]]) throw SplitFailure("involution product is not even");
    for (const auto& xs : full.x_eigen)
      if (!approx_eq(xs[k], xs[partner[k]], pr)) throw SplitFailure("involution product mixes X eigenvalues");
  }
  std::vector<int> slot(static_cast<std::size_t>(d), -1);
  for (int s = 0; s < static_cast<int>(reps.size()); ++s) slot[reps[s]] = s;
  const Scalar minus_i = -imaginary_unit();

  // Basis u_s = e_k - i coeff[k] e_partner[k]; coordinates are read at the pivot rows k.
  auto restrict_matrix = [&](const Matrix& g) {
    const int h = static_cast<int>(reps.size());
    Matrix out(h, h);
    Matrix gt = g.transpose();  // columns of g as rows
    for (int s = 0; s < h; ++s) {
      const int k = reps[s];
      const Scalar w = minus_i * coeff[k];
      for (const auto& [r, x] : gt.row(k))
        if (slot[r] >= 0) out.add(slot[r], s, x);
      for (const auto& [r, x] : gt.row(partner[k]))
        if (slot[r] >= 0) out.add(slot[r], s, w * x);
    }
    out.prune();
    return out;
  };

  TorusModule out;
  out.variant = full.variant;
  out.dim = static_cast<int>(reps.size());
  for (int k : reps) out.parity.push_back(full.parity[k]);
  for (const auto& xs : full.x_eigen) {
    std::vector<Scalar> e;
    for (int k : reps) e.push_back(xs[k]);
    out.x_eigen.push_back(std::move(e));
  }
  for (const auto& c : full.C) out.C.push_back(restrict_matrix(c));
  out.type = ModuleType::M;
  out.residues = full.residues;
  out.type_q_factors = full.type_q_factors;
  out.splits = full.splits + 1;
  return out;
}

}  // namespace detail

/// Irreducible constituent of the graded tensor product V (positions first) with W.
inline TorusModule super_tensor(const TorusModule& v, const TorusModule& w, const ParameterSet& p) {
  if (v.variant != w.variant) throw InvalidParameter("tensor factors come from different variants");
  const int dv = v.dim;
  const int dw = w.dim;
  const Matrix iv = Matrix::identity(dv);
  const Matrix iw = Matrix::identity(dw);
  const Matrix pv = v.parity_matrix();

  TorusModule t;
  t.variant = v.variant;
  t.dim = dv * dw;
  for (int a = 0; a < dv; ++a)
    for (int b = 0; b < dw; ++b) t.parity.push_back(v.parity[a] ^ w.parity[b]);
  for (const auto& xs : v.x_eigen) {
    std::vector<Scalar> e;
    for (int a = 0; a < dv; ++a)
      for (int b = 0; b < dw; ++b) e.push_back(xs[a]);
    t.x_eigen.push_back(std::move(e));
  }
  for (const auto& xs : w.x_eigen) {
    std::vector<Scalar> e;
    for (int a = 0; a < dv; ++a)
      for (int b = 0; b < dw; ++b) e.push_back(xs[b]);
    t.x_eigen.push_back(std::move(e));
  }
  for (const auto& c : v.C) t.C.push_back(kron(c, iw));
  for (const auto& c : w.C) t.C.push_back(kron(pv, c));
  t.residues.values = v.residues.values;
  t.residues.values.insert(t.residues.values.end(), w.residues.values.begin(), w.residues.values.end());
  t.residues.qvalues = v.residues.qvalues;
  t.residues.qvalues.insert(t.residues.qvalues.end(), w.residues.qvalues.begin(), w.residues.qvalues.end());
  t.type_q_factors = v.type_q_factors + w.type_q_factors;
  t.splits = v.splits + w.splits;

  const bool vq = v.type == ModuleType::Q;
  const bool wq = w.type == ModuleType::Q;
  if (vq && wq) {
    Matrix j = kron(*v.odd_involution * pv, *w.odd_involution);
    return detail::split_on_eigenspace(t, j, p.precision);
  }
  if (vq) {
    t.type = ModuleType::Q;
    t.odd_involution = kron(*v.odd_involution, iw);
  } else if (wq) {
    t.type = ModuleType::Q;
    t.odd_involution = kron(pv, *w.odd_involution);
  } else {
    t.type = ModuleType::M;
  }
  return t;
}

/// Left fold of the super tensor product over the rank-one modules of the residues.
inline TorusModule build_L(const ResidueSequence& rs, const ParameterSet& p) {
  if (rs.values.empty()) throw InvalidParameter("empty residue sequence");
  TorusModule acc = rank_one_module(rs.values[0], p);
  for (std::size_t k = 1; k < rs.values.size(); ++k) acc = super_tensor(acc, rank_one_module(rs.values[k], p), p);
  return acc;
}

enum class GeneratorKind { X, Xinv, C };

/// Generator at position k (1-based) on the twist by tau (tau[j-1] = tau(j)): the stored matrix at tau^{-1}(k).
inline Matrix twisted_generator(const TorusModule& v, const std::vector<int>& tau, GeneratorKind kind, int k) {
  int src = -1;
  for (int j = 0; j < static_cast<int>(tau.size()); ++j)
    if (tau[j] == k) src = j;
  if (src < 0) throw InvalidParameter("position outside the permutation");
  switch (kind) {
    case GeneratorKind::X:
      return v.X(src);
    case GeneratorKind::Xinv:
      return v.X_inverse(src);
    case GeneratorKind::C:
      return v.C.at(src);
  }
  return {};
}

/// Residuals of the torus and Clifford relations, odd-ness of C, and the odd involution identities.
inline Report verify_torus_relations(const TorusModule& v, const ParameterSet& p, const Real& tolerance) {
  Report rep;
  rep.tolerance = tolerance;
  const int n = v.positions();
  const Matrix id = Matrix::identity(v.dim);
  std::vector<Matrix> xs, xinv;
  for (int k = 0; k < n; ++k) {
    xs.push_back(v.X(k));
    if (!p.degenerate()) xinv.push_back(v.X_inverse(k));
  }
  for (int k = 0; k < n; ++k) {
    const std::string tag = std::to_string(k + 1);
    rep.residual("C" + tag + "^2=1", max_abs_difference(v.C[k] * v.C[k], id));
    if (!p.degenerate()) {
      rep.residual("X" + tag + "Xinv" + tag + "=1", max_abs_difference(xs[k] * xinv[k], id));
      rep.residual("X" + tag + "C" + tag + "=C" + tag + "Xinv" + tag, max_abs_difference(xs[k] * v.C[k], v.C[k] * xinv[k]));
    } else {
      rep.residual("x" + tag + "c" + tag + "=-c" + tag + "x" + tag, max_abs(xs[k] * v.C[k] + v.C[k] * xs[k]));
    }
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      const std::string pair = tag + "," + std::to_string(j + 1);
      rep.residual("XC commute " + pair, max_abs_difference(xs[k] * v.C[j], v.C[j] * xs[k]));
      if (j > k) {
        rep.residual("XX commute " + pair, max_abs_difference(xs[k] * xs[j], xs[j] * xs[k]));
        rep.residual("CC anticommute " + pair, max_abs(v.C[k] * v.C[j] + v.C[j] * v.C[k]));
      }
    }
    bool odd = true;
    for (int r = 0; r < v.dim; ++r)
      for (const auto& e : v.C[k].row(r))
        if (v.parity[r] == v.parity[e.first]) odd = false;
    rep.finding("C" + tag + " is odd", odd);
  }
  if (v.type == ModuleType::Q) {
    if (!v.odd_involution) {
      rep.finding("type Q carries an odd involution", false);
      return rep;
    }
    const Matrix& j = *v.odd_involution;
    rep.residual("J^2=1", max_abs_difference(j * j, id));
    for (int k = 0; k < n; ++k) {
      rep.residual("J commutes with X" + std::to_string(k + 1), max_abs_difference(j * xs[k], xs[k] * j));
      rep.residual("J anticommutes with C" + std::to_string(k + 1), max_abs(j * v.C[k] + v.C[k] * j));
    }
  }
  const int expected = 1 << (n - v.type_q_factors / 2);
  rep.finding("dimension 2^(n - floor(q/2))", v.dim == expected,
              std::to_string(v.dim) + " vs " + std::to_string(expected));
  return rep;
}

}  // namespace hcsa
