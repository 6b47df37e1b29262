#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hcsa/commutant.hpp"
#include "hcsa/relations.hpp"
#include "hcsa/torus_modules.hpp"

namespace hcsa {

/// Square root chosen for one unordered pair of q-values.
struct SqrtBranch {
  Scalar qa;
  Scalar qb;
  Scalar omega;
};

/// Simple module of the cyclotomic algebra: one copy of the base torus module per standard tableau.
struct CycloModule {
  Multipartition shape;
  ParameterSet params;
  std::vector<StandardTableau> blocks;
  /// perms[b][k-1] = tau(k) with blocks[b] = tau . t^lambda.
  std::vector<std::vector<int>> perms;
  TorusModule base;
  int block_dim = 0;
  int total_dim = 0;
  std::vector<int> parity;
  /// x_eigen[k][v]: diagonal of X_{k+1}.
  std::vector<std::vector<Scalar>> x_eigen;
  std::vector<Matrix> T;
  std::vector<Matrix> C;
  std::vector<SqrtBranch> sqrt_branches;

  [[nodiscard]] int n() const { return shape.size(); }
  [[nodiscard]] ModuleType type() const { return base.type; }
  [[nodiscard]] Matrix X(int k) const { return Matrix::diagonal(x_eigen.at(k)); }
  [[nodiscard]] Matrix X_inverse(int k) const {
    std::vector<Scalar> d;
    for (const auto& x : x_eigen.at(k)) d.push_back(Scalar(1) / x);
    return Matrix::diagonal(d);
  }
  [[nodiscard]] int block_of(const StandardTableau& t) const {
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
      if (blocks[b] == t) return b;
    return -1;
  }
};

/// Coefficient of the cross-block part of T_i for eigenvalues (a, b) of (X_i, X_{i+1}).
inline Scalar omega_from_eigenvalues(const Scalar& a, const Scalar& b, const ParameterSet& p) {
  const Precision& pr = p.precision;
  if (p.degenerate()) {
    Scalar diff = a * a - b * b;
    if (approx_eq(a * a, b * b, pr)) throw DegenerateDenominator("x_i^2 - x_{i+1}^2 vanishes");
    return sqrt_principal(Scalar(1) - Scalar(2) * (a * a + b * b) / (diff * diff));
  }
  const Scalar eps = p.hecke_epsilon();
  const Scalar u = a / b;
  const Scalar w = Scalar(1) / (a * b);
  if (approx_eq(u, Scalar(1), pr) || approx_eq(w, Scalar(1), pr))
    throw DegenerateDenominator("X_i X_{i+1}^{+-1} - 1 vanishes");
  const Scalar du = u - Scalar(1);
  const Scalar dw = w - Scalar(1);
  return sqrt_principal(Scalar(1) - eps * eps * (u / (du * du) + w / (dw * dw)));
}

/// omega for a pair of q-values, using b_+ representatives (degenerate: principal square roots).
inline Scalar omega_scalar(const Scalar& qa, const Scalar& qb, const ParameterSet& p) {
  if (p.degenerate()) return omega_from_eigenvalues(sqrt_principal(qa), sqrt_principal(qb), p);
  auto root = [](const Scalar& qv) {
    Scalar h = qv / Scalar(2);
    return h + sqrt_principal(h * h - Scalar(1));
  };
  return omega_from_eigenvalues(root(qa), root(qb), p);
}

namespace detail {

/// Square of the eigenvalue-sum that appears in the q-residues: a + 1/a, or a^2 when degenerate.
inline Scalar q_of_eigenvalue(const Scalar& a, const ParameterSet& p) {
  if (p.degenerate()) return a * a;
  return a + Scalar(1) / a;
}

inline const Scalar& cached_omega(std::vector<SqrtBranch>& cache, const Scalar& qa, const Scalar& qb,
                                  const ParameterSet& p) {
  for (const auto& br : cache)
    if ((approx_eq(br.qa, qa, p.precision) && approx_eq(br.qb, qb, p.precision)) ||
        (approx_eq(br.qa, qb, p.precision) && approx_eq(br.qb, qa, p.precision)))
      return br.omega;
  cache.push_back({qa, qb, omega_scalar(qa, qb, p)});
  return cache.back().omega;
}

}  // namespace detail

/// Block-local matrix of the diagonal part of T_i (s_i when degenerate) for eigenvalue lists
/// a = X_i, b = X_{i+1} and the block's C_i C_{i+1}.
inline Matrix xi_block(const std::vector<Scalar>& a, const std::vector<Scalar>& b, const Matrix& cc,
                       const ParameterSet& p) {
  const int d = static_cast<int>(a.size());
  const Precision& pr = p.precision;
  Matrix out(d, d);
  if (p.degenerate()) {
    for (int v = 0; v < d; ++v) {
      if (approx_eq(a[v] * a[v], b[v] * b[v], pr)) throw DegenerateDenominator("x_i^2 - x_{i+1}^2 vanishes");
      const Scalar den = a[v] * a[v] - b[v] * b[v];
      out.add(v, v, -(a[v] + b[v]) / den);
    }
    // -c_i c_{i+1} (x_i - x_{i+1}) / (x_i^2 - x_{i+1}^2), the rational factor acting first
    for (int r = 0; r < d; ++r)
      for (const auto& [v, c] : cc.row(r)) {
        const Scalar den = a[v] * a[v] - b[v] * b[v];
        out.add(r, v, -(c * (a[v] - b[v]) / den));
      }
    out.prune();
    return out;
  }
  const Scalar eps = p.hecke_epsilon();
  for (int v = 0; v < d; ++v) {
    const Scalar u = a[v] / b[v];
    if (approx_eq(u, Scalar(1), pr)) throw DegenerateDenominator("X_i X_{i+1}^{-1} - 1 vanishes");
    out.add(v, v, -eps / (u - Scalar(1)));
  }
  // eps / (X_i X_{i+1} - 1) applied after C_i C_{i+1}
  for (int r = 0; r < d; ++r) {
    const Scalar w = a[r] * b[r];
    if (approx_eq(w, Scalar(1), pr)) throw DegenerateDenominator("X_i X_{i+1} - 1 vanishes");
    for (const auto& [v, c] : cc.row(r)) out.add(r, v, eps / (w - Scalar(1)) * c);
  }
  out.prune();
  return out;
}

/// Assembles D(shape) as generator matrices. Requires the separability product to be nonzero.
inline CycloModule build_module(const Multipartition& shape, const ParameterSet& p) {
  if (shape.flavor() != p.flavor) throw InvalidParameter("shape flavor differs from the parameter flavor");
  if (shape.m() != p.m()) throw InvalidParameter("shape has a different number of ordinary components than Q");
  const int n = shape.size();
  if (n < 1) throw InvalidParameter("empty shape");
  if (separability_polynomial(p, n).vanishes)
    throw NotSeparate("separability product vanishes for n = " + std::to_string(n));

  CycloModule mod;
  mod.shape = shape;
  mod.params = p;
  mod.blocks = enumerate_standard_tableaux(shape);
  mod.base = build_L(residue_sequence(mod.blocks.front(), p), p);
  mod.block_dim = mod.base.dim;
  const int nb = static_cast<int>(mod.blocks.size());
  const int bd = mod.block_dim;
  mod.total_dim = bd * nb;

  std::map<std::vector<int>, int> index;
  for (int b = 0; b < nb; ++b) {
    index[mod.blocks[b].entries()] = b;
    mod.perms.push_back(permutation_from_initial(mod.blocks[b]));
  }

  // source[b][k]: stored position acting as position k on block b
  std::vector<std::vector<int>> source(static_cast<std::size_t>(nb), std::vector<int>(static_cast<std::size_t>(n)));
  for (int b = 0; b < nb; ++b)
    for (int j = 0; j < n; ++j) source[b][mod.perms[b][j] - 1] = j;

  for (int b = 0; b < nb; ++b) mod.parity.insert(mod.parity.end(), mod.base.parity.begin(), mod.base.parity.end());
  mod.x_eigen.assign(static_cast<std::size_t>(n), {});
  for (int k = 0; k < n; ++k)
    for (int b = 0; b < nb; ++b) {
      const auto& src = mod.base.x_eigen[source[b][k]];
      mod.x_eigen[k].insert(mod.x_eigen[k].end(), src.begin(), src.end());
    }
  for (int k = 0; k < n; ++k) {
    Matrix c(mod.total_dim, mod.total_dim);
    for (int b = 0; b < nb; ++b) {
      const Matrix& blk = mod.base.C[source[b][k]];
      for (int r = 0; r < bd; ++r)
        for (const auto& [col, x] : blk.row(r)) c.add(b * bd + r, b * bd + col, x);
    }
    mod.C.push_back(std::move(c));
  }

  for (int i = 1; i < n; ++i) {
    Matrix t(mod.total_dim, mod.total_dim);
    for (int b = 0; b < nb; ++b) {
      const auto& a = mod.base.x_eigen[source[b][i - 1]];
      const auto& bb = mod.base.x_eigen[source[b][i]];
      const Matrix cc = mod.base.C[source[b][i - 1]] * mod.base.C[source[b][i]];
      const Matrix xi = xi_block(a, bb, cc, p);
      for (int r = 0; r < bd; ++r)
        for (const auto& [col, x] : xi.row(r)) t.add(b * bd + r, b * bd + col, x);
      const StandardTableau& tab = mod.blocks[b];
      if (!tab.is_admissible(i)) continue;
      const int target = index.at(apply_transposition(tab, i).entries());
      for (int v = 0; v < bd; ++v) {
        const Scalar qa = detail::q_of_eigenvalue(a[v], p);
        const Scalar qb = detail::q_of_eigenvalue(bb[v], p);
        const Scalar& w = detail::cached_omega(mod.sqrt_branches, qa, qb, p);
        t.add(target * bd + v, b * bd + v, w);
      }
    }
    t.prune();
    mod.T.push_back(std::move(t));
  }
  return mod;
}

/// Cyclotomic polynomial evaluated at a diagonal entry of X_1 (x_1 when degenerate).
inline Scalar cyclotomic_value(const Scalar& x, const ParameterSet& p) {
  Scalar v(1);
  if (p.degenerate()) {
    for (const auto& q : p.Q) v *= x * x - qval(q, p);
    if (p.flavor == Flavor::s) v *= x;
    return v;
  }
  for (const auto& q : p.Q) v *= x + Scalar(1) / x - qval(q, p);
  if (p.flavor == Flavor::s) v *= x - Scalar(1);
  if (p.flavor == Flavor::ss) v *= (x - Scalar(1)) * (x + Scalar(1));
  return v;
}

/// Residuals of every defining relation, including the cyclotomic one, on the built matrices.
inline Report verify_relations(const CycloModule& mod, const Real& tolerance) {
  const ParameterSet& p = mod.params;
  const int n = mod.n();
  const int d = mod.total_dim;
  Report rep;
  rep.tolerance = tolerance;
  std::vector<Matrix> x, xinv;
  for (int k = 0; k < n; ++k) {
    x.push_back(mod.X(k));
    if (!p.degenerate()) xinv.push_back(mod.X_inverse(k));
  }
  check_relations(p, mod.T, x, xinv, mod.C, rep);
  const auto& T = mod.T;
  const auto& C = mod.C;
  Real cyc = 0;
  for (const auto& v : mod.x_eigen[0]) {
    Real a = abs(cyclotomic_value(v, p));
    if (a > cyc) cyc = a;
  }
  rep.residual("f(X1)=0", cyc);

  bool parity_ok = true;
  for (int k = 0; k < n; ++k)
    for (int r = 0; r < d; ++r)
      for (const auto& e : C[k].row(r))
        if (mod.parity[r] == mod.parity[e.first]) parity_ok = false;
  for (const auto& t : T)
    for (int r = 0; r < d; ++r)
      for (const auto& e : t.row(r))
        if (mod.parity[r] != mod.parity[e.first]) parity_ok = false;
  rep.finding("generator parities", parity_ok);
  return rep;
}

/// Dimension 2^(n - floor(#diagonal/2)) |Std(shape)| computed from the shape alone.
inline std::uint64_t expected_dimension(const Multipartition& shape) {
  return (std::uint64_t{1} << (shape.size() - shape.diagonal_count() / 2)) * count_standard_tableaux(shape);
}

/// Value of the intertwiner square on a basis vector with eigenvalues a = X_i, b = X_{i+1}.
inline Scalar intertwiner_square_value(const Scalar& a, const Scalar& b, const ParameterSet& p) {
  if (p.degenerate()) {
    const Scalar a2 = a * a;
    const Scalar b2 = b * b;
    return Scalar(2) * (a2 + b2) - (a2 - b2) * (a2 - b2);
  }
  const Scalar eps = p.hecke_epsilon();
  const Scalar ai = Scalar(1) / a;
  const Scalar bi = Scalar(1) / b;
  const Scalar z = a + ai - b - bi;
  const Scalar s1 = a * b - Scalar(1);
  const Scalar s2 = a * bi - Scalar(1);
  return z * z * (z * z - eps * eps * (ai * bi * s1 * s1 + ai * b * s2 * s2));
}

/// Intertwiner for position i (0-based) as a matrix built from the module's generators.
inline Matrix intertwiner(const CycloModule& mod, int i) {
  const ParameterSet& p = mod.params;
  const int d = mod.total_dim;
  const auto& a = mod.x_eigen[i];
  const auto& b = mod.x_eigen[i + 1];
  const Matrix cc = mod.C[i] * mod.C[i + 1];
  if (p.degenerate()) {
    std::vector<Scalar> dsq, sum, diff;
    for (int v = 0; v < d; ++v) {
      dsq.push_back(a[v] * a[v] - b[v] * b[v]);
      sum.push_back(a[v] + b[v]);
      diff.push_back(a[v] - b[v]);
    }
    return mod.T[i] * Matrix::diagonal(dsq) + Matrix::diagonal(sum) + cc * Matrix::diagonal(diff);
  }
  const Scalar eps = p.hecke_epsilon();
  std::vector<Scalar> z2, first, second;
  for (int v = 0; v < d; ++v) {
    const Scalar z = a[v] + Scalar(1) / a[v] - b[v] - Scalar(1) / b[v];
    z2.push_back(z * z);
    first.push_back(eps * z * z / (a[v] / b[v] - Scalar(1)));
    second.push_back(eps * z * z / (a[v] * b[v] - Scalar(1)));
  }
  return Matrix::diagonal(z2) * mod.T[i] + Matrix::diagonal(first) - Matrix::diagonal(second) * cc;
}

/// Cross-block rank, square, and exchange identities of the intertwiner at position i (1-based).
inline Report intertwiner_check(const CycloModule& mod, int i1, const Real& tolerance) {
  const int i = i1 - 1;
  const ParameterSet& p = mod.params;
  const int bd = mod.block_dim;
  const int nb = static_cast<int>(mod.blocks.size());
  Report rep;
  rep.tolerance = tolerance;
  const Matrix phi = intertwiner(mod, i);

  std::map<std::vector<int>, int> index;
  for (int b = 0; b < nb; ++b) index[mod.blocks[b].entries()] = b;
  Real same_block = 0;
  bool ranks_ok = true;
  std::string detail;
  for (int b = 0; b < nb; ++b) {
    Real own = max_abs(phi.block(b * bd, b * bd, bd, bd));
    if (own > same_block) same_block = own;
    if (!mod.blocks[b].is_admissible(i1)) continue;
    const int target = index.at(apply_transposition(mod.blocks[b], i1).entries());
    Matrix cross = phi.block(target * bd, b * bd, bd, bd);
    EchelonBasis<Scalar, Real> basis(bd, p.precision.epsilon);
    for (int r = 0; r < bd; ++r) {
      std::vector<Scalar> row(static_cast<std::size_t>(bd));
      for (const auto& [c, x] : cross.row(r)) row[c] = x;
      basis.insert(std::move(row));
    }
    if (basis.rank() != bd) {
      ranks_ok = false;
      detail = "block " + std::to_string(b) + " rank " + std::to_string(basis.rank());
    }
  }
  rep.finding("cross-block rank equals block dimension", ranks_ok, detail);
  rep.residual("no component inside the source block", same_block);

  std::vector<Scalar> sq;
  for (int v = 0; v < mod.total_dim; ++v)
    sq.push_back(intertwiner_square_value(mod.x_eigen[i][v], mod.x_eigen[i + 1][v], p));
  rep.residual("square", max_abs_difference(phi * phi, Matrix::diagonal(sq)));

  const Matrix xi = mod.X(i), xj = mod.X(i + 1);
  rep.residual("Phi X_i = X_{i+1} Phi", max_abs_difference(phi * xi, xj * phi));
  rep.residual("Phi X_{i+1} = X_i Phi", max_abs_difference(phi * xj, xi * phi));
  rep.residual("Phi C_i = C_{i+1} Phi", max_abs_difference(phi * mod.C[i], mod.C[i + 1] * phi));
  rep.residual("Phi C_{i+1} = C_i Phi", max_abs_difference(phi * mod.C[i + 1], mod.C[i] * phi));
  if (!p.degenerate()) {
    const Matrix xii = mod.X_inverse(i), xji = mod.X_inverse(i + 1);
    rep.residual("Phi X_i^-1 = X_{i+1}^-1 Phi", max_abs_difference(phi * xii, xji * phi));
    rep.residual("Phi X_{i+1}^-1 = X_i^-1 Phi", max_abs_difference(phi * xji, xii * phi));
  }
  for (int l = 0; l < mod.n(); ++l) {
    if (l == i || l == i + 1) continue;
    const Matrix xl = mod.X(l);
    rep.residual("Phi X_" + std::to_string(l + 1), max_abs_difference(phi * xl, xl * phi));
    rep.residual("Phi C_" + std::to_string(l + 1), max_abs_difference(phi * mod.C[l], mod.C[l] * phi));
  }
  return rep;
}

struct IrreducibilityReport {
  int total_dim = 0;
  /// Smallest spun-up dimension over the trials.
  int min_spin_dim = 0;
  int even_commutant = 0;
  int odd_commutant = 0;

  [[nodiscard]] bool spin_up_full() const { return min_spin_dim == total_dim; }
  [[nodiscard]] ModuleType type_from_commutant() const { return odd_commutant == 1 ? ModuleType::Q : ModuleType::M; }
  [[nodiscard]] bool passed() const { return spin_up_full() && even_commutant == 1 && odd_commutant <= 1; }
};

namespace detail {

using DMatrix = SparseMatrix<DoubleComplex>;

/// Dimension of the smallest subspace containing v and closed under the generators (double precision).
inline int spin_up_dimension(const std::vector<DMatrix>& gens, std::vector<DoubleComplex> start) {
  const int d = static_cast<int>(start.size());
  std::vector<std::vector<DoubleComplex>> basis;
  auto dot = [](const std::vector<DoubleComplex>& u, const std::vector<DoubleComplex>& v) {
    DoubleComplex s(0.0);
    for (std::size_t k = 0; k < u.size(); ++k) s += conj(u[k]) * v[k];
    return s;
  };
  auto try_add = [&](std::vector<DoubleComplex> v) {
    double n0 = 0;
    for (const auto& x : v) n0 += norm(x);
    n0 = std::sqrt(n0);
    if (n0 == 0) return false;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        DoubleComplex c = dot(b, v);
        for (int k = 0; k < d; ++k) v[k] -= c * b[k];
      }
    double n1 = 0;
    for (const auto& x : v) n1 += norm(x);
    n1 = std::sqrt(n1);
    if (n1 <= 1e-9 * n0) return false;
    for (auto& x : v) x = x * DoubleComplex(1.0 / n1);
    basis.push_back(std::move(v));
    return true;
  };
  try_add(std::move(start));
  for (std::size_t next = 0; next < basis.size() && static_cast<int>(basis.size()) < d; ++next) {
    for (const auto& g : gens) {
      try_add(g.apply(basis[next]));
      if (static_cast<int>(basis.size()) == d) break;
    }
  }
  return static_cast<int>(basis.size());
}

}  // namespace detail

/// Spin-up from seeded random vectors plus even and odd supercommutant dimensions.
inline IrreducibilityReport irreducibility_check(const CycloModule& mod, int trials, std::uint64_t seed) {
  IrreducibilityReport rep;
  rep.total_dim = mod.total_dim;
  const int n = mod.n();
  std::vector<detail::DMatrix> gens;
  auto to_d = [](const Scalar& z) { return to_double(z); };
  for (const auto& t : mod.T) gens.push_back(t.map(to_d));
  for (int k = 0; k < n; ++k) {
    gens.push_back(mod.X(k).map(to_d));
    gens.push_back(mod.C[k].map(to_d));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  rep.min_spin_dim = mod.total_dim;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<DoubleComplex> v(static_cast<std::size_t>(mod.total_dim));
    for (auto& x : v) x = DoubleComplex(gauss(rng), gauss(rng));
    rep.min_spin_dim = std::min(rep.min_spin_dim, detail::spin_up_dimension(gens, std::move(v)));
  }

  SuperModuleView view;
  view.dim = mod.total_dim;
  view.parity = mod.parity;
  for (const auto& xs : mod.x_eigen) view.diagonal.push_back(&xs);
  for (const auto& t : mod.T) view.even.push_back(&t);
  for (const auto& c : mod.C) view.odd.push_back(&c);
  rep.even_commutant = supercommutant_dimension(view, false, mod.params.precision);
  rep.odd_commutant = supercommutant_dimension(view, true, mod.params.precision);
  return rep;
}

/// Diagonal of X_k + X_k^{-1} (x_k^2 when degenerate) matches the q-residue of k in each block's tableau.
inline Report eigenvalue_audit(const CycloModule& mod, const Real& tolerance) {
  const ParameterSet& p = mod.params;
  Report rep;
  rep.tolerance = tolerance;
  const int bd = mod.block_dim;
  Real worst = 0;
  for (int b = 0; b < static_cast<int>(mod.blocks.size()); ++b) {
    const ResidueSequence rs = residue_sequence(mod.blocks[b], p);
    for (int k = 0; k < mod.n(); ++k)
      for (int v = 0; v < bd; ++v) {
        Real e = abs(detail::q_of_eigenvalue(mod.x_eigen[k][b * bd + v], p) - rs.qvalues[k]);
        if (e > worst) worst = e;
      }
  }
  rep.residual("q-residue eigenvalues", worst);
  // X_k is stored as its diagonal, so every built module is completely splittable.
  rep.finding("X diagonal", static_cast<int>(mod.x_eigen.size()) == mod.n());
  return rep;
}

/// q-residue vectors of all blocks, in block order.
inline std::vector<std::vector<Scalar>> q_residue_vectors(const CycloModule& mod) {
  std::vector<std::vector<Scalar>> out;
  for (const auto& t : mod.blocks) out.push_back(residue_sequence(t, mod.params).qvalues);
  return out;
}

inline std::uint64_t cyclotomic_degree(const ParameterSet& p) {
  const auto m = static_cast<std::uint64_t>(p.m());
  switch (p.flavor) {
    case Flavor::zero:
      return 2 * m;
    case Flavor::s:
      return 2 * m + 1;
    case Flavor::ss:
      return 2 * m + 2;
  }
  return 0;
}

/// 2^n r^n n!
inline std::uint64_t pbw_dimension(const ParameterSet& p, int n) {
  std::uint64_t v = factorial(n);
  for (int k = 0; k < n; ++k) v *= 2 * cyclotomic_degree(p);
  return v;
}

struct CensusEntry {
  Multipartition shape;
  std::uint64_t formula_dim = 0;
  ModuleType formula_type = ModuleType::M;
  int built_dim = 0;
  ModuleType built_type = ModuleType::M;
};

struct CensusReport {
  std::uint64_t expected = 0;
  std::uint64_t formula_sum = 0;
  std::uint64_t built_sum = 0;
  bool built = false;
  std::vector<CensusEntry> entries;

  [[nodiscard]] bool passed() const { return formula_sum == expected && (!built || built_sum == expected); }
};

namespace detail {

inline std::uint64_t weighted_square(std::uint64_t d, ModuleType t) { return t == ModuleType::M ? d * d : d * d / 2; }

}  // namespace detail

/// Sum over shapes of d^2 (type M) and d^2/2 (type Q) against 2^n r^n n!. With build_modules set,
/// every module is constructed and its dimension and type enter a second, numeric sum.
inline CensusReport semisimplicity_census(const ParameterSet& p, int n, bool build_modules, int jobs = 1) {
  if (separability_polynomial(p, n).vanishes)
    throw NotSeparate("separability product vanishes for n = " + std::to_string(n));
  CensusReport rep;
  rep.expected = pbw_dimension(p, n);
  rep.built = build_modules;
  for (const auto& shape : enumerate_multipartitions(p.flavor, p.m(), n)) {
    CensusEntry e;
    e.shape = shape;
    e.formula_dim = expected_dimension(shape);
    e.formula_type = shape.diagonal_count() % 2 == 0 ? ModuleType::M : ModuleType::Q;
    rep.formula_sum += detail::weighted_square(e.formula_dim, e.formula_type);
    rep.entries.push_back(std::move(e));
  }
  if (!build_modules) return rep;
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < rep.entries.size(); k += stride) {
      CycloModule mod = build_module(rep.entries[k].shape, p);
      rep.entries[k].built_dim = mod.total_dim;
      rep.entries[k].built_type = mod.type();
    }
  };
  const int workers = std::max(1, jobs);
  std::vector<std::future<void>> pending;
  for (int w = 1; w < workers; ++w) pending.push_back(std::async(std::launch::async, work, w, workers));
  work(0, static_cast<std::size_t>(workers));
  for (auto& f : pending) f.get();
  for (const auto& e : rep.entries) rep.built_sum += detail::weighted_square(e.built_dim, e.built_type);
  return rep;
}

struct CenterReport {
  Report residuals;
  /// Elementary symmetric values e_1..e_n of the q-eigenvalues, one vector per shape.
  std::vector<std::vector<Scalar>> scalars;
  std::vector<Multipartition> shapes;
  bool separates = false;

  [[nodiscard]] bool passed() const { return separates && residuals.passed(); }
};

/// Elementary symmetric functions of X_k + X_k^{-1} (x_k^2) act as scalars that tell the shapes apart.
inline CenterReport center_check(const ParameterSet& p, int n, const Real& tolerance) {
  if (separability_polynomial(p, n).vanishes)
    throw NotSeparate("separability product vanishes for n = " + std::to_string(n));
  CenterReport rep;
  rep.residuals.tolerance = tolerance;
  for (const auto& shape : enumerate_multipartitions(p.flavor, p.m(), n)) {
    CycloModule mod = build_module(shape, p);
    // e_j on every basis vector
    std::vector<std::vector<Scalar>> e(static_cast<std::size_t>(mod.total_dim));
    for (int v = 0; v < mod.total_dim; ++v) {
      std::vector<Scalar> el(static_cast<std::size_t>(n + 1));
      el[0] = Scalar(1);
      for (int k = 0; k < n; ++k) {
        const Scalar y = detail::q_of_eigenvalue(mod.x_eigen[k][v], p);
        for (int j = k + 1; j >= 1; --j) el[j] += y * el[j - 1];
      }
      e[v].assign(el.begin() + 1, el.end());
    }
    Real spread = 0;
    for (int v = 1; v < mod.total_dim; ++v)
      for (int j = 0; j < n; ++j) {
        Real s = abs(e[v][j] - e[0][j]);
        if (s > spread) spread = s;
      }
    rep.residuals.residual("scalar action on " + std::to_string(rep.shapes.size()), spread);
    rep.scalars.push_back(e[0]);
    rep.shapes.push_back(shape);
  }
  rep.separates = true;
  for (std::size_t a = 0; a < rep.scalars.size(); ++a)
    for (std::size_t b = a + 1; b < rep.scalars.size(); ++b) {
      bool differ = false;
      for (int j = 0; j < n; ++j)
        if (!approx_eq(rep.scalars[a][j], rep.scalars[b][j], p.precision)) differ = true;
      if (!differ) rep.separates = false;
    }
  return rep;
}

}  // namespace hcsa
