#pragma once

#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "hcsa/linalg.hpp"

namespace hcsa {

/// Generators of a finite-dimensional supermodule in a basis where some even generators are diagonal.
struct SuperModuleView {
  int dim = 0;
  std::vector<int> parity;
  /// Diagonal even generators, one eigenvalue list each.
  std::vector<const std::vector<Scalar>*> diagonal;
  std::vector<const Matrix*> even;
  std::vector<const Matrix*> odd;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

/// Dimension of the space of homogeneous operators E (even when `odd_part` is false) with
/// E G = G E for even generators and E G = (-1)^{|E|} G E for odd ones.
/// Support is first cut down to pairs with equal diagonal eigenvalues, then the odd-generator
/// constraints are solved per connected component, then the remaining even generators couple components.
inline int supercommutant_dimension(const SuperModuleView& m, bool odd_part, const Precision& pr) {
  const int d = m.dim;
  // Classes of equal joint diagonal eigenvalues.
  std::vector<int> cls(static_cast<std::size_t>(d), -1);
  std::vector<int> reps;
  for (int a = 0; a < d; ++a) {
    for (std::size_t c = 0; c < reps.size() && cls[a] < 0; ++c) {
      bool same = true;
      for (const auto* diag : m.diagonal)
        if (!approx_eq((*diag)[a], (*diag)[reps[c]], pr)) {
          same = false;
          break;
        }
      if (same) cls[a] = static_cast<int>(c);
    }
    if (cls[a] < 0) {
      cls[a] = static_cast<int>(reps.size());
      reps.push_back(a);
    }
  }
  std::vector<std::vector<int>> members(reps.size());
  for (int a = 0; a < d; ++a) members[cls[a]].push_back(a);

  detail::DisjointSets comp(d);
  for (int a = 0; a < d; ++a) comp.unite(a, reps[cls[a]]);
  for (const auto* g : m.odd)
    for (int r = 0; r < d; ++r)
      for (const auto& e : g->row(r)) comp.unite(r, e.first);

  // Unknowns E[a][b] grouped by component.
  std::map<int, std::vector<std::pair<int, int>>> unknowns;
  for (int a = 0; a < d; ++a)
    for (int b : members[cls[a]])
      if ((m.parity[a] ^ m.parity[b]) == (odd_part ? 1 : 0)) unknowns[comp.find(a)].emplace_back(a, b);

  std::vector<Matrix> odd_t;
  for (const auto* g : m.odd) odd_t.push_back(g->transpose());
  const Scalar sign = odd_part ? Scalar(-1) : Scalar(1);

  // Null vectors of the odd-generator constraints, as sparse matrices.
  std::vector<Matrix> local_basis;
  for (const auto& [root, vars] : unknowns) {
    const int nv = static_cast<int>(vars.size());
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t gi = 0; gi < m.odd.size(); ++gi) {
      const Matrix& g = *m.odd[gi];
      const Matrix& gt = odd_t[gi];
      std::map<std::pair<int, int>, std::vector<std::pair<int, Scalar>>> eqs;
      for (int v = 0; v < nv; ++v) {
        const auto [a, b] = vars[v];
        // (E G)[a][c] gets E[a][b] G[b][c]
        for (const auto& [c, x] : g.row(b)) eqs[{a, c}].emplace_back(v, x);
        // (G E)[r][b] gets G[r][a] E[a][b]
        for (const auto& [r, x] : gt.row(a)) eqs[{r, b}].emplace_back(v, -(sign * x));
      }
      for (auto& [key, terms] : eqs) {
        std::vector<Scalar> row(static_cast<std::size_t>(nv));
        for (auto& [v, x] : terms) row[v] += x;
        rows.push_back(std::move(row));
      }
    }
    for (auto& kvec : null_space(std::move(rows), nv, pr.epsilon)) {
      Matrix e(d, d);
      for (int v = 0; v < nv; ++v)
        if (!kvec[v].is_exact_zero()) e.set(vars[v].first, vars[v].second, kvec[v]);
      local_basis.push_back(std::move(e));
    }
  }
  const int y = static_cast<int>(local_basis.size());
  if (m.even.empty() || y == 0) return y;

  // Stage two: E = sum_j y_j B_j must commute with the remaining even generators.
  EchelonBasis<Scalar, Real> basis(y, pr.epsilon);
  for (const auto* g : m.even) {
    std::map<std::pair<int, int>, std::vector<Scalar>> eqs;
    for (int j = 0; j < y; ++j) {
      Matrix diff = local_basis[j] * *g - *g * local_basis[j];
      for (int r = 0; r < d; ++r)
        for (const auto& [c, x] : diff.row(r)) {
          auto& row = eqs[{r, c}];
          if (row.empty()) row.resize(static_cast<std::size_t>(y));
          row[j] += x;
        }
    }
    for (auto& [key, row] : eqs) {
      basis.insert(std::move(row));
      if (basis.rank() == y) return 0;
    }
  }
  return y - basis.rank();
}

}  // namespace hcsa
