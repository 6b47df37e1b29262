#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hcsa/linalg.hpp"
#include "hcsa/parameters.hpp"
#include "hcsa/relations.hpp"
#include "hcsa/report.hpp"
#include "hcsa/svd.hpp"

namespace hcsa {

/// Normal monomial X^alpha C^beta T_w. Bit k of c_bits stands for C_{k+1}; perm indexes a PermutationTable.
struct PBWWord {
  std::vector<int> x_exponents;
  unsigned c_bits = 0;
  int perm = 0;

  auto operator<=>(const PBWWord&) const = default;
};

using AlgebraElement = std::map<PBWWord, Scalar>;

inline void add_term(AlgebraElement& e, const PBWWord& w, const Scalar& c) {
  if (c.is_exact_zero()) return;
  auto [it, fresh] = e.try_emplace(w, c);
  if (!fresh) it->second += c;
}

/// Drops coefficients at or below `tol`.
inline void prune(AlgebraElement& e, const Real& tol) {
  for (auto it = e.begin(); it != e.end();) {
    if (abs(it->second) <= tol)
      it = e.erase(it);
    else
      ++it;
  }
}

/// All permutations of {0..n-1} in lexicographic order, with lengths and left multiplication by s_i.
class PermutationTable {
 public:
  explicit PermutationTable(int n) : n_(n) {
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) w[k] = k;
    do {
      index_[w] = static_cast<int>(perms_.size());
      perms_.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    for (const auto& p : perms_) {
      int inv = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (p[a] > p[b]) ++inv;
      length_.push_back(inv);
    }
  }

  [[nodiscard]] int size() const { return static_cast<int>(perms_.size()); }
  [[nodiscard]] int identity() const { return 0; }
  [[nodiscard]] const std::vector<int>& perm(int idx) const { return perms_.at(idx); }
  [[nodiscard]] int length(int idx) const { return length_.at(idx); }
  [[nodiscard]] int index(const std::vector<int>& w) const { return index_.at(w); }

  /// s_i w for 0-based i (swaps the values i and i+1).
  [[nodiscard]] int left_simple(int i, int idx) const {
    std::vector<int> w = perms_.at(idx);
    for (auto& v : w) {
      if (v == i)
        v = i + 1;
      else if (v == i + 1)
        v = i;
    }
    return index_.at(w);
  }

  /// Some i with l(s_i w) < l(w), or -1 for the identity.
  [[nodiscard]] int left_descent(int idx) const {
    for (int i = 0; i + 1 < n_; ++i)
      if (length(left_simple(i, idx)) < length(idx)) return i;
    return -1;
  }

 private:
  int n_;
  std::vector<std::vector<int>> perms_;
  std::vector<int> length_;
  std::map<std::vector<int>, int> index_;
};

/// One letter of a free word. Index is 1-based.
struct Generator {
  enum class Kind { T, X, Xinv, C };
  Kind kind = Kind::T;
  int index = 1;
};

inline std::string to_string(const Generator& g) {
  switch (g.kind) {
    case Generator::Kind::T:
      return "T" + std::to_string(g.index);
    case Generator::Kind::X:
      return "X" + std::to_string(g.index);
    case Generator::Kind::Xinv:
      return "Xinv" + std::to_string(g.index);
    case Generator::Kind::C:
      return "C" + std::to_string(g.index);
  }
  return {};
}

/// Parses whitespace-separated letters such as "T1 X2 Xinv1 C2".
inline std::vector<Generator> parse_word(const std::string& text) {
  std::vector<Generator> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '*' || text[pos] == ',')) ++pos;
    if (pos == text.size()) break;
    Generator g;
    if (text.compare(pos, 4, "Xinv") == 0) {
      g.kind = Generator::Kind::Xinv;
      pos += 4;
    } else if (text[pos] == 'T' || text[pos] == 's') {
      g.kind = Generator::Kind::T;
      ++pos;
    } else if (text[pos] == 'X' || text[pos] == 'x') {
      g.kind = Generator::Kind::X;
      ++pos;
    } else if (text[pos] == 'C' || text[pos] == 'c') {
      g.kind = Generator::Kind::C;
      ++pos;
    } else {
      throw ParseError("unexpected character in word: '" + text.substr(pos, 1) + "'");
    }
    std::size_t end = pos;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    if (end == pos) throw ParseError("generator without index in word");
    g.index = std::stoi(text.substr(pos, end - pos));
    pos = end;
    out.push_back(g);
  }
  return out;
}

/// Left multiplication by generators on normal monomials of the affine algebra.
class AffineAlgebra {
 public:
  AffineAlgebra(const ParameterSet& p, int n) : p_(p), n_(n), perms_(n), eps_(p.hecke_epsilon()) {}

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const PermutationTable& perms() const { return perms_; }
  [[nodiscard]] const ParameterSet& params() const { return p_; }

  [[nodiscard]] PBWWord identity() const { return {std::vector<int>(static_cast<std::size_t>(n_), 0), 0, 0}; }

  void left_multiply_into(const Generator& g, const PBWWord& w, const Scalar& coeff, AlgebraElement& out) const {
    const int k = g.index - 1;
    if (k < 0 || k >= n_ || (g.kind == Generator::Kind::T && k + 1 >= n_))
      throw InvalidParameter("generator " + to_string(g) + " out of range");
    switch (g.kind) {
      case Generator::Kind::X: {
        PBWWord v = w;
        ++v.x_exponents[k];
        add_term(out, v, coeff);
        return;
      }
      case Generator::Kind::Xinv: {
        if (p_.degenerate()) throw InvalidParameter("x_k is not invertible in the degenerate algebra");
        PBWWord v = w;
        --v.x_exponents[k];
        add_term(out, v, coeff);
        return;
      }
      case Generator::Kind::C: {
        PBWWord v = w;
        Scalar c = coeff;
        // C_k X_k^a = X_k^{-a} C_k, degenerate c_k x_k^a = (-1)^a x_k^a c_k
        if (p_.degenerate()) {
          if (v.x_exponents[k] % 2 != 0) c = -c;
        } else {
          v.x_exponents[k] = -v.x_exponents[k];
        }
        if (clifford_left(k, v.c_bits)) c = -c;
        add_term(out, v, c);
        return;
      }
      case Generator::Kind::T:
        left_T(k, w, coeff, out);
        return;
    }
  }

  [[nodiscard]] AlgebraElement left_multiply(const Generator& g, const AlgebraElement& e) const {
    AlgebraElement out;
    for (const auto& [w, c] : e) left_multiply_into(g, w, c, out);
    return out;
  }

 private:
  /// Term X_i^a X_{i+1}^b (C_i C_{i+1})^cc T_i^t.
  struct LocalTerm {
    int a;
    int b;
    bool cc;
    bool t;
    Scalar coeff;
  };

  /// Multiplies C^bits on the left by C_k in place; returns true when the sign flips.
  static bool clifford_left(int k, unsigned& bits) {
    const bool flip = (__builtin_popcount(bits & ((1u << k) - 1u)) % 2) != 0;
    bits ^= 1u << k;
    return flip;
  }

  /// (C_i C_{i+1}) X_i^a X_{i+1}^b rewritten as sign * X_i^a' X_{i+1}^b' (C_i C_{i+1}).
  void cc_past_x(int& a, int& b, Scalar& c) const {
    if (p_.degenerate()) {
      if ((a + b) % 2 != 0) c = -c;
    } else {
      a = -a;
      b = -b;
    }
  }

  /// T_i X_i^a X_{i+1}^b in normal order, identical for every i.
  const std::vector<LocalTerm>& local(int a, int b) const {
    auto key = std::make_pair(a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<LocalTerm> out;
    auto shifted = [&](int da, int db, int sa, int sb) {
      // X_i^da X_{i+1}^db applied on the left of T_i X_i^sa X_{i+1}^sb
      for (const auto& t : local(sa, sb)) out.push_back({t.a + da, t.b + db, t.cc, t.t, t.coeff});
    };
    auto cc_term = [&](int ea, int eb, const Scalar& c) {
      // c * X-monomial sitting left of C_i C_{i+1}, given as the exponents before moving cc
      Scalar cf = c;
      cc_past_x(ea, eb, cf);
      out.push_back({ea, eb, true, false, cf});
    };
    if (a == 0 && b == 0) {
      out.push_back({0, 0, false, true, Scalar(1)});
    } else if (p_.degenerate()) {
      if (a > 0) {
        // s x_i = x_{i+1} s - 1 - c_i c_{i+1}
        shifted(0, 1, a - 1, b);
        out.push_back({a - 1, b, false, false, Scalar(-1)});
        cc_term(a - 1, b, Scalar(-1));
      } else {
        // s x_{i+1} = x_i s + 1 - c_i c_{i+1}
        shifted(1, 0, 0, b - 1);
        out.push_back({0, b - 1, false, false, Scalar(1)});
        cc_term(0, b - 1, Scalar(-1));
      }
    } else if (a > 0) {
      // T X_i = X_{i+1} T - eps X_{i+1} - eps C_i C_{i+1} X_i
      shifted(0, 1, a - 1, b);
      out.push_back({a - 1, b + 1, false, false, -eps_});
      cc_term(a, b, -eps_);
    } else if (a < 0) {
      // T X_i^{-1} = X_{i+1}^{-1} T + eps X_i^{-1} + eps X_{i+1}^{-1} C_i C_{i+1}
      shifted(0, -1, a + 1, b);
      out.push_back({a, b, false, false, eps_});
      int ea = a + 1, eb = b;
      Scalar cf = eps_;
      cc_past_x(ea, eb, cf);
      out.push_back({ea, eb - 1, true, false, cf});
    } else if (b > 0) {
      // T X_{i+1} = X_i T + eps (1 - C_i C_{i+1}) X_{i+1}
      shifted(1, 0, 0, b - 1);
      out.push_back({0, b, false, false, eps_});
      cc_term(0, b, -eps_);
    } else {
      // T X_{i+1}^{-1} = X_i^{-1} T - eps X_i^{-1} + eps X_i^{-1} C_i C_{i+1}
      shifted(-1, 0, 0, b + 1);
      out.push_back({-1, b + 1, false, false, -eps_});
      int ea = 0, eb = b + 1;
      Scalar cf = eps_;
      cc_past_x(ea, eb, cf);
      out.push_back({ea - 1, eb, true, false, cf});
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  /// T_i C_i^x C_{i+1}^y = sum coeff C_i^x' C_{i+1}^y' T_i^t.
  struct CliffordTerm {
    bool x;
    bool y;
    bool t;
    Scalar coeff;
  };

  [[nodiscard]] std::vector<CliffordTerm> t_past_c(bool x, bool y) const {
    if (!x && !y) return {{false, false, true, Scalar(1)}};
    if (x && !y) return {{false, true, true, Scalar(1)}};
    if (p_.degenerate()) {
      if (!x) return {{true, false, true, Scalar(1)}};
      return {{true, true, true, Scalar(-1)}};
    }
    if (!x) return {{true, false, true, Scalar(1)}, {true, false, false, -eps_}, {false, true, false, eps_}};
    return {{true, true, true, Scalar(-1)}, {true, true, false, eps_}, {false, false, false, eps_}};
  }

  /// Adds coeff * X^alpha C^bits T_i^t T_w.
  void emit_hecke(std::vector<int> alpha, unsigned bits, bool t, int i, int w, const Scalar& coeff,
                  AlgebraElement& out) const {
    if (!t) {
      add_term(out, PBWWord{std::move(alpha), bits, w}, coeff);
      return;
    }
    const int up = perms_.left_simple(i, w);
    if (perms_.length(up) > perms_.length(w)) {
      add_term(out, PBWWord{std::move(alpha), bits, up}, coeff);
      return;
    }
    // T_i T_w = T_{s_i w} + eps T_w when l(s_i w) < l(w)
    if (!eps_.is_exact_zero()) add_term(out, PBWWord{alpha, bits, w}, coeff * eps_);
    add_term(out, PBWWord{std::move(alpha), bits, up}, coeff);
  }

  void left_T(int i, const PBWWord& w, const Scalar& coeff, AlgebraElement& out) const {
    const unsigned bi = 1u << i;
    const unsigned bj = 1u << (i + 1);
    const bool x = (w.c_bits & bi) != 0;
    const bool y = (w.c_bits & bj) != 0;
    const unsigned rest = w.c_bits & ~(bi | bj);
    for (const auto& lt : local(w.x_exponents[i], w.x_exponents[i + 1])) {
      std::vector<int> alpha = w.x_exponents;
      alpha[i] = lt.a;
      alpha[i + 1] = lt.b;
      const Scalar c0 = coeff * lt.coeff;
      if (!lt.t) {
        // X^alpha (C_i C_{i+1})^cc C^beta T_w
        unsigned bits = w.c_bits;
        Scalar c = c0;
        if (lt.cc) {
          if (clifford_left(i + 1, bits)) c = -c;
          if (clifford_left(i, bits)) c = -c;
        }
        add_term(out, PBWWord{std::move(alpha), bits, w.perm}, c);
        continue;
      }
      // T_i only meets C_i and C_{i+1}; the ordered product keeps them in place
      for (const auto& ct : t_past_c(x, y)) {
        unsigned bits = rest | (ct.x ? bi : 0u) | (ct.y ? bj : 0u);
        Scalar c = c0 * ct.coeff;
        if (lt.cc) {
          if (clifford_left(i + 1, bits)) c = -c;
          if (clifford_left(i, bits)) c = -c;
        }
        emit_hecke(alpha, bits, ct.t, i, w.perm, c, out);
      }
    }
  }

  ParameterSet p_;
  int n_;
  PermutationTable perms_;
  Scalar eps_;
  mutable std::map<std::pair<int, int>, std::vector<LocalTerm>> memo_;
};

/// Coefficients g_0..g_r (g_r = 1) of the monic polynomial g with f = X^{-m} g (degenerate: g = f).
inline std::vector<Scalar> cyclotomic_monic(const ParameterSet& p) {
  std::vector<Scalar> g{Scalar(1)};
  auto times = [&g](const std::vector<Scalar>& h) {
    std::vector<Scalar> out(g.size() + h.size() - 1);
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = 0; b < h.size(); ++b) out[a + b] += g[a] * h[b];
    g = std::move(out);
  };
  for (const auto& Q : p.Q) {
    const Scalar qv = qval(Q, p);
    if (p.degenerate())
      times({-qv, Scalar(0), Scalar(1)});
    else
      times({Scalar(1), -qv, Scalar(1)});
  }
  if (p.degenerate()) {
    if (p.flavor == Flavor::s) times({Scalar(0), Scalar(1)});
  } else {
    if (p.flavor == Flavor::s) times({Scalar(-1), Scalar(1)});
    if (p.flavor == Flavor::ss) times({Scalar(-1), Scalar(0), Scalar(1)});
  }
  return g;
}

/// The cyclotomic quotient on its PBW basis X^alpha C^beta T_w, 0 <= alpha_k < r.
/// X_1 exponents reduce by the monic relation directly. Other out-of-range monomials are reduced by
/// rules read off from a finite window of the two-sided ideal, spanned by T_d g(X_1) X^a C^b T_v
/// with d running over minimal coset representatives.
class CyclotomicQuotient {
 public:
  CyclotomicQuotient(const ParameterSet& p, int n, int max_dim = 4096) : alg_(p, n), g_(cyclotomic_monic(p)) {
    if (n < 1) throw InvalidParameter("the quotient needs n >= 1");
    if (!p.degenerate() && n > 2) throw BudgetExceeded("nondegenerate regular representation limited to n <= 2");
    if (p.degenerate() && n > 3) throw BudgetExceeded("degenerate regular representation limited to n <= 3");
    r_ = static_cast<int>(g_.size()) - 1;
    const std::uint64_t expected =
        static_cast<std::uint64_t>(std::pow(2 * r_, n)) * static_cast<std::uint64_t>(alg_.perms().size());
    if (expected > static_cast<std::uint64_t>(max_dim)) throw BudgetExceeded("PBW dimension above the budget");
    const int bits = working_precision_bits();
    drop_ = Real(1);
    for (int k = 0; k < (3 * bits) / 4; ++k) drop_ /= 2;
    enumerate_basis();
    build_rules();
  }

  [[nodiscard]] int degree() const { return r_; }
  [[nodiscard]] int dim() const { return static_cast<int>(basis_.size()); }
  [[nodiscard]] int n() const { return alg_.n(); }
  [[nodiscard]] const std::vector<PBWWord>& basis() const { return basis_; }
  [[nodiscard]] const AffineAlgebra& affine() const { return alg_; }
  [[nodiscard]] const ParameterSet& params() const { return alg_.params(); }
  /// Largest basis coefficient left in ideal rows that carry no out-of-range monomial.
  [[nodiscard]] const Real& independence_residual() const { return independence_; }
  [[nodiscard]] int window() const { return window_; }

  [[nodiscard]] std::optional<int> basis_index(const PBWWord& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Coordinates in the PBW basis of an affine element.
  [[nodiscard]] std::vector<Scalar> coordinates(const AlgebraElement& e) const {
    std::vector<Scalar> out(basis_.size());
    for (const auto& [w, c] : reduce_x1(e)) {
      if (auto idx = basis_index(w)) {
        out[*idx] += c;
        continue;
      }
      auto it = rules_.find(w);
      if (it == rules_.end()) throw BudgetExceeded("no reduction rule for an out-of-range monomial");
      for (const auto& [j, x] : it->second) out[j] += c * x;
    }
    return out;
  }

  [[nodiscard]] AlgebraElement element(const std::vector<Scalar>& coords) const {
    AlgebraElement e;
    for (std::size_t k = 0; k < coords.size(); ++k) add_term(e, basis_[k], coords[k]);
    prune(e, drop_);
    return e;
  }

  /// Normal form of a free word, multiplied from the right end.
  [[nodiscard]] AlgebraElement normal_form(const std::vector<Generator>& word) const {
    if (r_ == 0) return {};
    AlgebraElement e;
    add_term(e, alg_.identity(), Scalar(1));
    std::vector<Scalar> coords = coordinates(e);
    for (auto it = word.rbegin(); it != word.rend(); ++it) coords = coordinates(alg_.left_multiply(*it, element(coords)));
    return element(coords);
  }

  /// Left multiplication matrix of a generator on the PBW basis.
  [[nodiscard]] Matrix left_matrix(const Generator& g) const {
    const int d = dim();
    Matrix m(d, d);
    for (int b = 0; b < d; ++b) {
      AlgebraElement prod;
      alg_.left_multiply_into(g, basis_[b], Scalar(1), prod);
      const auto col = coordinates(prod);
      for (int r = 0; r < d; ++r)
        if (abs(col[r]) > drop_) m.add(r, b, col[r]);
    }
    return m;
  }

  [[nodiscard]] std::vector<Generator> generators() const {
    std::vector<Generator> gens;
    for (int i = 1; i < n(); ++i) gens.push_back({Generator::Kind::T, i});
    for (int k = 1; k <= n(); ++k) {
      gens.push_back({Generator::Kind::X, k});
      if (!params().degenerate()) gens.push_back({Generator::Kind::Xinv, k});
      gens.push_back({Generator::Kind::C, k});
    }
    return gens;
  }

 private:
  [[nodiscard]] bool in_range(const PBWWord& w) const {
    for (int e : w.x_exponents)
      if (e < 0 || e >= r_) return false;
    return true;
  }

  void enumerate_basis() {
    const int n = alg_.n();
    if (r_ == 0) return;
    std::vector<int> alpha(static_cast<std::size_t>(n), 0);
    while (true) {
      for (unsigned bits = 0; bits < (1u << n); ++bits)
        for (int w = 0; w < alg_.perms().size(); ++w) {
          index_[PBWWord{alpha, bits, w}] = static_cast<int>(basis_.size());
          basis_.push_back(PBWWord{alpha, bits, w});
        }
      int k = n - 1;
      while (k >= 0 && ++alpha[k] == r_) alpha[k--] = 0;
      if (k < 0) break;
    }
  }

  /// X_1^a modulo g, as coefficients of 1, X_1, ..., X_1^{r-1}.
  const std::vector<Scalar>& x1_power(int a) const {
    if (auto it = powers_.find(a); it != powers_.end()) return it->second;
    std::vector<Scalar> v(static_cast<std::size_t>(r_));
    if (a >= 0 && a < r_) {
      v[a] = Scalar(1);
    } else if (a >= r_) {
      const auto& prev = x1_power(a - 1);
      const Scalar top = prev[r_ - 1];
      for (int k = r_ - 1; k >= 1; --k) v[k] = prev[k - 1];
      for (int k = 0; k < r_; ++k) v[k] -= top * g_[k];
    } else {
      if (alg_.params().degenerate() || g_[0].is_exact_zero())
        throw InvalidParameter("negative power of X_1 without an invertible constant term");
      const auto& next = x1_power(a + 1);
      // X^{-1} = -(g_1 + g_2 X + ... + X^{r-1}) / g_0
      const Scalar low = next[0];
      for (int k = 0; k + 1 < r_; ++k) v[k] = next[k + 1];
      for (int k = 0; k < r_; ++k) v[k] -= low * g_[k + 1] / g_[0];
    }
    return powers_.emplace(a, std::move(v)).first->second;
  }

  [[nodiscard]] AlgebraElement reduce_x1(const AlgebraElement& e) const {
    AlgebraElement out;
    for (const auto& [w, c] : e) {
      const int a = w.x_exponents[0];
      if (a >= 0 && a < r_) {
        add_term(out, w, c);
        continue;
      }
      const auto& v = x1_power(a);
      PBWWord u = w;
      for (int k = 0; k < r_; ++k) {
        if (v[k].is_exact_zero()) continue;
        u.x_exponents[0] = k;
        add_term(out, u, c * v[k]);
      }
    }
    return out;
  }

  void build_rules() {
    if (r_ == 0 || alg_.n() == 1) return;
    std::set<PBWWord> needed;
    int reach = 0;
    for (const auto& gen : generators())
      for (const auto& b : basis_) {
        AlgebraElement prod;
        alg_.left_multiply_into(gen, b, Scalar(1), prod);
        for (const auto& [w, c] : reduce_x1(prod))
          if (!in_range(w)) {
            needed.insert(w);
            for (int k = 1; k < alg_.n(); ++k)
              reach = std::max(reach, std::max(-w.x_exponents[k], w.x_exponents[k] - r_ + 1));
          }
      }
    if (needed.empty()) return;
    for (int extra = 0; extra <= 2 * r_ + 2; ++extra) {
      window_ = reach + extra;
      if (try_window(window_, needed)) return;
    }
    throw BudgetExceeded("ideal window too small to reduce every product");
  }

  /// Ideal elements T_d g(X_1) X_1^a X_2^e2 ... C^beta T_v with exponents inside the window.
  [[nodiscard]] std::vector<AlgebraElement> ideal_rows(int window) const {
    const int n = alg_.n();
    const bool deg = alg_.params().degenerate();
    const int lo = deg ? 0 : -window - r_;
    const int hi = deg ? window : window;
    const int elo = deg ? 0 : -window;
    const int ehi = r_ - 1 + window;
    std::vector<AlgebraElement> rows;
    std::vector<int> e(static_cast<std::size_t>(n - 1), elo);
    while (true) {
      for (int a = lo; a <= hi; ++a)
        for (unsigned bits = 0; bits < (1u << n); ++bits)
          for (int v = 0; v < alg_.perms().size(); ++v) {
            AlgebraElement base;
            for (int k = 0; k <= r_; ++k) {
              std::vector<int> alpha{a + k};
              alpha.insert(alpha.end(), e.begin(), e.end());
              add_term(base, PBWWord{alpha, bits, v}, g_[k]);
            }
            // d = s_j ... s_1 for j = 1..n-1
            AlgebraElement cur = base;
            for (int j = 1; j < n; ++j) {
              cur = alg_.left_multiply({Generator::Kind::T, j}, cur);
              rows.push_back(reduce_x1(cur));
            }
          }
      int k = n - 2;
      while (k >= 0 && ++e[k] > ehi) e[k--] = elo;
      if (k < 0) break;
    }
    return rows;
  }

  bool try_window(int window, const std::set<PBWWord>& needed) {
    using Row = std::map<int, Scalar>;
    const auto raw = ideal_rows(window);
    std::map<PBWWord, int> bad_index;
    std::vector<PBWWord> bad_words;
    const int d = dim();
    std::vector<Row> rows;
    Real scale = 0;
    for (const auto& elem : raw) {
      Row row;
      for (const auto& [w, c] : elem) {
        if (auto idx = basis_index(w)) {
          row[-1 - *idx] += c;
          continue;
        }
        auto [it, fresh] = bad_index.try_emplace(w, static_cast<int>(bad_words.size()));
        if (fresh) bad_words.push_back(w);
        row[it->second] += c;
      }
      for (const auto& [col, c] : row) scale = std::max(scale, abs(c));
      rows.push_back(std::move(row));
    }
    for (const auto& w : needed)
      if (!bad_index.count(w)) return false;
    const Real tol = drop_ * (scale > 1 ? scale : Real(1));
    auto clean = [&](Row& row) {
      for (auto it = row.begin(); it != row.end();)
        it = abs(it->second) <= tol ? row.erase(it) : std::next(it);
    };
    for (auto& row : rows) clean(row);

    // Forward elimination over out-of-range columns (non-negative keys), in column order.
    // Basis columns carry negative keys so each row's out-of-range part comes last in map order.
    const int nb = static_cast<int>(bad_words.size());
    std::vector<int> pivot_of(static_cast<std::size_t>(nb), -1);
    std::vector<char> used(rows.size(), 0);
    std::vector<std::vector<int>> holders(static_cast<std::size_t>(nb));
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      for (const auto& [col, c] : rows[r])
        if (col >= 0) holders[col].push_back(r);
    for (int col = 0; col < nb; ++col) {
      int best = -1;
      Real best_mag = tol;
      for (int r : holders[col]) {
        if (used[r]) continue;
        auto it = rows[r].find(col);
        if (it == rows[r].end()) continue;
        Real mag = abs(it->second);
        if (mag > best_mag) {
          best_mag = mag;
          best = r;
        }
      }
      if (best < 0) continue;
      used[best] = 1;
      pivot_of[col] = best;
      Row& prow = rows[best];
      const Scalar inv = Scalar(1) / prow.at(col);
      for (auto& [c2, x] : prow) x *= inv;
      prow.at(col) = Scalar(1);
      for (int r : holders[col]) {
        if (used[r]) continue;
        auto it = rows[r].find(col);
        if (it == rows[r].end()) continue;
        const Scalar factor = it->second;
        rows[r].erase(it);
        for (const auto& [c2, x] : prow) {
          if (c2 == col) continue;
          auto [jt, fresh] = rows[r].try_emplace(c2, -(factor * x));
          if (!fresh) jt->second -= factor * x;
          if (fresh && c2 >= 0) holders[c2].push_back(r);
        }
        clean(rows[r]);
      }
    }

    // Rows without out-of-range monomials would be relations among basis words.
    independence_ = 0;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (used[r]) continue;
      bool pure = true;
      for (const auto& [col, c] : rows[r])
        if (col >= 0) pure = false;
      if (!pure) continue;
      for (const auto& [col, c] : rows[r]) independence_ = std::max(independence_, abs(c));
    }

    // Back substitution, memoized, from the highest column down.
    std::map<int, std::optional<std::vector<Scalar>>> solved;
    std::function<const std::optional<std::vector<Scalar>>&(int)> solve = [&](int col) -> const std::optional<std::vector<Scalar>>& {
      if (auto it = solved.find(col); it != solved.end()) return it->second;
      std::optional<std::vector<Scalar>> out;
      if (pivot_of[col] >= 0) {
        std::vector<Scalar> v(static_cast<std::size_t>(d));
        bool ok = true;
        for (const auto& [c2, x] : rows[pivot_of[col]]) {
          if (c2 == col || abs(x) <= tol) continue;
          if (c2 < 0) {
            v[-1 - c2] -= x;
            continue;
          }
          const auto& sub = solve(c2);
          if (!sub) {
            ok = false;
            break;
          }
          for (int j = 0; j < d; ++j) v[j] -= x * (*sub)[j];
        }
        if (ok) out = std::move(v);
      }
      return solved.emplace(col, std::move(out)).first->second;
    };
    std::map<PBWWord, std::vector<std::pair<int, Scalar>>> rules;
    for (const auto& w : needed) {
      const auto& sol = solve(bad_index.at(w));
      if (!sol) return false;
      std::vector<std::pair<int, Scalar>> sparse;
      for (int j = 0; j < d; ++j)
        if (abs((*sol)[j]) > tol) sparse.emplace_back(j, (*sol)[j]);
      rules.emplace(w, std::move(sparse));
    }
    rules_ = std::move(rules);
    return true;
  }

  AffineAlgebra alg_;
  std::vector<Scalar> g_;
  int r_ = 0;
  int window_ = 0;
  Real drop_;
  Real independence_ = 0;
  std::vector<PBWWord> basis_;
  std::map<PBWWord, int> index_;
  std::map<PBWWord, std::vector<std::pair<int, Scalar>>> rules_;
  mutable std::map<int, std::vector<Scalar>> powers_;
};

/// Left-regular representation: one matrix per generator, in CyclotomicQuotient::generators() order.
struct RegularRepresentation {
  std::vector<Generator> generators;
  std::vector<Matrix> matrices;

  [[nodiscard]] const Matrix& of(Generator::Kind kind, int index) const {
    for (std::size_t k = 0; k < generators.size(); ++k)
      if (generators[k].kind == kind && generators[k].index == index) return matrices[k];
    throw InvalidParameter("generator not present in the representation");
  }
};

inline RegularRepresentation regular_representation(const CyclotomicQuotient& h) {
  RegularRepresentation rep;
  rep.generators = h.generators();
  for (const auto& g : rep.generators) rep.matrices.push_back(h.left_matrix(g));
  return rep;
}

/// Defining relations, f(X_1) = 0 and associativity on random basis pairs, checked on the regular representation.
inline Report verify_regular_representation(const CyclotomicQuotient& h, const RegularRepresentation& rr,
                                            const Real& tolerance, int trials = 20, std::uint64_t seed = 0) {
  Report rep;
  rep.tolerance = tolerance;
  const ParameterSet& p = h.params();
  const int n = h.n();
  if (h.dim() == 0) return rep;
  std::vector<Matrix> T, X, Xinv, C;
  for (int i = 1; i < n; ++i) T.push_back(rr.of(Generator::Kind::T, i));
  for (int k = 1; k <= n; ++k) {
    X.push_back(rr.of(Generator::Kind::X, k));
    if (!p.degenerate()) Xinv.push_back(rr.of(Generator::Kind::Xinv, k));
    C.push_back(rr.of(Generator::Kind::C, k));
  }
  check_relations(p, T, X, Xinv, C, rep);
  const auto g = cyclotomic_monic(p);
  Matrix acc(h.dim(), h.dim());
  Matrix power = Matrix::identity(h.dim());
  for (const auto& c : g) {
    acc = acc + c * power;
    power = X[0] * power;
  }
  rep.residual("f(X1)=0", max_abs(acc));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, h.dim() - 1);
  const auto& basis = h.basis();
  Real worst = 0;
  for (int t = 0; t < trials; ++t) {
    const PBWWord& a = basis[pick(rng)];
    const PBWWord& b = basis[pick(rng)];
    const PBWWord& c = basis[pick(rng)];
    auto word_of = [&](const PBWWord& w) {
      std::vector<Generator> out;
      for (int k = 0; k < n; ++k)
        for (int e = 0; e < w.x_exponents[k]; ++e) out.push_back({Generator::Kind::X, k + 1});
      for (int k = 0; k < n; ++k)
        if (w.c_bits & (1u << k)) out.push_back({Generator::Kind::C, k + 1});
      std::vector<Generator> tw;
      int perm = w.perm;
      while (true) {
        int i = h.affine().perms().left_descent(perm);
        if (i < 0) break;
        tw.push_back({Generator::Kind::T, i + 1});
        perm = h.affine().perms().left_simple(i, perm);
      }
      out.insert(out.end(), tw.begin(), tw.end());
      return out;
    };
    // a(bc) against (ab)c, the product ab expanded in the basis before multiplying by c
    auto wa = word_of(a), wb = word_of(b), wc = word_of(c);
    std::vector<Generator> abc = wa;
    abc.insert(abc.end(), wb.begin(), wb.end());
    abc.insert(abc.end(), wc.begin(), wc.end());
    const auto left = h.coordinates(h.normal_form(abc));
    auto ab = h.normal_form([&] {
      auto v = wa;
      v.insert(v.end(), wb.begin(), wb.end());
      return v;
    }());
    AlgebraElement acc2;
    for (const auto& [w, coeff] : ab) {
      auto v = word_of(w);
      v.insert(v.end(), wc.begin(), wc.end());
      for (const auto& [u, x] : h.normal_form(v)) add_term(acc2, u, coeff * x);
    }
    const auto right = h.coordinates(acc2);
    for (int k = 0; k < h.dim(); ++k) worst = std::max(worst, abs(left[k] - right[k]));
  }
  rep.residual("associativity", worst);
  rep.residual("basis independence", h.independence_residual());
  return rep;
}

struct OracleReport {
  int dim = 0;
  int rank = 0;
  Scalar P_value;
  bool P_vanishes = false;
  Real threshold = 0;
  std::vector<Real> singular_values;
  Report checks;

  [[nodiscard]] bool semisimple() const { return rank == dim; }
};

/// Numerical rank of G[a,b] = tr(L_a L_b) over the PBW basis.
inline OracleReport trace_form_rank(const ParameterSet& p, int n, const Real& tolerance, bool with_checks = true) {
  OracleReport rep;
  const auto sep = separability_polynomial(p, n);
  rep.P_value = sep.value;
  rep.P_vanishes = sep.vanishes;
  CyclotomicQuotient h(p, n);
  rep.dim = h.dim();
  rep.checks.tolerance = tolerance;
  if (rep.dim == 0) return rep;
  const RegularRepresentation rr = regular_representation(h);
  if (with_checks) rep.checks = verify_regular_representation(h, rr, tolerance);

  // L_b for every basis word, built from a shorter word by one generator on the left.
  const int d = h.dim();
  const auto& basis = h.basis();
  const auto& perms = h.affine().perms();
  std::vector<std::optional<Matrix>> L(static_cast<std::size_t>(d));
  std::function<const Matrix&(int)> left = [&](int b) -> const Matrix& {
    if (L[b]) return *L[b];
    PBWWord w = basis[b];
    Matrix m;
    bool done = false;
    for (int k = 0; k < n && !done; ++k)
      if (w.x_exponents[k] > 0) {
        --w.x_exponents[k];
        m = rr.of(Generator::Kind::X, k + 1) * left(*h.basis_index(w));
        done = true;
      }
    for (int k = 0; k < n && !done; ++k)
      if (w.c_bits & (1u << k)) {
        w.c_bits ^= 1u << k;
        m = rr.of(Generator::Kind::C, k + 1) * left(*h.basis_index(w));
        done = true;
      }
    if (!done) {
      const int i = perms.left_descent(w.perm);
      if (i < 0) {
        m = Matrix::identity(d);
      } else {
        w.perm = perms.left_simple(i, w.perm);
        m = rr.of(Generator::Kind::T, i + 1) * left(*h.basis_index(w));
      }
    }
    L[b] = std::move(m);
    return *L[b];
  };
  std::vector<Scalar> trace(static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c) {
    const Matrix& lc = left(c);
    for (int k = 0; k < d; ++k) trace[c] += lc.get(k, k);
  }
  // Row a of G is trace^T L_a. Odd operators have zero trace, so G splits into the
  // even-even and odd-odd blocks; each block goes through the Jacobi sweep on its own.
  std::vector<std::vector<Scalar>> g(static_cast<std::size_t>(d), std::vector<Scalar>(static_cast<std::size_t>(d)));
  for (int a = 0; a < d; ++a) {
    const Matrix& la = left(a);
    for (int c = 0; c < d; ++c)
      for (const auto& [b, x] : la.row(c)) g[a][b] += trace[c] * x;
  }
  std::vector<int> parts[2];
  for (int a = 0; a < d; ++a) parts[__builtin_popcount(basis[a].c_bits) % 2].push_back(a);
  Real cross = 0;
  for (int a : parts[0])
    for (int b : parts[1]) cross = std::max({cross, abs(g[a][b]), abs(g[b][a])});
  rep.checks.residual("trace form parity blocks", cross);
  for (const auto& part : parts) {
    std::vector<std::vector<Scalar>> cols;
    for (int b : part) {
      std::vector<Scalar> col;
      for (int a : part) col.push_back(g[a][b]);
      cols.push_back(std::move(col));
    }
    for (auto& s : singular_values(cols, p.precision)) rep.singular_values.push_back(std::move(s));
  }
  std::sort(rep.singular_values.begin(), rep.singular_values.end(), [](const Real& x, const Real& y) { return x > y; });
  rep.threshold = Real(d) * p.precision.epsilon * rep.singular_values.front();
  for (const auto& s : rep.singular_values)
    if (s > rep.threshold) ++rep.rank;
  return rep;
}

}  // namespace hcsa
