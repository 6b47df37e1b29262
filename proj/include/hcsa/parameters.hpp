#pragma once

#include <string>
#include <vector>

#include "hcsa/combinatorics.hpp"
#include "hcsa/scalar_field.hpp"

namespace hcsa {

enum class Variant { nondegenerate, degenerate };

inline std::string to_string(Variant v) { return v == Variant::nondegenerate ? "nondeg" : "deg"; }

inline Variant parse_variant(const std::string& text) {
  if (text == "nondeg" || text == "nondegenerate") return Variant::nondegenerate;
  if (text == "deg" || text == "degenerate") return Variant::degenerate;
  throw ParseError("unknown variant '" + text + "'");
}

/// Algebra parameters. Scalars keep their source text so dumps reproduce the exact input.
struct ParameterSet {
  Variant variant = Variant::nondegenerate;
  Flavor flavor = Flavor::zero;
  std::string q_text = "0";
  std::vector<std::string> Q_text;
  Precision precision;

  Scalar q;
  std::vector<Scalar> Q;

  [[nodiscard]] int m() const { return static_cast<int>(Q.size()); }
  [[nodiscard]] bool degenerate() const { return variant == Variant::degenerate; }

  /// q - q^{-1}; zero in the degenerate variant.
  [[nodiscard]] Scalar hecke_epsilon() const {
    if (degenerate()) return Scalar(0);
    return q - Scalar(1) / q;
  }

  /// Parses and validates. Sets the working precision to `bits` first.
  static ParameterSet make(Variant variant, Flavor flavor, const std::string& q_text,
                           const std::vector<std::string>& Q_text, unsigned bits = 256,
                           std::optional<Real> epsilon = std::nullopt) {
    ParameterSet p;
    p.precision = make_precision(bits, std::move(epsilon));
    p.variant = variant;
    p.flavor = flavor;
    p.q_text = variant == Variant::degenerate ? std::string("1") : q_text;
    p.Q_text = Q_text;
    p.q = parse_scalar(p.q_text);
    for (const auto& t : Q_text) p.Q.push_back(parse_scalar(t));
    p.validate();
    return p;
  }

  void validate() const {
    precision.validate();
    if (degenerate()) {
      if (flavor == Flavor::ss) throw InvalidParameter("the degenerate variant has flavors zero and s only");
      return;
    }
    const Precision& pr = precision;
    if (q.is_exact_zero() || approx_eq(q, Scalar(1), pr) || approx_eq(q, Scalar(-1), pr))
      throw InvalidParameter("q must avoid 0 and +-1");
    if (approx_eq(q * q, Scalar(-1), pr)) throw InvalidParameter("q + q^{-1} must be nonzero");
    for (const auto& x : Q)
      if (x.is_exact_zero()) throw InvalidParameter("Q entries must be nonzero");
  }
};

/// Integer power of a scalar (negative exponents allowed).
inline Scalar int_pow(const Scalar& x, int k) {
  Scalar base = k < 0 ? Scalar(1) / x : x;
  unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
  Scalar out(1);
  while (e) {
    if (e & 1u) out *= base;
    base *= base;
    e >>= 1u;
  }
  return out;
}

/// 2(qx + (qx)^{-1})/(q + q^{-1}); degenerate x(x+1).
inline Scalar qval(const Scalar& x, const ParameterSet& p) {
  if (p.degenerate()) return x * (x + Scalar(1));
  if (x.is_exact_zero()) throw DivisionByZero("qval at 0");
  Scalar denom = p.q + Scalar(1) / p.q;
  if (denom.is_exact_zero()) throw DivisionByZero("q + q^{-1} = 0");
  Scalar qx = p.q * x;
  return Scalar(2) * (qx + Scalar(1) / qx) / denom;
}

/// Root b of b + b^{-1} = qval(x) on the principal branch of the discriminant.
inline Scalar b_plus(const Scalar& x, const ParameterSet& p) {
  if (p.degenerate()) throw InvalidParameter("b_plus is defined for the nondegenerate variant only");
  Scalar h = qval(x, p) / Scalar(2);
  return h + sqrt_principal(h * h - Scalar(1));
}

/// Q attached to component c of the shape: strict labels 0, 0+ carry 1 and 0- carries -1
/// (degenerate: 0); ordinary component l carries Q_l.
inline Scalar component_parameter(const Multipartition& shape, int c, const ParameterSet& p) {
  if (shape.is_strict_component(c)) {
    if (p.degenerate()) return Scalar(0);
    if (shape.flavor() == Flavor::ss && c == 0) return Scalar(-1);
    return Scalar(1);
  }
  const int l = c - static_cast<int>(shape.strict().size());
  if (l >= p.m()) throw InvalidParameter("shape has more ordinary components than Q entries");
  return p.Q[l];
}

/// Q_l q^{2(j-i)}; degenerate Q_l + j - i.
inline Scalar residue(const Box& b, const Multipartition& shape, const ParameterSet& p) {
  const Scalar ql = component_parameter(shape, b.component, p);
  const int content = b.col - b.row;
  if (p.degenerate()) return ql + Scalar(content);
  return ql * int_pow(p.q, 2 * content);
}

struct ResidueSequence {
  std::vector<Scalar> values;
  std::vector<Scalar> qvalues;

  [[nodiscard]] int size() const { return static_cast<int>(values.size()); }
};

inline ResidueSequence make_residue_sequence(std::vector<Scalar> values, const ParameterSet& p) {
  ResidueSequence rs;
  rs.values = std::move(values);
  for (const auto& v : rs.values) rs.qvalues.push_back(qval(v, p));
  return rs;
}

/// Residues of the boxes holding 1..n.
inline ResidueSequence residue_sequence(const StandardTableau& t, const ParameterSet& p) {
  std::vector<Scalar> values;
  for (int k = 1; k <= t.size(); ++k) values.push_back(residue(t.box_of(k), t.shape(), p));
  return make_residue_sequence(std::move(values), p);
}

/// x ~ y: x = y or xy = q^{-2}; degenerate x = y or x + y + 1 = 0.
inline bool same_class(const Scalar& x, const Scalar& y, const ParameterSet& p) {
  const Precision& pr = p.precision;
  if (approx_eq(x, y, pr)) return true;
  if (p.degenerate()) return approx_eq(x + y + Scalar(1), Scalar(0), pr);
  return approx_eq(x * y * p.q * p.q, Scalar(1), pr);
}

/// (u, v) on which the cross-block coefficient vanishes:
/// v in {q^2 u, q^-2 u, u^-1, q^-4 u^-1}; degenerate u - v = +-1, u + v = 0, u + v = -2.
inline bool forbidden_pair(const Scalar& u, const Scalar& v, const ParameterSet& p) {
  const Precision& pr = p.precision;
  if (p.degenerate()) {
    return approx_eq(u - v, Scalar(1), pr) || approx_eq(u - v, Scalar(-1), pr) || approx_eq(u + v, Scalar(0), pr) ||
           approx_eq(u + v, Scalar(-2), pr);
  }
  const Scalar q2 = p.q * p.q;
  return approx_eq(v, q2 * u, pr) || approx_eq(v * q2, u, pr) || approx_eq(u * v, Scalar(1), pr) ||
         approx_eq(u * v * q2 * q2, Scalar(1), pr);
}

/// Consecutive q-residues differ for every standard tableau of the shape.
inline bool is_separate(const Multipartition& shape, const ParameterSet& p) {
  for (const auto& t : enumerate_standard_tableaux(shape)) {
    std::vector<Scalar> res;
    for (int k = 1; k <= t.size(); ++k) res.push_back(residue(t.box_of(k), shape, p));
    for (int k = 0; k + 1 < t.size(); ++k)
      if (same_class(res[k], res[k + 1], p)) return false;
  }
  return true;
}

struct SeparabilityValue {
  Scalar value;
  /// Some factor vanishes relative to the size of its terms.
  bool vanishes = false;
};

/// The separability product for n, evaluated factor by factor.
inline SeparabilityValue separability_polynomial(const ParameterSet& p, int n) {
  if (n < 1) throw InvalidParameter("separability product needs n >= 1");
  SeparabilityValue out{Scalar(1), false};
  const Precision& pr = p.precision;
  auto take = [&](const Scalar& a, const Scalar& b) {
    // factor a - b
    Scalar f = a - b;
    if (approx_eq(a, b, pr)) out.vanishes = true;
    out.value *= f;
  };
  const int m = p.m();
  if (p.degenerate()) {
    out.value = Scalar(static_cast<int>(factorial(n)));
    for (int i = 0; i < m; ++i) {
      for (int t = 3 - n; t <= n - 1; ++t) take(Scalar(2) * p.Q[i], Scalar(-t));
      for (int t = 1 - n; t <= n; ++t) take(p.Q[i], Scalar(-t));
    }
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int t = 1 - n; t <= n - 1; ++t) {
          take(p.Q[i] - p.Q[j], Scalar(-t));
          take(p.Q[i] + p.Q[j], Scalar(-t - 1));
        }
    return out;
  }
  const Scalar& q = p.q;
  for (int t = 1; t <= n; ++t) {
    Scalar q2t = int_pow(q, 2 * t);
    take(q2t, Scalar(1));
    if (p.flavor != Flavor::zero) take(q2t, Scalar(-1));
  }
  for (int i = 0; i < m; ++i) {
    const Scalar q2 = p.Q[i] * p.Q[i];
    for (int t = 3 - n; t <= n - 1; ++t) take(q2, int_pow(q, -2 * t));
    for (int t = 1 - n; t <= n; ++t) take(q2, int_pow(q, -4 * t));
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int t = 1 - n; t <= n - 1; ++t) {
        take(p.Q[i], p.Q[j] * int_pow(q, -2 * t));
        take(p.Q[i] * p.Q[j], int_pow(q, -2 * (t + 1)));
      }
  return out;
}

/// [P_n != 0] agrees with separateness of every shape of size n + 1.
inline bool verify_separate_equivalence(const ParameterSet& p, int n) {
  const bool nonzero = !separability_polynomial(p, n).vanishes;
  bool all_separate = true;
  for (const auto& shape : enumerate_multipartitions(p.flavor, p.m(), n + 1)) {
    if (!is_separate(shape, p)) {
      all_separate = false;
      break;
    }
  }
  return nonzero == all_separate;
}

}  // namespace hcsa
