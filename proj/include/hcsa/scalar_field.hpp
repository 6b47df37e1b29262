#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <string_view>

#include "hcsa/errors.hpp"

namespace hcsa {

/// Arbitrary precision real with a runtime-selected significand width.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

template <class R>
struct Complex {
  R re{0};
  R im{0};

  Complex() = default;
  Complex(R r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(R r, R i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    R r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    R d = o.re * o.re + o.im * o.im;
    if (d == 0) throw DivisionByZero("complex division by zero");
    R r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

  [[nodiscard]] bool is_exact_zero() const { return re == 0 && im == 0; }
};

using Scalar = Complex<Real>;
using DoubleComplex = Complex<double>;

template <class R>
Complex<R> conj(const Complex<R>& z) {
  return {z.re, -z.im};
}

/// |z|^2
template <class R>
R norm(const Complex<R>& z) {
  return z.re * z.re + z.im * z.im;
}

inline Real abs(const Scalar& z) { return boost::multiprecision::hypot(z.re, z.im); }
inline double abs(const DoubleComplex& z) { return std::hypot(z.re, z.im); }

inline Scalar imaginary_unit() { return {Real(0), Real(1)}; }

inline DoubleComplex to_double(const Scalar& z) {
  return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

/// Significand width and comparison tolerance.
struct Precision {
  unsigned bits = 256;
  Real epsilon;

  /// Throws InvalidParameter unless epsilon > 0 and epsilon >= 2^(8 - bits).
  void validate() const {
    if (bits < 16) throw InvalidParameter("precision must have at least 16 bits");
    if (!(epsilon > 0)) throw InvalidParameter("tolerance must be positive");
    Real floor = boost::multiprecision::ldexp(Real(1), 8 - static_cast<int>(bits));
    if (epsilon < floor) throw InvalidParameter("tolerance is finer than the working precision allows");
  }
};

inline unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// Sets the significand width used for every Real constructed afterwards.
inline void set_working_precision(unsigned bits) { Real::default_precision(digits10_for_bits(bits)); }

inline unsigned working_precision_bits() {
  Real probe(0);
  return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

/// Restores the previous working precision on scope exit.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits) : saved_(Real::default_precision()) { set_working_precision(bits); }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

/// Default: 256 bits, tolerance 2^-(bits/2). Sets the working precision as a side effect.
inline Precision make_precision(unsigned bits = 256, std::optional<Real> epsilon = std::nullopt) {
  set_working_precision(bits);
  Precision p;
  p.bits = bits;
  p.epsilon = epsilon ? *epsilon : boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits / 2));
  p.validate();
  return p;
}

/// Principal square root: Re r > 0, or Re r = 0 and Im r >= 0.
inline Scalar sqrt_principal(const Scalar& s) {
  using boost::multiprecision::sqrt;
  if (s.im == 0) {
    if (s.re >= 0) return {sqrt(s.re), Real(0)};
    return {Real(0), sqrt(-s.re)};
  }
  Real m = abs(s);
  Real r = sqrt((m + s.re) / 2);
  Real i = sqrt((m - s.re) / 2);
  if (s.im < 0) i = -i;
  return {r, i};
}

inline std::complex<double> sqrt_principal(std::complex<double> s) { return std::sqrt(s); }

/// |a - b| <= eps * (1 + max(|a|, |b|))
inline bool approx_eq(const Scalar& a, const Scalar& b, const Precision& prec) {
  Real ma = abs(a);
  Real mb = abs(b);
  Real scale = 1 + (ma > mb ? ma : mb);
  return abs(a - b) <= prec.epsilon * scale;
}

/// |a| <= eps * scale
inline bool is_negligible(const Scalar& a, const Real& scale, const Precision& prec) {
  return abs(a) <= prec.epsilon * scale;
}

namespace detail {

inline Real parse_real_literal(const std::string& text) {
  static const std::regex number(R"([0-9]+(\.[0-9]*)?([eE][+-]?[0-9]+)?|\.[0-9]+([eE][+-]?[0-9]+)?)");
  auto slash = text.find('/');
  std::string num = slash == std::string::npos ? text : text.substr(0, slash);
  std::string den = slash == std::string::npos ? std::string() : text.substr(slash + 1);
  bool negative = false;
  if (!num.empty() && (num[0] == '+' || num[0] == '-')) {
    negative = num[0] == '-';
    num.erase(0, 1);
  }
  if (!std::regex_match(num, number)) throw ParseError("malformed number: '" + text + "'");
  Real value(num);
  if (slash != std::string::npos) {
    if (!std::regex_match(den, number)) throw ParseError("malformed denominator: '" + text + "'");
    Real d(den);
    if (d == 0) throw ParseError("zero denominator: '" + text + "'");
    value /= d;
  }
  return negative ? Real(-value) : value;
}

}  // namespace detail

/// Accepts "p/q", decimals, and "a+bi" forms built from them ("i", "-2i", "1/2-3/4i").
inline Scalar parse_scalar(std::string_view input) {
  std::string text;
  for (char c : input)
    if (c != ' ' && c != '\t') text.push_back(c);
  if (text.empty()) throw ParseError("empty scalar");
  if (text.back() != 'i') return {detail::parse_real_literal(text), Real(0)};

  text.pop_back();
  // Split at the last sign that is not leading and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string real_part = split == std::string::npos ? std::string() : text.substr(0, split);
  std::string imag_part = split == std::string::npos ? text : text.substr(split);
  Real im;
  if (imag_part.empty() || imag_part == "+")
    im = 1;
  else if (imag_part == "-")
    im = -1;
  else
    im = detail::parse_real_literal(imag_part);
  Real re = real_part.empty() ? Real(0) : detail::parse_real_literal(real_part);
  return {re, im};
}

inline std::string to_decimal_string(const Real& x) {
  if (x == 0) return "0";
  return x.str(0, std::ios_base::scientific);
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& z) {
  os << z.re.str(20) << (z.im < 0 ? "-" : "+") << boost::multiprecision::abs(z.im).str(20) << "i";
  return os;
}

}  // namespace hcsa
