#include <catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "hcsa/linalg.hpp"
#include "hcsa/scalar_field.hpp"

using namespace hcsa;

namespace {

Precision default_precision() { return make_precision(); }

Scalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-999, 999);
  std::uniform_int_distribution<int> den(1, 97);
  return {Real(num(rng)) / den(rng), Real(num(rng)) / den(rng)};
}

}  // namespace

TEST_CASE("sqrt_principal picks the principal branch") {
  const Precision pr = default_precision();
  CHECK(approx_eq(sqrt_principal(Scalar(4)), Scalar(2), pr));
  CHECK(approx_eq(sqrt_principal(Scalar(-1)), imaginary_unit(), pr));
  CHECK(sqrt_principal(Scalar(0)).is_exact_zero());

  const Scalar r2 = sqrt_principal(Scalar(2));
  CHECK(r2.re.str(20) == "1.4142135623730950488");
  CHECK(approx_eq(r2 * r2, Scalar(2), pr));
}

TEST_CASE("sqrt_principal matches std::sqrt and squares back") {
  const Precision pr = default_precision();
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const Scalar s = random_scalar(rng);
    const Scalar r = sqrt_principal(s);
    CHECK(abs(r * r - s) <= pr.epsilon * (1 + abs(s)));
    const bool principal = r.re > 0 || (r.re == 0 && r.im >= 0);
    CHECK(principal);
    const auto ref = std::sqrt(std::complex<double>(s.re.convert_to<double>(), s.im.convert_to<double>()));
    CHECK(std::abs(ref - std::complex<double>(r.re.convert_to<double>(), r.im.convert_to<double>())) < 1e-9);
  }
}

TEST_CASE("sqrt of a square is plus or minus the input") {
  const Precision pr = default_precision();
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Scalar x = random_scalar(rng);
    const Scalar r = sqrt_principal(x * x);
    CHECK((approx_eq(r, x, pr) || approx_eq(r, -x, pr)));
  }
}

TEST_CASE("approx_eq uses a relative tolerance") {
  const Precision pr = default_precision();
  CHECK(approx_eq(Scalar(1), Scalar(1), pr));
  CHECK(approx_eq(Scalar(1), Scalar(1) + Scalar(Real(2) * pr.epsilon), pr));
  CHECK_FALSE(approx_eq(Scalar(1), Scalar(1) + Scalar(Real(3) * pr.epsilon), pr));
  const Scalar q = parse_scalar("3/2");
  CHECK(approx_eq(q + Scalar(1) / q, parse_scalar("13/6"), pr));
}

TEST_CASE("parse_scalar accepts rationals, decimals and complex forms") {
  const Precision pr = default_precision();
  CHECK(approx_eq(parse_scalar("3/2"), Scalar(Real("1.5")), pr));
  CHECK(approx_eq(parse_scalar("-1"), Scalar(-1), pr));
  CHECK(approx_eq(parse_scalar("0.25+0.5i"), Scalar(Real("0.25"), Real("0.5")), pr));
  CHECK(approx_eq(parse_scalar("i"), imaginary_unit(), pr));
  CHECK(approx_eq(parse_scalar("1/2-3/4i"), Scalar(Real(1) / 2, Real(-3) / 4), pr));
  CHECK(approx_eq(parse_scalar("1e-3"), Scalar(Real(1) / 1000), pr));
  CHECK(approx_eq(parse_scalar("2.5e+1-1e0i"), Scalar(Real(25), Real(-1)), pr));
  CHECK_THROWS_AS(parse_scalar(""), ParseError);
  CHECK_THROWS_AS(parse_scalar("abc"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1//2"), ParseError);
}

TEST_CASE("one third is exact to the working precision") {
  make_precision(256);
  const Scalar third = parse_scalar("1/3");
  CHECK(abs(third * Scalar(3) - Scalar(1)) <= boost::multiprecision::ldexp(Real(1), -250));
  CHECK(working_precision_bits() >= 256);
}

TEST_CASE("field axioms hold on random triples") {
  const Precision pr = default_precision();
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    const Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK(approx_eq((a + b) + c, a + (b + c), pr));
    CHECK(approx_eq((a * b) * c, a * (b * c), pr));
    CHECK(approx_eq(a * (b + c), a * b + a * c, pr));
    CHECK(approx_eq(a * b, b * a, pr));
    if (!a.is_exact_zero()) CHECK(approx_eq(a * (Scalar(1) / a), Scalar(1), pr));
    // against double-precision complex arithmetic
    const std::complex<double> da(a.re.convert_to<double>(), a.im.convert_to<double>());
    const std::complex<double> db(b.re.convert_to<double>(), b.im.convert_to<double>());
    const auto prod = to_double(a * b);
    CHECK(std::abs(std::complex<double>(prod.re, prod.im) - da * db) <= 1e-12 * (1 + std::abs(da * db)));
  }
}

TEST_CASE("division by zero throws") { CHECK_THROWS_AS(Scalar(1) / Scalar(0), DivisionByZero); }

TEST_CASE("precision validation") {
  CHECK_THROWS_AS(make_precision(256, Real(0)), InvalidParameter);
  CHECK_THROWS_AS(make_precision(64, boost::multiprecision::ldexp(Real(1), -100)), InvalidParameter);
  const Precision p = make_precision(128);
  CHECK(p.bits == 128);
  CHECK(p.epsilon == boost::multiprecision::ldexp(Real(1), -64));
  CHECK(make_precision().epsilon == boost::multiprecision::ldexp(Real(1), -128));
  CHECK(working_precision_bits() >= 128);
  make_precision();
}

TEST_CASE("PrecisionGuard restores the previous width") {
  make_precision(256);
  const unsigned before = working_precision_bits();
  {
    PrecisionGuard guard(512);
    CHECK(working_precision_bits() >= 512);
  }
  CHECK(working_precision_bits() == before);
}

TEST_CASE("decimal strings round-trip bit for bit") {
  make_precision();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const Scalar z = random_scalar(rng) / Scalar(7);
    const Real back = detail::parse_real_literal(to_decimal_string(z.re));
    CHECK(back == z.re);
  }
}

TEST_CASE("sparse matrix arithmetic agrees with a dense reference") {
  make_precision();
  std::mt19937_64 rng(9);
  const int d = 5;
  std::vector<std::vector<Scalar>> a(d, std::vector<Scalar>(d)), b(d, std::vector<Scalar>(d));
  Matrix ma(d, d), mb(d, d);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      if (coin(rng) == 0) {
        a[r][c] = random_scalar(rng);
        ma.set(r, c, a[r][c]);
      }
      if (coin(rng) == 0) {
        b[r][c] = random_scalar(rng);
        mb.set(r, c, b[r][c]);
      }
    }
  const Matrix prod = ma * mb;
  Real worst = 0;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      Scalar s;
      for (int k = 0; k < d; ++k) s += a[r][k] * b[k][c];
      worst = std::max(worst, abs(s - prod.get(r, c)));
    }
  CHECK(worst <= Real("1e-60"));
  CHECK(max_abs_difference(ma.transpose().transpose(), ma) == 0);
}

TEST_CASE("null space of a rank-deficient system") {
  const Precision pr = make_precision();
  // rows (1,2,3), (2,4,6), (0,1,1): rank 2, kernel spanned by (-1,-1,1)
  std::vector<std::vector<Scalar>> rows = {{Scalar(1), Scalar(2), Scalar(3)},
                                           {Scalar(2), Scalar(4), Scalar(6)},
                                           {Scalar(0), Scalar(1), Scalar(1)}};
  const auto kernel = null_space(rows, 3, pr.epsilon);
  REQUIRE(kernel.size() == 1);
  const auto& v = kernel.front();
  for (const auto& row : rows) {
    Scalar s;
    for (int k = 0; k < 3; ++k) s += row[k] * v[k];
    CHECK(abs(s) <= pr.epsilon);
  }
}
