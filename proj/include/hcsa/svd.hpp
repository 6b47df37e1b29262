#pragma once

#include <algorithm>
#include <vector>

#include <mpfr.h>

#include "hcsa/scalar_field.hpp"

namespace hcsa {

namespace detail {

/// Complex column stored as separate real and imaginary parts, operated on in place.
struct RawColumn {
  std::vector<Real> re;
  std::vector<Real> im;
};

inline mpfr_ptr raw(Real& x) { return x.backend().data(); }

}  // namespace detail

/// Singular values of a dense complex matrix given by columns (one-sided Jacobi), descending.
/// The inner loops use mpfr directly so no temporaries are allocated per element.
inline std::vector<Real> singular_values(const std::vector<std::vector<Scalar>>& cols, const Precision& pr,
                                         int max_sweeps = 80) {
  const int nc = static_cast<int>(cols.size());
  if (nc == 0) return {};
  const int nr = static_cast<int>(cols.front().size());
  std::vector<detail::RawColumn> a(static_cast<std::size_t>(nc));
  for (int j = 0; j < nc; ++j) {
    a[j].re.reserve(static_cast<std::size_t>(nr));
    a[j].im.reserve(static_cast<std::size_t>(nr));
    for (const auto& z : cols[j]) {
      a[j].re.push_back(z.re);
      a[j].im.push_back(z.im);
    }
  }
  Real alpha, beta, gre, gim, t0, t1;
  const mpfr_rnd_t rnd = MPFR_RNDN;
  auto sqnorm = [&](detail::RawColumn& c, Real& out) {
    mpfr_set_zero(detail::raw(out), 1);
    for (int k = 0; k < nr; ++k) {
      mpfr_fma(detail::raw(out), detail::raw(c.re[k]), detail::raw(c.re[k]), detail::raw(out), rnd);
      mpfr_fma(detail::raw(out), detail::raw(c.im[k]), detail::raw(c.im[k]), detail::raw(out), rnd);
    }
  };
  std::vector<Real> norms(static_cast<std::size_t>(nc));
  for (int j = 0; j < nc; ++j) sqnorm(a[j], norms[j]);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < nc; ++p)
      for (int q = p + 1; q < nc; ++q) {
        auto& u = a[p];
        auto& v = a[q];
        // gamma = <u, v> = sum conj(u) v
        mpfr_set_zero(detail::raw(gre), 1);
        mpfr_set_zero(detail::raw(gim), 1);
        for (int k = 0; k < nr; ++k) {
          mpfr_fma(detail::raw(gre), detail::raw(u.re[k]), detail::raw(v.re[k]), detail::raw(gre), rnd);
          mpfr_fma(detail::raw(gre), detail::raw(u.im[k]), detail::raw(v.im[k]), detail::raw(gre), rnd);
          mpfr_fma(detail::raw(gim), detail::raw(u.re[k]), detail::raw(v.im[k]), detail::raw(gim), rnd);
          mpfr_fms(detail::raw(t0), detail::raw(u.im[k]), detail::raw(v.re[k]), detail::raw(gim), rnd);
          mpfr_neg(detail::raw(gim), detail::raw(t0), rnd);
        }
        alpha = norms[p];
        beta = norms[q];
        const Real g = hypot(gre, gim);
        if (g == 0 || g <= pr.epsilon * sqrt(alpha * beta)) continue;
        rotated = true;
        // v scaled by conj(gamma)/|gamma| makes the pair's inner product real and positive
        Real ph_re = gre / g;
        Real ph_im = -gim / g;
        const Real zeta = (beta - alpha) / (2 * g);
        const Real t = (zeta >= 0 ? Real(1) : Real(-1)) / (abs(zeta) + sqrt(1 + zeta * zeta));
        Real c = 1 / sqrt(1 + t * t);
        Real s = c * t;
        Real wre, wim;
        for (int k = 0; k < nr; ++k) {
          // w = v * phase
          mpfr_mul(detail::raw(wre), detail::raw(v.re[k]), detail::raw(ph_re), rnd);
          mpfr_fms(detail::raw(wre), detail::raw(v.im[k]), detail::raw(ph_im), detail::raw(wre), rnd);
          mpfr_neg(detail::raw(wre), detail::raw(wre), rnd);
          mpfr_mul(detail::raw(wim), detail::raw(v.re[k]), detail::raw(ph_im), rnd);
          mpfr_fma(detail::raw(wim), detail::raw(v.im[k]), detail::raw(ph_re), detail::raw(wim), rnd);
          // u' = c u - s w, v' = s u + c w
          mpfr_mul(detail::raw(t0), detail::raw(u.re[k]), detail::raw(s), rnd);
          mpfr_fma(detail::raw(t0), detail::raw(wre), detail::raw(c), detail::raw(t0), rnd);
          mpfr_mul(detail::raw(t1), detail::raw(u.re[k]), detail::raw(c), rnd);
          mpfr_fms(detail::raw(u.re[k]), detail::raw(wre), detail::raw(s), detail::raw(t1), rnd);
          mpfr_neg(detail::raw(u.re[k]), detail::raw(u.re[k]), rnd);
          mpfr_set(detail::raw(v.re[k]), detail::raw(t0), rnd);
          mpfr_mul(detail::raw(t0), detail::raw(u.im[k]), detail::raw(s), rnd);
          mpfr_fma(detail::raw(t0), detail::raw(wim), detail::raw(c), detail::raw(t0), rnd);
          mpfr_mul(detail::raw(t1), detail::raw(u.im[k]), detail::raw(c), rnd);
          mpfr_fms(detail::raw(u.im[k]), detail::raw(wim), detail::raw(s), detail::raw(t1), rnd);
          mpfr_neg(detail::raw(u.im[k]), detail::raw(u.im[k]), rnd);
          mpfr_set(detail::raw(v.im[k]), detail::raw(t0), rnd);
        }
        sqnorm(u, norms[p]);
        sqnorm(v, norms[q]);
      }
    if (!rotated) break;
  }
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(nc));
  for (const auto& x : norms) out.push_back(sqrt(x));
  std::sort(out.begin(), out.end(), [](const Real& x, const Real& y) { return x > y; });
  return out;
}

}  // namespace hcsa
