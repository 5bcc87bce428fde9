#pragma once

#include <cmath>
#include <random>

#include "etatheta/mp.hpp"

namespace etatheta::testing {

inline Complex make(double re, double im, mpfr_prec_t p) {
  Complex c(p);
  mpfr_set_d(c.re.get(), re, MPFR_RNDN);
  mpfr_set_d(c.im.get(), im, MPFR_RNDN);
  return c;
}

inline Complex parse(const char* re, const char* im, mpfr_prec_t p) {
  Complex c(p);
  mpfr_set_str(c.re.get(), re, 10, MPFR_RNDN);
  mpfr_set_str(c.im.get(), im, 10, MPFR_RNDN);
  return c;
}

// Plain repeated multiplication with mpfr, four real products per step.
inline Complex slow_pow(const Complex& q, u64 e, mpfr_prec_t p) {
  Complex r(p);
  r.set_ui(1);
  mpfr_t x, y;
  mpfr_inits2(p + 16, x, y, static_cast<mpfr_ptr>(nullptr));
  for (u64 i = 0; i < e; ++i) {
    mpfr_mul(x, r.re.get(), q.re.get(), MPFR_RNDN);
    mpfr_mul(y, r.im.get(), q.im.get(), MPFR_RNDN);
    mpfr_sub(x, x, y, MPFR_RNDN);
    mpfr_mul(y, r.re.get(), q.im.get(), MPFR_RNDN);
    mpfr_fma(y, r.im.get(), q.re.get(), y, MPFR_RNDN);
    mpfr_set(r.re.get(), x, MPFR_RNDN);
    mpfr_set(r.im.get(), y, MPFR_RNDN);
  }
  mpfr_clears(x, y, static_cast<mpfr_ptr>(nullptr));
  return r;
}

/// tau uniformly-ish in the standard fundamental domain, Im(tau) <= 2.
inline Complex random_reduced_tau(std::mt19937_64& rng, mpfr_prec_t p) {
  std::uniform_real_distribution<double> re(-0.5, 0.5);
  const double x = re(rng);
  std::uniform_real_distribution<double> im(std::sqrt(1 - x * x), 2.0);
  return make(x, im(rng), p);
}

}  // namespace etatheta::testing
