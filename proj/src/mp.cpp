#include "etatheta/mp.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <vector>

namespace etatheta {

const Complex& ComplexArith::narrowed(const Complex& x, Complex& slot, mpfr_prec_t prec) {
  if (x.prec() <= prec) return x;
  slot.set_prec(prec);
  mpfr_set(slot.re.get(), x.re.get(), MPFR_RNDN);
  mpfr_set(slot.im.get(), x.im.get(), MPFR_RNDN);
  return slot;
}

void ComplexArith::mul(Complex& out, const Complex& a0, const Complex& b0, mpfr_prec_t prec) {
  if (counts_) ++counts_->mul;
  const Complex& a = narrowed(a0, na_, prec);
  const Complex& b = narrowed(b0, nb_, prec);
  const mpfr_prec_t wide = prec + 8;
  mpfr_set_prec(t1_.get(), wide);
  mpfr_set_prec(t2_.get(), wide);
  mpfr_set_prec(t3_.get(), wide);
  mpfr_set_prec(t4_.get(), wide);
  // (x+yi)(t+ui): xt - yu, (x+y)(t+u) - xt - yu
  mpfr_mul(t1_.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2_.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(t3_.get(), a.re.get(), a.im.get(), MPFR_RNDN);
  mpfr_add(t4_.get(), b.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t3_.get(), t3_.get(), t4_.get(), MPFR_RNDN);
  mpfr_sub(t3_.get(), t3_.get(), t1_.get(), MPFR_RNDN);
  out.set_prec(prec);
  mpfr_sub(out.re.get(), t1_.get(), t2_.get(), MPFR_RNDN);
  mpfr_sub(out.im.get(), t3_.get(), t2_.get(), MPFR_RNDN);
}

void ComplexArith::sqr(Complex& out, const Complex& a0, mpfr_prec_t prec) {
  if (counts_) ++counts_->sqr;
  const Complex& a = narrowed(a0, na_, prec);
  const mpfr_prec_t wide = prec + 8;
  mpfr_set_prec(t1_.get(), wide);
  mpfr_set_prec(t2_.get(), wide);
  mpfr_set_prec(t3_.get(), wide);
  // (x+yi)^2 = (x^2 - y^2) + 2xy i
  mpfr_sqr(t1_.get(), a.re.get(), MPFR_RNDN);
  mpfr_sqr(t2_.get(), a.im.get(), MPFR_RNDN);
  mpfr_mul(t3_.get(), a.re.get(), a.im.get(), MPFR_RNDN);
  out.set_prec(prec);
  mpfr_sub(out.re.get(), t1_.get(), t2_.get(), MPFR_RNDN);
  mpfr_mul_2ui(out.im.get(), t3_.get(), 1, MPFR_RNDN);
}

void ComplexArith::cube(Complex& out, const Complex& a0, mpfr_prec_t prec) {
  if (counts_) ++counts_->cube;
  const Complex& a = narrowed(a0, na_, prec);
  const mpfr_prec_t wide = prec + 8;
  mpfr_set_prec(t1_.get(), wide);
  mpfr_set_prec(t2_.get(), wide);
  mpfr_set_prec(t3_.get(), wide);
  mpfr_set_prec(t4_.get(), wide);
  // x (x^2 - 3y^2) + y (3x^2 - y^2) i
  mpfr_sqr(t1_.get(), a.re.get(), MPFR_RNDN);
  mpfr_sqr(t2_.get(), a.im.get(), MPFR_RNDN);
  mpfr_mul_ui(t3_.get(), t2_.get(), 3, MPFR_RNDN);
  mpfr_sub(t3_.get(), t1_.get(), t3_.get(), MPFR_RNDN);
  mpfr_mul_ui(t4_.get(), t1_.get(), 3, MPFR_RNDN);
  mpfr_sub(t4_.get(), t4_.get(), t2_.get(), MPFR_RNDN);
  mpfr_mul(t1_.get(), a.re.get(), t3_.get(), MPFR_RNDN);
  mpfr_mul(t2_.get(), a.im.get(), t4_.get(), MPFR_RNDN);
  out.set_prec(prec);
  mpfr_set(out.re.get(), t1_.get(), MPFR_RNDN);
  mpfr_set(out.im.get(), t2_.get(), MPFR_RNDN);
}

void ComplexArith::sqr_mul(Complex& out, const Complex& a, const Complex& b, mpfr_prec_t prec) {
  sqr(tmp_, a, prec);
  mul(out, tmp_, b, prec);
}

void ComplexArith::accumulate(Complex& acc, const Complex& x, int sign) {
  if (sign >= 0) {
    mpfr_add(acc.re.get(), acc.re.get(), x.re.get(), MPFR_RNDN);
    mpfr_add(acc.im.get(), acc.im.get(), x.im.get(), MPFR_RNDN);
  } else {
    mpfr_sub(acc.re.get(), acc.re.get(), x.re.get(), MPFR_RNDN);
    mpfr_sub(acc.im.get(), acc.im.get(), x.im.get(), MPFR_RNDN);
  }
}

double log2_abs(const Complex& x) {
  const mpfr_prec_t p = 64;
  Real r(p), i(p);
  mpfr_set(r.get(), x.re.get(), MPFR_RNDN);
  mpfr_set(i.get(), x.im.get(), MPFR_RNDN);
  mpfr_hypot(r.get(), r.get(), i.get(), MPFR_RNDU);
  if (mpfr_zero_p(r.get())) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, r.get(), MPFR_RNDN);
  return std::log2(m) + static_cast<double>(e);
}

double log2_abs_diff(const Complex& x, const Complex& y) {
  const mpfr_prec_t p = std::max(x.prec(), y.prec()) + 16;
  Complex d(p);
  mpfr_sub(d.re.get(), x.re.get(), y.re.get(), MPFR_RNDN);
  mpfr_sub(d.im.get(), x.im.get(), y.im.get(), MPFR_RNDN);
  return log2_abs(d);
}

std::string to_decimal(const Real& x, int digits) {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, x.get());
  return buf.data();
}

std::string to_hex(const Real& x) {
  const int n = mpfr_snprintf(nullptr, 0, "%Ra", x.get());
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%Ra", x.get());
  return buf.data();
}

void widen_exponent_range() {
  static std::once_flag once;
  std::call_once(once, [] {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
  });
}

}  // namespace etatheta
