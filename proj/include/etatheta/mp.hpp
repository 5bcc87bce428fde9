#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "etatheta/numtheory.hpp"

namespace etatheta {

/// Owning wrapper around mpfr_t. Copies keep the source precision.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_prec_t prec() const noexcept { return mpfr_get_prec(v_); }
  /// Changes precision keeping the (rounded) value.
  void round_to(mpfr_prec_t prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

/// Complex operations performed, in the units of the cost model.
struct OpCounts {
  u64 mul = 0;  // 3 real multiplications
  u64 sqr = 0;  // 2 real squarings + 1 real multiplication
  u64 cube = 0;  // 2 real squarings + 2 real multiplications
  OpCounts& operator+=(const OpCounts& o) {
    mul += o.mul;
    sqr += o.sqr;
    cube += o.cube;
    return *this;
  }
  u64 total() const noexcept { return mul + sqr + cube; }
  bool operator==(const OpCounts&) const = default;
};

struct Complex {
  Real re, im;
  explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  mpfr_prec_t prec() const noexcept { return re.prec(); }
  void set_prec(mpfr_prec_t p) {
    mpfr_set_prec(re.get(), p);
    mpfr_set_prec(im.get(), p);
  }
  void round_to(mpfr_prec_t p) {
    re.round_to(p);
    im.round_to(p);
  }
  void set_ui(unsigned long x) {
    mpfr_set_ui(re.get(), x, MPFR_RNDN);
    mpfr_set_zero(im.get(), 1);
  }
};

/// Arithmetic at an explicit output precision, with scratch space reused
/// across calls. Operands wider than the output are rounded first so the
/// cost tracks the output precision. Outputs may alias inputs.
class ComplexArith {
 public:
  explicit ComplexArith(OpCounts* counts = nullptr) : counts_(counts) {}

  void mul(Complex& out, const Complex& a, const Complex& b, mpfr_prec_t prec);
  void sqr(Complex& out, const Complex& a, mpfr_prec_t prec);
  void cube(Complex& out, const Complex& a, mpfr_prec_t prec);
  /// out = a^2 * b
  void sqr_mul(Complex& out, const Complex& a, const Complex& b, mpfr_prec_t prec);

  /// acc += sign * x, at acc's precision.
  static void accumulate(Complex& acc, const Complex& x, int sign);

 private:
  const Complex& narrowed(const Complex& x, Complex& slot, mpfr_prec_t prec);

  OpCounts* counts_;
  Complex na_, nb_, tmp_;
  Real t1_, t2_, t3_, t4_;
};

/// |x - y| as an upper estimate on log2 (returns -inf for equal values).
double log2_abs_diff(const Complex& x, const Complex& y);
double log2_abs(const Complex& x);

/// Decimal text with `digits` significant digits.
std::string to_decimal(const Real& x, int digits);
/// Exact hex float in MPFR's %Ra form ("0x3p+0").
std::string to_hex(const Real& x);

/// Raises MPFR's exponent range to the maximum once per process.
void widen_exponent_range();

}  // namespace etatheta
