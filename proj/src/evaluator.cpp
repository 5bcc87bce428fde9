#include "etatheta/evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "json.hpp"

#include "etatheta/bsgs.hpp"
#include "etatheta/error.hpp"
#include "etatheta/modcount.hpp"

namespace etatheta {

std::string_view to_string(Function f) noexcept {
  switch (f) {
    case Function::Eta: return "eta";
    case Function::Theta0: return "theta0";
    case Function::Theta1: return "theta1";
    case Function::Theta2: return "theta2";
    case Function::ThetaAll: return "theta-all";
  }
  return "?";
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::ClassicalAS: return "classical";
    case Method::OptimizedAS: return "optimized";
    case Method::BSGS: return "bsgs";
    case Method::Auto: return "auto";
  }
  return "?";
}

namespace {

std::string lowered(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = ch == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

Function parse_function(std::string_view name) {
  const std::string s = lowered(name);
  for (Function f : {Function::Eta, Function::Theta0, Function::Theta1, Function::Theta2, Function::ThetaAll}) {
    if (s == to_string(f)) return f;
  }
  throw error(errc::invalid_argument, "unknown function '" + std::string(name) + "'");
}

Method parse_method(std::string_view name) {
  const std::string s = lowered(name);
  for (Method m : {Method::ClassicalAS, Method::OptimizedAS, Method::BSGS, Method::Auto}) {
    if (s == to_string(m)) return m;
  }
  throw error(errc::invalid_argument, "unknown method '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- tau, q

namespace {

long long checked_lin(long long x, long long k, long long y) {
  long long t = 0, r = 0;
  if (__builtin_mul_overflow(x, k, &t) || __builtin_add_overflow(t, y, &r)) {
    throw error(errc::invalid_argument, "reduction matrix overflows 64 bits");
  }
  return r;
}

}  // namespace

Reduction reduce_tau(const Complex& tau) {
  if (mpfr_sgn(tau.im.get()) <= 0) throw error(errc::not_upper_half_plane, "Im(tau) must be positive");
  const mpfr_prec_t p = tau.prec();
  Reduction red;
  red.tau = tau;
  Real n(p), norm(p), t(p);
  for (int iter = 0; iter < 100000; ++iter) {
    mpfr_round(n.get(), red.tau.re.get());
    if (!mpfr_zero_p(n.get())) {
      if (!mpfr_fits_slong_p(n.get(), MPFR_RNDN)) throw error(errc::invalid_argument, "Re(tau) too large");
      const long long k = mpfr_get_si(n.get(), MPFR_RNDN);
      mpfr_sub(red.tau.re.get(), red.tau.re.get(), n.get(), MPFR_RNDN);
      // [[1,-k],[0,1]] * M
      red.a = checked_lin(red.c, -k, red.a);
      red.b = checked_lin(red.d, -k, red.b);
    }
    mpfr_sqr(norm.get(), red.tau.re.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), red.tau.im.get(), MPFR_RNDN);
    mpfr_add(norm.get(), norm.get(), t.get(), MPFR_RNDN);
    if (mpfr_cmp_ui(norm.get(), 1) >= 0) return red;
    // tau -> -1/tau = (-re + i im)/|tau|^2
    mpfr_neg(red.tau.re.get(), red.tau.re.get(), MPFR_RNDN);
    mpfr_div(red.tau.re.get(), red.tau.re.get(), norm.get(), MPFR_RNDN);
    mpfr_div(red.tau.im.get(), red.tau.im.get(), norm.get(), MPFR_RNDN);
    // [[0,-1],[1,0]] * M
    const long long a = red.a, b = red.b;
    red.a = -red.c;
    red.b = -red.d;
    red.c = a;
    red.d = b;
  }
  throw error(errc::invalid_argument, "tau reduction did not terminate");
}

namespace {

void exp_complex(Complex& out, const Real& re, const Real& im, mpfr_prec_t prec) {
  const mpfr_prec_t w = prec + 16;
  Real mag(w), s(w), c(w);
  mpfr_exp(mag.get(), re.get(), MPFR_RNDN);
  mpfr_sin_cos(s.get(), c.get(), im.get(), MPFR_RNDN);
  out.set_prec(prec);
  mpfr_mul(out.re.get(), mag.get(), c.get(), MPFR_RNDN);
  mpfr_mul(out.im.get(), mag.get(), s.get(), MPFR_RNDN);
}

double log2_of_exp(const Real& x) {
  // x / ln 2, safe for |x| far beyond the double exponent range of e^x
  const mpfr_prec_t w = 64;
  Real t(w), ln2(w);
  mpfr_const_log2(ln2.get(), MPFR_RNDN);
  mpfr_div(t.get(), x.get(), ln2.get(), MPFR_RNDN);
  return t.to_double();
}

}  // namespace

QValue compute_q(const Complex& tau, QConvention conv, mpfr_prec_t prec) {
  if (mpfr_sgn(tau.im.get()) <= 0) throw error(errc::not_upper_half_plane, "Im(tau) must be positive");
  widen_exponent_range();
  const mpfr_prec_t w = prec + 16;
  QValue v;
  v.gamma = Complex(w);
  Real pi(w);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  if (conv == QConvention::Eta) mpfr_mul_2ui(pi.get(), pi.get(), 1, MPFR_RNDN);
  // gamma = k pi i tau = -k pi Im(tau) + i k pi Re(tau)
  mpfr_mul(v.gamma.re.get(), pi.get(), tau.im.get(), MPFR_RNDN);
  mpfr_neg(v.gamma.re.get(), v.gamma.re.get(), MPFR_RNDN);
  mpfr_mul(v.gamma.im.get(), pi.get(), tau.re.get(), MPFR_RNDN);
  v.q = Complex(prec);
  exp_complex(v.q, v.gamma.re, v.gamma.im, prec);
  v.log2_abs = log2_of_exp(v.gamma.re);
  return v;
}

QValue q_from_raw(const Complex& q, mpfr_prec_t prec) {
  widen_exponent_range();
  QValue v;
  v.q = Complex(prec);
  mpfr_set(v.q.re.get(), q.re.get(), MPFR_RNDN);
  mpfr_set(v.q.im.get(), q.im.get(), MPFR_RNDN);
  const mpfr_prec_t w = prec + 16;
  v.gamma = Complex(w);
  if (mpfr_zero_p(q.re.get()) && mpfr_zero_p(q.im.get())) {
    v.zero = true;
    v.log2_abs = -std::numeric_limits<double>::infinity();
    return v;
  }
  Real r(w);
  mpfr_hypot(r.get(), q.re.get(), q.im.get(), MPFR_RNDN);
  mpfr_log(v.gamma.re.get(), r.get(), MPFR_RNDN);
  mpfr_atan2(v.gamma.im.get(), q.im.get(), q.re.get(), MPFR_RNDN);
  v.log2_abs = log2_of_exp(v.gamma.re);
  return v;
}

Complex fractional_power(const QValue& q, unsigned ell, mpfr_prec_t prec) {
  Complex out(prec);
  if (q.zero) return out;
  const mpfr_prec_t w = prec + 16;
  Real re(w), im(w);
  mpfr_div_ui(re.get(), q.gamma.re.get(), ell, MPFR_RNDN);
  mpfr_div_ui(im.get(), q.gamma.im.get(), ell, MPFR_RNDN);
  exp_complex(out, re, im, prec);
  return out;
}

u64 truncation_order(mpfr_prec_t p, double L, double c) {
  if (p < 8) throw error(errc::precision_underflow, "precision below 8 bits");
  if (std::isinf(L) && L > 0) return 0;
  if (!(L > 0)) throw error(errc::q_too_large, "|q| >= 1");
  // delta = 1 - |q| = -expm1(-L ln 2)
  const double delta = -std::expm1(-L * std::log(2.0));
  const double log2_delta = std::log2(delta);
  if (log2_delta < -static_cast<double>(p) / 2) {
    throw error(errc::q_too_large, "|q| too close to 1 for the requested precision");
  }
  const double X = static_cast<double>(p) + 2 + std::log2(c) - log2_delta;
  return static_cast<u64>(std::floor(X / L));
}

double modeled_cost(const OpCounts& c, const CostModel& model) {
  return 3 * model.M * static_cast<double>(c.mul) + (2 * model.S + model.M) * static_cast<double>(c.sqr) +
         (2 * model.S + 2 * model.M) * static_cast<double>(c.cube);
}

// ---------------------------------------------------------------- series

namespace {

struct Context {
  const EvalRequest& req;
  QValue qv;
  mpfr_prec_t wp;
  double L;  // -log2|q|
  u64 Tb;    // truncation bound
};

mpfr_prec_t term_prec(const Context& cx, u64 e) {
  if (!cx.req.precision_trick || e == 0) return cx.wp;
  const double drop = std::floor(static_cast<double>(e) * cx.L);
  if (drop >= static_cast<double>(cx.wp - 32)) return 32;
  return std::max<mpfr_prec_t>(32, cx.wp - static_cast<mpfr_prec_t>(drop));
}

template <class OnPower>
void run_sequence(const AdditionSequence& seq, const Context& cx, ComplexArith& arith, OnPower&& on_power) {
  std::vector<Complex> pw;
  pw.reserve(seq.steps.size());
  for (const auto& s : seq.steps) {
    const mpfr_prec_t p = term_prec(cx, s.target);
    pw.emplace_back(p);
    Complex& out = pw.back();
    switch (s.op) {
      case StepOp::Leaf:
        mpfr_set(out.re.get(), cx.qv.q.re.get(), MPFR_RNDN);
        mpfr_set(out.im.get(), cx.qv.q.im.get(), MPFR_RNDN);
        break;
      case StepOp::Double: arith.sqr(out, pw[s.a], p); break;
      case StepOp::Add: arith.mul(out, pw[s.a], pw[s.b], p); break;
      case StepOp::DoubleAdd: arith.sqr_mul(out, pw[s.a], pw[s.b], p); break;
      case StepOp::Triple: arith.cube(out, pw[s.a], p); break;
    }
    on_power(s.target, out);
  }
}

AdditionSequence build_for(ExponentKind kind, u64 N, Method method, bool generic) {
  if (N == 0) return {};
  if (generic) return build_sequence(kind, N, "generic");
  return build_sequence(kind, N, method == Method::ClassicalAS ? "classical" : "optimized");
}

std::unordered_set<u64> target_set(const AdditionSequence& seq) {
  return {seq.targets.begin(), seq.targets.end()};
}

Complex one(mpfr_prec_t p) {
  Complex c(p);
  c.set_ui(1);
  return c;
}

/// 1 + 2 * x
Complex one_plus_twice(const Complex& x, mpfr_prec_t p) {
  Complex r(p);
  mpfr_mul_2ui(r.re.get(), x.re.get(), 1, MPFR_RNDN);
  mpfr_mul_2ui(r.im.get(), x.im.get(), 1, MPFR_RNDN);
  mpfr_add_ui(r.re.get(), r.re.get(), 1, MPFR_RNDN);
  return r;
}

/// Sum of sign(e) q^e over the first N terms of `kind`, through an addition
/// sequence. Returns one sum per sign rule.
std::vector<Complex> as_sums(ExponentKind kind, u64 N, std::span<const SignRule> rules, Method method,
                             const Context& cx, ComplexArith& arith) {
  std::vector<Complex> sums;
  for (std::size_t j = 0; j < rules.size(); ++j) sums.emplace_back(cx.wp);
  if (N == 0) return sums;
  const AdditionSequence seq = build_for(kind, N, method, cx.req.generic_as);
  const auto targets = target_set(seq);
  if (exponent(kind, 1) == 0) {
    for (std::size_t j = 0; j < rules.size(); ++j) mpfr_set_si(sums[j].re.get(), sign_of(rules[j], kind, 0), MPFR_RNDN);
  }
  run_sequence(seq, cx, arith, [&](u64 e, const Complex& x) {
    if (!targets.count(e)) return;
    for (std::size_t j = 0; j < rules.size(); ++j) ComplexArith::accumulate(sums[j], x, sign_of(rules[j], kind, e));
  });
  return sums;
}

u64 count_upto(ExponentKind kind, u64 T, bool enabled = true) { return enabled ? truncation_count(kind, T) : 0; }

void finish(EvalReport& r, std::vector<NamedValue> values) {
  for (auto& v : values) v.value.round_to(r.prec);
  r.values = std::move(values);
  r.modeled_cost = modeled_cost(r.counts);
}

}  // namespace

EvalReport eval(const EvalRequest& req) {
  if (req.prec < 8) throw error(errc::precision_underflow, "precision below 8 bits");
  if (req.tau.has_value() == req.q.has_value()) throw error(errc::invalid_argument, "give exactly one of tau and q");
  widen_exponent_range();
  const bool eta = req.function == Function::Eta;
  const QConvention conv = eta ? QConvention::Eta : QConvention::Theta;

  // |q| first, at modest precision, to size the computation.
  const QValue probe = req.tau ? compute_q(*req.tau, conv, 64) : q_from_raw(*req.q, 64);
  const double L = -probe.log2_abs;
  if (req.q && !probe.zero && !(L > 0)) throw error(errc::q_too_large, "|q| >= 1");
  const u64 Tb = req.truncation ? *req.truncation : truncation_order(req.prec, L, eta ? 1.0 : 2.0);

  EvalReport r;
  r.function = req.function;
  r.prec = req.prec;
  r.log2_abs_q = probe.log2_abs;
  r.method = req.method;
  if (r.method == Method::Auto) r.method = Tb < req.auto_crossover ? Method::OptimizedAS : Method::BSGS;
  const bool bsgs = r.method == Method::BSGS;

  // Terms per series; theta0/theta1 through almost-squares on the AS paths.
  const u64 Tsq = Tb;
  const u64 Tas = Tb >= 1 ? Tb - 1 : 0;
  u64 N = 0;
  switch (req.function) {
    case Function::Eta: N = truncation_count(ExponentKind::Pentagonal, Tb); break;
    case Function::Theta0:
    case Function::Theta1: N = bsgs || req.generic_as ? truncation_count(ExponentKind::Square, Tsq) : count_upto(ExponentKind::AlmostSquare, Tas, Tb >= 1); break;
    case Function::Theta2: N = truncation_count(ExponentKind::Trigonal, Tb); break;
    case Function::ThetaAll: N = truncation_count(ExponentKind::Square, Tsq) + truncation_count(ExponentKind::Trigonal, Tb); break;
  }
  r.N = N;
  r.wp = req.prec + 16 + static_cast<mpfr_prec_t>(std::ceil(std::log2(static_cast<double>(N) + 1)));

  Context cx{req, req.tau ? compute_q(*req.tau, conv, r.wp) : q_from_raw(*req.q, r.wp), r.wp, L, Tb};
  ComplexArith arith(&r.counts);
  const mpfr_prec_t wp = r.wp;
  BsgsOptions bopt{req.precision_trick, L};

  auto last = [](ExponentKind k, u64 T) -> u64 {
    const u64 n = truncation_count(k, T);
    return n ? exponent(k, n) : 0;
  };

  if (req.function == Function::Eta) {
    Complex S(wp);
    if (bsgs) {
      const BsgsPlan p = plan(ExponentKind::Pentagonal, Tb, default_minima(ExponentKind::Pentagonal));
      r.m = p.m;
      S = eval(p, cx.qv.q, SignRule::Eta, wp, bopt, &r.counts);
    } else {
      const SignRule rule = SignRule::Eta;
      S = as_sums(ExponentKind::Pentagonal, N, {&rule, 1}, r.method, cx, arith)[0];
    }
    r.T = last(ExponentKind::Pentagonal, Tb);
    Complex v(wp);
    arith.mul(v, fractional_power(cx.qv, 24, wp), S, wp);
    finish(r, {{"eta", std::move(v)}});
    return r;
  }

  const bool want0 = req.function == Function::Theta0 || req.function == Function::ThetaAll;
  const bool want1 = req.function == Function::Theta1 || req.function == Function::ThetaAll;
  const bool want2 = req.function == Function::Theta2 || req.function == Function::ThetaAll;
  std::vector<NamedValue> out;

  // theta2 = 2 q^(1/4) R
  auto theta2_from = [&](const Complex& R) {
    Complex v(wp);
    arith.mul(v, fractional_power(cx.qv, 4, wp), R, wp);
    mpfr_mul_2ui(v.re.get(), v.re.get(), 1, MPFR_RNDN);
    mpfr_mul_2ui(v.im.get(), v.im.get(), 1, MPFR_RNDN);
    return v;
  };
  // 1 + 2 (E +- q O)
  auto theta01_from = [&](const Complex* E, const Complex& O, int sign) {
    Complex t(wp);
    arith.mul(t, cx.qv.q, O, wp);
    if (E) {
      Complex u(wp);
      mpfr_set(u.re.get(), E->re.get(), MPFR_RNDN);
      mpfr_set(u.im.get(), E->im.get(), MPFR_RNDN);
      ComplexArith::accumulate(u, t, sign);
      return one_plus_twice(u, wp);
    }
    if (sign < 0) {
      mpfr_neg(t.re.get(), t.re.get(), MPFR_RNDN);
      mpfr_neg(t.im.get(), t.im.get(), MPFR_RNDN);
    }
    return one_plus_twice(t, wp);
  };

  if (bsgs) {
    std::vector<ExponentKind> kinds;
    std::vector<u64> Ts;
    if (want0 || want1) {
      kinds.push_back(ExponentKind::Square);
      Ts.push_back(Tsq);
    }
    if (want2) {
      kinds.push_back(ExponentKind::Trigonal);
      Ts.push_back(Tb);
    }
    std::vector<BsgsPlan> plans;
    if (kinds.size() == 1) {
      plans.push_back(plan(kinds[0], Ts[0], default_minima(kinds[0])));
    } else {
      plans = plan_shared(kinds, Ts, default_minima(ExponentKind::Square), 3);
    }
    r.m = plans[0].m;
    std::vector<BsgsPass> passes;
    std::size_t tri = 0;
    if (want0) passes.push_back({&plans[0], SignRule::Plus});
    if (want1) passes.push_back({&plans[0], SignRule::Alternating});
    if (want2) {
      tri = plans.size() - 1;
      passes.push_back({&plans[tri], SignRule::Plus});
    }
    auto sums = eval_simultaneous(passes, cx.qv.q, wp, bopt, &r.counts);
    std::size_t j = 0;
    if (want0) out.push_back({"theta0", one_plus_twice(sums[j++], wp)});
    if (want1) out.push_back({"theta1", one_plus_twice(sums[j++], wp)});
    if (want2) out.push_back({"theta2", theta2_from(sums[j++])});
    if (want0 || want1) r.T = std::max(r.T, last(ExponentKind::Square, Tsq));
    if (want2) r.T = std::max(r.T, last(ExponentKind::Trigonal, Tb));
    finish(r, std::move(out));
    return r;
  }

  if (req.function == Function::ThetaAll && r.method == Method::OptimizedAS && !req.generic_as) {
    // One pass over 2 floor(n^2/8): odd n gives trigonal numbers, n = 4k
    // even squares, n = 4k+2 the almost-squares (2k+1)^2 - 1.
    Complex E(wp), O(wp), R(wp);
    const u64 Na = truncation_count(ExponentKind::A182568, Tb);
    if (Na > 0) {
      const AdditionSequence seq = build_sequence(ExponentKind::A182568, Na, "optimized");
      const auto targets = target_set(seq);
      mpfr_set_ui(R.re.get(), 1, MPFR_RNDN);
      if (Tb >= 1) mpfr_set_ui(O.re.get(), 1, MPFR_RNDN);
      run_sequence(seq, cx, arith, [&](u64 e, const Complex& x) {
        if (e == 0 || !targets.count(e)) return;
        if (is_member(ExponentKind::Trigonal, e)) {
          ComplexArith::accumulate(R, x, 1);
        } else if (is_square(e)) {
          ComplexArith::accumulate(E, x, 1);
        } else if (e + 1 <= Tb) {
          ComplexArith::accumulate(O, x, 1);
        }
      });
    }
    out.push_back({"theta0", theta01_from(&E, O, 1)});
    out.push_back({"theta1", theta01_from(&E, O, -1)});
    out.push_back({"theta2", theta2_from(R)});
    r.T = std::max(last(ExponentKind::Square, Tsq), last(ExponentKind::Trigonal, Tb));
    finish(r, std::move(out));
    return r;
  }

  // Separate sequences: almost-squares for theta0/theta1, trigonal for theta2.
  if (want0 || want1) {
    std::vector<SignRule> rules;
    if (want0) rules.push_back(SignRule::Plus);
    if (want1) rules.push_back(SignRule::Alternating);
    if (req.generic_as) {
      const u64 Ns = truncation_count(ExponentKind::Square, Tsq);
      auto sums = as_sums(ExponentKind::Square, Ns, rules, r.method, cx, arith);
      std::size_t j = 0;
      if (want0) out.push_back({"theta0", one_plus_twice(sums[j++], wp)});
      if (want1) out.push_back({"theta1", one_plus_twice(sums[j++], wp)});
      r.T = std::max(r.T, last(ExponentKind::Square, Tsq));
    } else {
      const u64 Na = count_upto(ExponentKind::AlmostSquare, Tas, Tb >= 1);
      auto sums = as_sums(ExponentKind::AlmostSquare, Na, rules, r.method, cx, arith);
      std::size_t j = 0;
      if (want0) out.push_back({"theta0", theta01_from(nullptr, sums[j++], 1)});
      if (want1) out.push_back({"theta1", theta01_from(nullptr, sums[j++], 1)});
      if (Na) r.T = std::max(r.T, last(ExponentKind::AlmostSquare, Tas) + 1);
    }
  }
  if (want2) {
    const SignRule rule = SignRule::Plus;
    const u64 Nt = truncation_count(ExponentKind::Trigonal, Tb);
    auto sums = as_sums(ExponentKind::Trigonal, Nt, {&rule, 1}, r.method, cx, arith);
    out.push_back({"theta2", theta2_from(sums[0])});
    r.T = std::max(r.T, last(ExponentKind::Trigonal, Tb));
  }
  finish(r, std::move(out));
  return r;
}

// ---------------------------------------------------------------- oracle

namespace {

// Schoolbook 4-multiplication product, kept apart from ComplexArith.
void mul4(Complex& out, const Complex& a, const Complex& b, mpfr_prec_t p) {
  Real ac(p + 8), bd(p + 8), ad(p + 8), bc(p + 8);
  mpfr_mul(ac.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(bd.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(ad.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(bc.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  out.set_prec(p);
  mpfr_sub(out.re.get(), ac.get(), bd.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), ad.get(), bc.get(), MPFR_RNDN);
}

Complex power(const Complex& q, u64 e, mpfr_prec_t p) {
  Complex result = one(p);
  Complex base(p);
  mpfr_set(base.re.get(), q.re.get(), MPFR_RNDN);
  mpfr_set(base.im.get(), q.im.get(), MPFR_RNDN);
  Complex tmp(p);
  while (e) {
    if (e & 1) {
      mul4(tmp, result, base, p);
      std::swap(tmp, result);
    }
    e >>= 1;
    if (e) {
      mul4(tmp, base, base, p);
      std::swap(tmp, base);
    }
  }
  return result;
}

Complex naive_sum(ExponentKind kind, u64 T, SignRule rule, const Complex& q, mpfr_prec_t p) {
  Complex S(p);
  for (u64 e : exponents_upto(kind, T)) ComplexArith::accumulate(S, power(q, e, p), sign_of(rule, kind, e));
  return S;
}

}  // namespace

std::vector<NamedValue> eval_naive_oracle(const EvalRequest& req) {
  if (req.prec < 8) throw error(errc::precision_underflow, "precision below 8 bits");
  if (req.tau.has_value() == req.q.has_value()) throw error(errc::invalid_argument, "give exactly one of tau and q");
  widen_exponent_range();
  const bool eta = req.function == Function::Eta;
  const QConvention conv = eta ? QConvention::Eta : QConvention::Theta;
  const QValue probe = req.tau ? compute_q(*req.tau, conv, 64) : q_from_raw(*req.q, 64);
  const u64 Tb = req.truncation ? *req.truncation : truncation_order(req.prec, -probe.log2_abs, eta ? 1.0 : 2.0);
  const mpfr_prec_t p = req.prec + 48 + static_cast<mpfr_prec_t>(std::ceil(std::log2(static_cast<double>(Tb) + 2)));
  const QValue qv = req.tau ? compute_q(*req.tau, conv, p) : q_from_raw(*req.q, p);

  std::vector<NamedValue> out;
  auto times = [&](const Complex& a, const Complex& b, unsigned k) {
    Complex v(p);
    mul4(v, a, b, p);
    mpfr_mul_ui(v.re.get(), v.re.get(), k, MPFR_RNDN);
    mpfr_mul_ui(v.im.get(), v.im.get(), k, MPFR_RNDN);
    return v;
  };
  if (eta) {
    out.push_back({"eta", times(fractional_power(qv, 24, p), naive_sum(ExponentKind::Pentagonal, Tb, SignRule::Eta, qv.q, p), 1)});
  } else {
    const bool all = req.function == Function::ThetaAll;
    if (all || req.function == Function::Theta0) {
      out.push_back({"theta0", one_plus_twice(naive_sum(ExponentKind::Square, Tb, SignRule::Plus, qv.q, p), p)});
    }
    if (all || req.function == Function::Theta1) {
      out.push_back({"theta1", one_plus_twice(naive_sum(ExponentKind::Square, Tb, SignRule::Alternating, qv.q, p), p)});
    }
    if (all || req.function == Function::Theta2) {
      out.push_back({"theta2", times(fractional_power(qv, 4, p), naive_sum(ExponentKind::Trigonal, Tb, SignRule::Plus, qv.q, p), 2)});
    }
  }
  for (auto& v : out) v.value.round_to(req.prec);
  return out;
}

std::string to_json(const EvalReport& r) {
  nlohmann::json j;
  j["function"] = std::string(to_string(r.function));
  j["method"] = std::string(to_string(r.method));
  j["prec"] = r.prec;
  j["working_prec"] = r.wp;
  j["T"] = r.T;
  j["N"] = r.N;
  if (r.m) j["m"] = r.m;
  j["log2_abs_q"] = r.log2_abs_q;
  const int digits = static_cast<int>(std::ceil(static_cast<double>(r.prec) * std::log10(2.0))) + 1;
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& v : r.values) {
    vals.push_back({{"name", v.name},
                    {"re", to_decimal(v.value.re, digits)},
                    {"im", to_decimal(v.value.im, digits)},
                    {"re_hex", to_hex(v.value.re)},
                    {"im_hex", to_hex(v.value.im)}});
  }
  j["values"] = vals;
  j["counts"] = {{"mul", r.counts.mul}, {"sqr", r.counts.sqr}, {"cube", r.counts.cube}};
  j["modeled_cost"] = r.modeled_cost;
  return j.dump(2);
}

}  // namespace etatheta
