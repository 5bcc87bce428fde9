#include "etatheta/theorems.hpp"

#include <gmp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "etatheta/error.hpp"
#include "json.hpp"

namespace etatheta {

namespace {

struct Mpz {
  mpz_t v;
  Mpz() { mpz_init(v); }
  explicit Mpz(unsigned long x) { mpz_init_set_ui(v, x); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
  ~Mpz() { mpz_clear(v); }
  std::string str() const {
    std::string s(mpz_sizeinbase(v, 10) + 2, '\0');
    mpz_get_str(s.data(), 10, v);
    s.resize(s.find('\0'));
    return s;
  }
};

std::string_view form_name(DecompForm f) {
  switch (f) {
    case DecompForm::Add:
      return "add";
    case DecompForm::DoubleAdd:
      return "doubleadd";
    case DecompForm::TripleSum:
      return "triplesum";
  }
  return "?";
}

bool prime_or_twice_prime(u64 k) { return is_prime(k) || (k % 2 == 0 && is_prime(k / 2)); }

bool twice_prime_square(u64 k) {
  if (k % 2 != 0) return false;
  const auto r = exact_sqrt(k / 2);
  return r && is_prime(*r);
}

// What the stated criterion predicts for member c.
bool predicted(ExponentKind kind, DecompForm form, u64 c) {
  switch (kind) {
    case ExponentKind::Pentagonal:
      return form == DecompForm::Add ? !is_prime(12 * c + 1) : true;
    case ExponentKind::Trigonal:
      if (form == DecompForm::Add) return !is_prime(2 * c + 1);
      if (form == DecompForm::DoubleAdd) return !is_prime(4 * c + 3);
      return true;
    case ExponentKind::AlmostSquare:
      if (form == DecompForm::Add) return !prime_or_twice_prime(c + 2);
      if (form == DecompForm::DoubleAdd) return !prime_or_twice_prime(c + 3) && !twice_prime_square(c + 3);
      return true;
    default:
      return true;
  }
}

struct Found {
  bool ok = false;
  u64 a = 0, b = 0, d = 0;
};

// Brute force over the sorted member list; `member` is a bitmap up to c.
Found search(DecompForm form, u64 c, const std::vector<u64>& members, const std::vector<char>& member) {
  Found f;
  auto upto = std::lower_bound(members.begin(), members.end(), c);
  if (form == DecompForm::Add || form == DecompForm::TripleSum) {
    for (auto it = members.begin(); it != upto && 2 * *it <= c; ++it) {
      if (*it > 0 && member[c - *it]) return {true, c - *it, *it};
    }
  }
  if (form == DecompForm::DoubleAdd) {
    for (auto it = members.begin(); it != upto && 2 * *it <= c; ++it) {
      if (*it > 0 && member[c - 2 * *it]) return {true, *it, c - 2 * *it};
    }
  }
  if (form == DecompForm::TripleSum) {
    for (auto ia = members.begin(); ia != upto; ++ia) {
      for (auto ib = members.begin(); ib != upto && *ib <= *ia && *ia + *ib < c; ++ib) {
        const u64 d = c - *ia - *ib;
        if (d > 0 && d <= *ib && member[d]) return {true, *ia, *ib, d};
      }
    }
  }
  return f;
}

std::string describe(DecompForm form, u64 c, const Found& f) {
  const auto s = [](u64 x) { return std::to_string(x); };
  switch (form) {
    case DecompForm::Add:
      return s(c) + " = " + s(f.a) + " + " + s(f.b);
    case DecompForm::DoubleAdd:
      return s(c) + " = 2*" + s(f.a) + " + " + s(f.b);
    case DecompForm::TripleSum:
      return s(c) + " = " + s(f.a) + " + " + s(f.b) + (f.d ? " + " + s(f.d) : "");
  }
  return {};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string to_json(const VerificationReport& r) {
  nlohmann::json j{{"statement", r.statement},
                   {"range", {r.range_lo, r.range_hi}},
                   {"checked", r.checked},
                   {"pass", r.pass()},
                   {"counterexamples", r.counterexamples},
                   {"witnesses", r.witnesses},
                   {"elapsed_seconds", r.elapsed_seconds}};
  return j.dump(2);
}

u64 decomposition_threshold(ExponentKind kind, DecompForm form) {
  switch (kind) {
    case ExponentKind::Pentagonal:
      if (form == DecompForm::Add) return 2;
      if (form == DecompForm::DoubleAdd) return 5;
      break;
    case ExponentKind::Trigonal:
      return 6;
    case ExponentKind::AlmostSquare:
      return form == DecompForm::TripleSum ? 24 : 3;
    case ExponentKind::QuarterSquare:
      if (form == DecompForm::DoubleAdd) return 2;
      break;
    case ExponentKind::A182568:
      if (form == DecompForm::Add) return 4;
      break;
    default:
      break;
  }
  throw error(errc::unsupported_kind, "no " + std::string(form_name(form)) + " statement for " +
                                          std::string(to_string(kind)));
}

VerificationReport verify_decomposition(ExponentKind kind, DecompForm form, u64 c_max, Execution exec) {
  const auto t0 = std::chrono::steady_clock::now();
  const u64 lo = decomposition_threshold(kind, form);
  VerificationReport rep;
  rep.statement = std::string(to_string(kind)) + "-" + std::string(form_name(form));
  rep.range_lo = lo;
  rep.range_hi = c_max;

  std::vector<u64> members = exponents_upto(kind, c_max);
  std::vector<char> member(c_max + 1, 0);
  for (u64 c : members) member[c] = 1;
  std::vector<u64> todo;
  for (u64 c : members) {
    if (c >= lo) todo.push_back(c);
  }
  rep.checked = todo.size();

  std::vector<char> bad(todo.size(), 0);
  std::vector<Found> how(todo.size());
  const bool parallel = exec == Execution::Parallel;
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (long long i = 0; i < static_cast<long long>(todo.size()); ++i) {
    how[i] = search(form, todo[i], members, member);
    bad[i] = how[i].ok != predicted(kind, form, todo[i]);
  }

  for (std::size_t i = 0; i < todo.size(); ++i) {
    if (bad[i]) rep.counterexamples.push_back(todo[i]);
    if (how[i].ok && rep.witnesses.size() < 4) rep.witnesses.push_back(describe(form, todo[i], how[i]));
  }
  rep.elapsed_seconds = seconds_since(t0);
  return rep;
}

std::vector<PellPair> pell_family(PellKind kind, unsigned count) {
  if (count > 40) throw error(errc::invalid_argument, "pell_family supports at most 40 steps");
  std::vector<PellPair> out;
  Mpz z(1), x(1), zn, xn, c, a;
  const unsigned long mult = kind == PellKind::PentagonalDouble ? 2 : 3;
  for (unsigned k = 0; k < count; ++k) {
    if (k > 0) {
      if (kind == PellKind::PentagonalDouble) {
        // z_k = 3 z + 4 x, x_k = 2 z + 3 x
        mpz_mul_ui(zn.v, z.v, 3);
        mpz_addmul_ui(zn.v, x.v, 4);
        mpz_mul_ui(xn.v, z.v, 2);
        mpz_addmul_ui(xn.v, x.v, 3);
      } else {
        // z_k = 2 z + 3 x, x_k = z + 2 x
        mpz_mul_ui(zn.v, z.v, 2);
        mpz_addmul_ui(zn.v, x.v, 3);
        mpz_set(xn.v, z.v);
        mpz_addmul_ui(xn.v, x.v, 2);
      }
      mpz_swap(z.v, zn.v);
      mpz_swap(x.v, xn.v);
    }
    if (mpz_fdiv_ui(z.v, 6) % 2 == 0 || mpz_fdiv_ui(z.v, 3) == 0) continue;
    if (mpz_fdiv_ui(x.v, 2) == 0 || mpz_fdiv_ui(x.v, 3) == 0) continue;
    mpz_mul(c.v, z.v, z.v);
    mpz_sub_ui(c.v, c.v, 1);
    mpz_divexact_ui(c.v, c.v, 24);
    mpz_mul(a.v, x.v, x.v);
    mpz_sub_ui(a.v, a.v, 1);
    mpz_divexact_ui(a.v, a.v, 24);
    if (mpz_sgn(c.v) == 0) continue;
    // Sanity: c = mult * a must hold by construction.
    Mpz check;
    mpz_mul_ui(check.v, a.v, mult);
    if (mpz_cmp(check.v, c.v) != 0) throw std::logic_error("Pell recurrence lost the c = k a relation");
    out.push_back({c.str(), a.str()});
  }
  return out;
}

std::vector<PellPair> pell_scan(PellKind kind, u64 c_max) {
  const u64 mult = kind == PellKind::PentagonalDouble ? 2 : 3;
  std::vector<PellPair> out;
  for (u64 c : exponents_upto(ExponentKind::Pentagonal, c_max)) {
    if (c > 0 && c % mult == 0 && is_member(ExponentKind::Pentagonal, c / mult)) {
      out.push_back({std::to_string(c), std::to_string(c / mult)});
    }
  }
  return out;
}

VerificationReport powers_of_three_check(unsigned n_max) {
  if (n_max > 120) throw error(errc::invalid_argument, "n_max is limited to 120");
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.statement = "powers-of-three";
  rep.range_hi = n_max;
  Mpz v, root;
  for (unsigned n = 0; n <= n_max; ++n) {
    ++rep.checked;
    mpz_ui_pow_ui(v.v, 3, n);
    mpz_sub_ui(v.v, v.v, 2);
    if (mpz_sgn(v.v) < 0 || !mpz_perfect_square_p(v.v)) continue;
    mpz_sqrt(root.v, v.v);
    rep.witnesses.push_back("3^" + std::to_string(n) + " - 2 = " + root.str() + "^2");
    if (!((n == 1 && mpz_cmp_ui(root.v, 1) == 0) || (n == 3 && mpz_cmp_ui(root.v, 5) == 0))) {
      rep.counterexamples.push_back(n);
    }
  }
  rep.elapsed_seconds = seconds_since(t0);
  return rep;
}

DensityResult prime_density(const Quadratic& f, u64 N, Execution exec) {
  if (f.a <= 0) throw error(errc::leading_coefficient_nonpositive, "leading coefficient must be positive");
  if (N == 0) throw error(errc::invalid_argument, "N must be positive");
  u64 count = 0;
  const bool parallel = exec == Execution::Parallel;
#pragma omp parallel for reduction(+ : count) schedule(static) if (parallel)
  for (long long n = 1; n <= static_cast<long long>(N); ++n) {
    const long long v = f(n);
    if (v > 1 && is_prime(static_cast<u64>(v))) ++count;
  }
  const double fN = static_cast<double>(f(static_cast<long long>(N)));
  return {count, static_cast<double>(count) * std::log(std::max(fN, 2.0)) / static_cast<double>(N)};
}

StepCounts pentagonal_optimized_counts(u64 N, Execution exec) {
  if (N == 0) throw error(errc::invalid_argument, "N must be positive");
  u64 doubles = 0, adds = 0, doubleadds = 0;
  const bool parallel = exec == Execution::Parallel;
  // e_1 = 0 needs nothing and e_2 = 1 is the leaf.
#pragma omp parallel for reduction(+ : doubles, adds, doubleadds) schedule(static) if (parallel)
  for (long long i = 3; i <= static_cast<long long>(N); ++i) {
    const u64 c = exponent(ExponentKind::Pentagonal, static_cast<u64>(i));
    if (c % 2 == 0 && is_member(ExponentKind::Pentagonal, c / 2)) {
      ++doubles;
    } else if (!is_prime(12 * c + 1)) {
      ++adds;
    } else {
      ++doubleadds;
    }
  }
  return {doubles, adds, doubleadds, 0};
}

std::vector<std::string> statement_ids() {
  return {"pentagonal-add",          "pentagonal-doubleadd",    "trigonal-add",
          "trigonal-doubleadd",      "trigonal-triplesum",      "almost-square-add",
          "almost-square-doubleadd", "almost-square-triplesum", "quarter-square-doubleadd",
          "a182568-add",             "pell-double",             "pell-triple",
          "powers-of-three"};
}

VerificationReport verify_statement(std::string_view id, u64 limit) {
  if (id == "powers-of-three") return powers_of_three_check(static_cast<unsigned>(std::min<u64>(limit, 120)));
  if (id == "pell-double" || id == "pell-triple") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto kind = id == "pell-double" ? PellKind::PentagonalDouble : PellKind::PentagonalTriple;
    const auto scan = pell_scan(kind, limit);
    std::vector<PellPair> rec;
    for (const auto& p : pell_family(kind, 40)) {
      if (p.c.size() <= 19 && std::stoull(p.c) <= limit) rec.push_back(p);
    }
    VerificationReport rep;
    rep.statement = std::string(id);
    rep.range_hi = limit;
    rep.checked = exponents_upto(ExponentKind::Pentagonal, limit).size();
    for (const auto& p : scan) {
      rep.witnesses.push_back(p.c + " = " + (kind == PellKind::PentagonalDouble ? "2*" : "3*") + p.a);
      if (std::find(rec.begin(), rec.end(), p) == rec.end()) rep.counterexamples.push_back(std::stoull(p.c));
    }
    for (const auto& p : rec) {
      if (std::find(scan.begin(), scan.end(), p) == scan.end()) rep.counterexamples.push_back(std::stoull(p.c));
    }
    rep.elapsed_seconds = seconds_since(t0);
    return rep;
  }
  const auto dash = id.rfind('-');
  if (dash == std::string_view::npos) throw error(errc::invalid_argument, "unknown statement '" + std::string(id) + "'");
  const auto kind = parse_kind(id.substr(0, dash));
  const auto form_s = id.substr(dash + 1);
  DecompForm form;
  if (form_s == "add") {
    form = DecompForm::Add;
  } else if (form_s == "doubleadd") {
    form = DecompForm::DoubleAdd;
  } else if (form_s == "triplesum") {
    form = DecompForm::TripleSum;
  } else {
    throw error(errc::invalid_argument, "unknown statement '" + std::string(id) + "'");
  }
  return verify_decomposition(kind, form, limit);
}

}  // namespace etatheta
