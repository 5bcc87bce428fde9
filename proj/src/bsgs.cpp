#include "etatheta/bsgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "json.hpp"

#include "etatheta/error.hpp"
#include "etatheta/theorems.hpp"

namespace etatheta {

int sign_of(SignRule rule, ExponentKind kind, u64 e) {
  switch (rule) {
    case SignRule::Plus:
      return 1;
    case SignRule::Eta:
      return term_sign(e);
    case SignRule::Alternating: {
      const u64 n = kind == ExponentKind::AlmostSquare ? isqrt(e + 1) : isqrt(e);
      return (n & 1) ? -1 : 1;
    }
  }
  return 1;
}

namespace {

u64 last_exponent_upto(ExponentKind kind, u64 T, u64& N) {
  N = truncation_count(kind, T);
  return N == 0 ? 0 : exponent(kind, N);
}

std::vector<u64> hit_residues(ExponentKind kind, u64 N, u64 m) {
  std::vector<u64> rs;
  for (u64 i = 1; i <= N; ++i) {
    const u64 r = exponent(kind, i) % m;
    if (r != 0) rs.push_back(r);
  }
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  return rs;
}

AdditionSequence residue_sequence(std::vector<u64> rs, u64 T, u64 m, u64& insertions) {
  const std::size_t wanted = rs.size() + (T >= m ? 1 : 0);
  if (T >= m) rs.push_back(m);
  auto seq = complete_generic(rs);
  insertions = seq.steps.size() - std::min<std::size_t>(seq.steps.size(), wanted);
  return seq;
}

mpfr_prec_t level_prec(const BsgsOptions& opt, mpfr_prec_t wp, u64 k, u64 m) {
  if (!opt.precision_trick || k == 0) return wp;
  const double drop = std::floor(static_cast<double>(k) * static_cast<double>(m) * opt.log2_inv_q);
  if (drop >= static_cast<double>(wp - 32)) return 32;
  return std::max<mpfr_prec_t>(32, wp - static_cast<mpfr_prec_t>(drop));
}

struct BabyTable {
  std::vector<Complex> powers;
  std::unordered_map<u64, std::size_t> index;

  const Complex& at(u64 r) const { return powers[index.at(r)]; }
};

BabyTable baby_steps(const AdditionSequence& seq, const Complex& q, mpfr_prec_t wp, ComplexArith& arith) {
  BabyTable t;
  t.powers.reserve(seq.steps.size());
  t.index.reserve(seq.steps.size());
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const auto& s = seq.steps[i];
    t.powers.emplace_back(wp);
    Complex& out = t.powers.back();
    switch (s.op) {
      case StepOp::Leaf:
        mpfr_set(out.re.get(), q.re.get(), MPFR_RNDN);
        mpfr_set(out.im.get(), q.im.get(), MPFR_RNDN);
        break;
      case StepOp::Double:
        arith.sqr(out, t.powers[s.a], wp);
        break;
      case StepOp::Add:
        arith.mul(out, t.powers[s.a], t.powers[s.b], wp);
        break;
      case StepOp::DoubleAdd:
        arith.sqr_mul(out, t.powers[s.a], t.powers[s.b], wp);
        break;
      case StepOp::Triple:
        arith.cube(out, t.powers[s.a], wp);
        break;
    }
    t.index.emplace(s.target, i);
  }
  return t;
}

Complex horner(const BsgsPlan& p, const BabyTable& baby, SignRule signs, mpfr_prec_t wp,
               const BsgsOptions& opt, ComplexArith& arith) {
  if (p.N == 0) {
    Complex z(wp);
    return z;
  }
  const u64 top_level = p.T / p.m;
  const Complex* Q = top_level > 0 ? &baby.at(p.m) : nullptr;
  u64 cur = top_level;
  Complex S(level_prec(opt, wp, cur, p.m));
  for (u64 i = p.N; i >= 1; --i) {
    const u64 e = exponent(p.kind, i);
    const u64 k = e / p.m, r = e % p.m;
    while (cur > k) {
      --cur;
      arith.mul(S, S, *Q, level_prec(opt, wp, cur, p.m));
    }
    const int s = sign_of(signs, p.kind, e);
    if (r == 0) {
      mpfr_add_si(S.re.get(), S.re.get(), s, MPFR_RNDN);
    } else {
      ComplexArith::accumulate(S, baby.at(r), s);
    }
  }
  while (cur > 0) {
    --cur;
    arith.mul(S, S, *Q, level_prec(opt, wp, cur, p.m));
  }
  return S;
}

}  // namespace

BsgsPlan plan_with_m(ExponentKind kind, u64 T, u64 m) {
  if (m == 0) throw error(errc::invalid_argument, "modulus must be positive");
  BsgsPlan p;
  p.kind = kind;
  p.m = m;
  p.T = last_exponent_upto(kind, T, p.N);
  p.residues = hit_residues(kind, p.N, m);
  p.residue_seq = residue_sequence(p.residues, p.N ? p.T : 0, m, p.insertions);
  if (p.N == 0) p.residue_seq = {};
  p.levels = p.N ? p.T / m + 1 : 0;
  return p;
}

BsgsPlan plan(ExponentKind kind, u64 T, const MinimaTable& table, unsigned g) {
  u64 N = 0;
  const u64 top = last_exponent_upto(kind, T, N);
  const u64 m = table.entries.empty() ? 1 : choose_m(table, std::max<u64>(top, 1), g).m;
  return plan_with_m(kind, top, m);
}

std::vector<BsgsPlan> plan_shared(std::span<const ExponentKind> kinds, std::span<const u64> Ts,
                                  const MinimaTable& table, unsigned g) {
  if (kinds.size() != Ts.size() || kinds.empty()) {
    throw error(errc::invalid_argument, "plan_shared needs one T per kind");
  }
  u64 tmax = 1;
  for (std::size_t j = 0; j < kinds.size(); ++j) {
    u64 N = 0;
    tmax = std::max(tmax, last_exponent_upto(kinds[j], Ts[j], N));
  }
  const u64 m = table.entries.empty() ? 1 : choose_m(table, tmax, g).m;
  std::vector<BsgsPlan> plans;
  std::vector<u64> all;
  for (std::size_t j = 0; j < kinds.size(); ++j) {
    plans.push_back(plan_with_m(kinds[j], Ts[j], m));
    all.insert(all.end(), plans.back().residues.begin(), plans.back().residues.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  u64 ins = 0;
  u64 top = 0;
  for (const auto& p : plans) top = std::max(top, p.T);
  auto shared = residue_sequence(all, top, m, ins);
  for (auto& p : plans) {
    p.residue_seq = shared;
    p.insertions = ins;
  }
  return plans;
}

BsgsCostEstimate estimate(const BsgsPlan& p, unsigned g, const CostModel& model) {
  BsgsCostEstimate c;
  c.giant_steps = static_cast<u64>(g) * (p.N ? p.giant_steps() : 0);
  c.baby_steps = p.residue_seq.steps.empty() ? 0 : p.residue_seq.steps.size() - 1;
  c.giant = 3.0 * model.M * static_cast<double>(c.giant_steps);
  c.baby = cost(p.residue_seq, model);
  c.total = c.giant + c.baby;
  return c;
}

Complex eval(const BsgsPlan& plan, const Complex& q, SignRule signs, mpfr_prec_t wp,
             const BsgsOptions& opt, OpCounts* counts) {
  if (wp < 8) throw error(errc::precision_underflow, "precision below 8 bits");
  ComplexArith arith(counts);
  const BabyTable baby = baby_steps(plan.residue_seq, q, wp, arith);
  Complex S = horner(plan, baby, signs, wp, opt, arith);
  S.round_to(wp);
  return S;
}

std::vector<Complex> eval_simultaneous(std::span<const BsgsPass> passes, const Complex& q,
                                       mpfr_prec_t wp, const BsgsOptions& opt, OpCounts* counts) {
  if (wp < 8) throw error(errc::precision_underflow, "precision below 8 bits");
  if (passes.empty()) return {};
  const u64 m = passes.front().plan->m;
  bool same_table = true;
  std::vector<u64> all;
  u64 top = 0;
  for (const auto& ps : passes) {
    if (ps.plan->m != m) throw error(errc::mismatched_modulus, "passes use different moduli");
    same_table = same_table && ps.plan->residue_seq.targets == passes.front().plan->residue_seq.targets;
    all.insert(all.end(), ps.plan->residues.begin(), ps.plan->residues.end());
    top = std::max(top, ps.plan->T);
  }
  AdditionSequence merged;
  if (!same_table) {
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    u64 ins = 0;
    merged = residue_sequence(all, top, m, ins);
  }
  ComplexArith arith(counts);
  const BabyTable baby = baby_steps(same_table ? passes.front().plan->residue_seq : merged, q, wp, arith);
  std::vector<Complex> out;
  for (const auto& ps : passes) {
    out.push_back(horner(*ps.plan, baby, ps.signs, wp, opt, arith));
    out.back().round_to(wp);
  }
  return out;
}

std::vector<CostCurveRow> cost_curve(ExponentKind kind, std::span<const u64> Ns, u64 generic_limit) {
  std::vector<CostCurveRow> rows;
  for (u64 N : Ns) {
    if (N == 0) throw error(errc::invalid_argument, "N must be positive");
    CostCurveRow row;
    row.N = N;
    row.T = exponent(kind, N);
    row.classical = normalized_cost(build_classical(kind, N), N);
    const StepCounts opt = kind == ExponentKind::Pentagonal ? pentagonal_optimized_counts(N)
                                                            : build_optimized(kind, N).counts();
    row.optimized = normalized_cost(opt, N);
    row.generic = N <= generic_limit ? normalized_cost(build_sequence(kind, N, "generic"), N)
                                     : std::numeric_limits<double>::quiet_NaN();
    const BsgsPlan p = plan(kind, row.T, default_minima(kind));
    row.m = p.m;
    row.bsgs = estimate(p).total / (3.0 * static_cast<double>(N));
    rows.push_back(row);
  }
  return rows;
}

std::string to_json(const BsgsPlan& p) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(p.kind));
  j["T"] = p.T;
  j["N"] = p.N;
  j["m"] = p.m;
  j["residue_count"] = p.residues.size();
  j["insertion_count"] = p.insertions;
  j["level_count"] = p.levels;
  j["baby_steps"] = p.residue_seq.steps.empty() ? 0 : p.residue_seq.steps.size() - 1;
  j["giant_steps"] = p.N ? p.giant_steps() : 0;
  return j.dump();
}

}  // namespace etatheta
