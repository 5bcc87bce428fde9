#pragma once

#include <span>
#include <string>
#include <vector>

#include "etatheta/addseq.hpp"
#include "etatheta/modcount.hpp"
#include "etatheta/mp.hpp"

namespace etatheta {

/// Coefficient of q^e in the series being summed.
///   Plus         +1
///   Eta          (-1)^n for e = n(3n-1)/2 (Pentagonal only)
///   Alternating  (-1)^n for e = n^2 or n^2 - 1 (Square, AlmostSquare)
enum class SignRule { Plus, Eta, Alternating };

int sign_of(SignRule rule, ExponentKind kind, u64 e);

/// Splitting e = k*m + r of all exponents e <= T. Levels are not stored;
/// eval walks the exponents from the top down.
struct BsgsPlan {
  ExponentKind kind = ExponentKind::Square;
  u64 T = 0;   // largest exponent summed
  u64 N = 0;   // number of terms
  u64 m = 1;
  std::vector<u64> residues;     // distinct r > 0 hit by some e <= T
  AdditionSequence residue_seq;  // covers residues, plus m when T >= m
  u64 insertions = 0;            // helpers added by completion
  u64 levels = 0;                // floor(T/m) + 1

  u64 giant_steps() const noexcept { return T / m; }
};

struct BsgsCostEstimate {
  u64 giant_steps = 0;
  u64 baby_steps = 0;
  double giant = 0;  // real multiplications
  double baby = 0;
  double total = 0;
};

/// Plan with m from choose_m(table, T, g). T is rounded down to the last
/// exponent of the kind.
BsgsPlan plan(ExponentKind kind, u64 T, const MinimaTable& table, unsigned g = 1);
BsgsPlan plan_with_m(ExponentKind kind, u64 T, u64 m);

/// One residue table for several kinds (theta: Square and Trigonal) with m
/// chosen for the largest T and g passes.
std::vector<BsgsPlan> plan_shared(std::span<const ExponentKind> kinds, std::span<const u64> Ts,
                                  const MinimaTable& table, unsigned g);

BsgsCostEstimate estimate(const BsgsPlan& p, unsigned g = 1, const CostModel& model = CostModel::fft());

struct BsgsOptions {
  bool precision_trick = true;
  double log2_inv_q = 0;  // -log2|q|, used for per-level precision
};

/// Sum over e <= plan.T of sign(e) q^e at working precision wp.
Complex eval(const BsgsPlan& plan, const Complex& q, SignRule signs, mpfr_prec_t wp,
             const BsgsOptions& opt = {}, OpCounts* counts = nullptr);

struct BsgsPass {
  const BsgsPlan* plan;
  SignRule signs;
};

/// Baby steps once, then one Horner pass per entry. All plans must share m.
std::vector<Complex> eval_simultaneous(std::span<const BsgsPass> passes, const Complex& q,
                                       mpfr_prec_t wp, const BsgsOptions& opt = {},
                                       OpCounts* counts = nullptr);

/// Cost per term for N terms of `kind`, normalised by 3N.
struct CostCurveRow {
  u64 N = 0;
  u64 T = 0;
  u64 m = 0;
  double classical = 0;
  double optimized = 0;
  double generic = 0;  // NaN above generic_limit
  double bsgs = 0;
};

std::vector<CostCurveRow> cost_curve(ExponentKind kind, std::span<const u64> Ns,
                                     u64 generic_limit = 20000);

std::string to_json(const BsgsPlan& p);

}  // namespace etatheta
