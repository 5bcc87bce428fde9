#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "etatheta/addseq.hpp"
#include "etatheta/exponents.hpp"

namespace etatheta {

enum class DecompForm { Add, DoubleAdd, TripleSum };
enum class Execution { Serial, Parallel };

struct VerificationReport {
  std::string statement;
  u64 range_lo = 0;
  u64 range_hi = 0;
  u64 checked = 0;
  std::vector<u64> counterexamples;
  std::vector<std::string> witnesses;
  double elapsed_seconds = 0;
  bool pass() const noexcept { return counterexamples.empty(); }
};

std::string to_json(const VerificationReport& r);

/// Checks the primality criterion for `form` against a brute-force search over
/// smaller members, for every member c in [threshold, c_max]. Operands may
/// coincide, and 0 counts as a member where the kind has it.
///   Pentagonal   Add: 12c+1 composite    DoubleAdd: always (c >= 5)
///   Trigonal     Add: 2c+1 composite     DoubleAdd: 4c+3 composite   TripleSum: always (c >= 6)
///   AlmostSquare Add: c+2 not p, 2p      DoubleAdd: c+3 not p, 2p, 2p^2   TripleSum: always (c >= 24)
///   QuarterSquare DoubleAdd: always (c > 1)
///   A182568      Add: always (c >= 4)
VerificationReport verify_decomposition(ExponentKind kind, DecompForm form, u64 c_max,
                                        Execution exec = Execution::Parallel);

/// Smallest c the criterion is stated for.
u64 decomposition_threshold(ExponentKind kind, DecompForm form);

enum class PellKind { PentagonalDouble, PentagonalTriple };

/// Pair (c, a) with c = 2a or c = 3a; decimal strings because the
/// recurrences outgrow 128 bits.
struct PellPair {
  std::string c;
  std::string a;
  bool operator==(const PellPair&) const = default;
};

/// First `count` recurrence steps, keeping those whose z, x are coprime to 6
/// and c > 0.
std::vector<PellPair> pell_family(PellKind kind, unsigned count);
/// Exhaustive scan of pentagonal c <= c_max.
std::vector<PellPair> pell_scan(PellKind kind, u64 c_max);

/// Solutions of 3^n - 2 = x^2 for 0 <= n <= n_max; anything other than
/// (1, 1) and (3, 5) is a counterexample.
VerificationReport powers_of_three_check(unsigned n_max);

struct Quadratic {
  long long a, b, c;  // a n^2 + b n + c
  long long operator()(long long n) const noexcept { return (a * n + b) * n + c; }
};

struct DensityResult {
  u64 prime_count = 0;
  double c_hat = 0;  // prime_count * log f(N) / N
};

DensityResult prime_density(const Quadratic& f, u64 N, Execution exec = Execution::Parallel);

/// Step counts of the optimized pentagonal sequence for N terms, read off the
/// decomposition criteria instead of searching. Equals
/// build_optimized(Pentagonal, N).counts().
StepCounts pentagonal_optimized_counts(u64 N, Execution exec = Execution::Parallel);

/// CLI statement ids: pentagonal-add, trigonal-doubleadd, almost-square-triplesum,
/// quarter-square-doubleadd, a182568-add, ..., pell-double, pell-triple,
/// powers-of-three.
VerificationReport verify_statement(std::string_view id, u64 limit);
std::vector<std::string> statement_ids();

}  // namespace etatheta
