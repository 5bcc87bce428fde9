#pragma once

#include <iosfwd>
#include <vector>

#include "etatheta/exponents.hpp"
#include "etatheta/numtheory.hpp"

namespace etatheta {

struct ResidueProfile {
  ExponentKind kind;
  u64 m = 0;
  std::vector<u64> residues;  // sorted, distinct
  u64 count() const noexcept { return residues.size(); }
};

struct MinimaEntry {
  u64 m = 0;
  u64 count = 0;
  double ratio() const noexcept { return static_cast<double>(count) / static_cast<double>(m); }
  bool operator==(const MinimaEntry&) const = default;
};

struct MinimaTable {
  ExponentKind kind = ExponentKind::Square;
  std::vector<MinimaEntry> entries;
};

/// Number of squares modulo p^e.
u64 s_prime_power(u64 p, unsigned e);

/// Number of distinct values of the kind's polynomial modulo m, by
/// multiplicativity. QuarterSquare and A182568 are not quadratic in one
/// residue class and are rejected with unsupported_kind.
u64 count_values(ExponentKind kind, u64 m);

/// Count at a single prime power; the building block of count_values.
u64 count_values_prime_power(ExponentKind kind, u64 p, unsigned e);

/// Brute-force enumeration over one full period of the polynomial.
ResidueProfile residues(ExponentKind kind, u64 m);

/// All m <= m_limit whose count(m)/m is a strict record low. Segmented
/// sieve over [2, m_limit], parallel over segments.
MinimaTable successive_minima(ExponentKind kind, u64 m_limit);

/// Same records, found by factoring each m separately. Serial; used to
/// check the sieve.
MinimaTable successive_minima_reference(ExponentKind kind, u64 m_limit);

/// Sieve all three tabulated kinds (Square, Trigonal, Pentagonal) in one pass.
std::vector<MinimaTable> successive_minima_all(u64 m_limit);

/// Entry minimising g*T/m + count(m); ties go to the smaller m.
MinimaEntry choose_m(const MinimaTable& table, u64 T, unsigned g = 1);

/// Shipped tables, up to the limit chosen at build time. AlmostSquare shares
/// the Square table. If ETATHETA_MINIMA_DIR is set, <dir>/<kind>.tsv is read
/// instead.
const MinimaTable& default_minima(ExponentKind kind);

/// Kind whose table default_minima(kind) returns.
ExponentKind minima_table_kind(ExponentKind kind);

void write_tsv(std::ostream& out, const MinimaTable& table);
MinimaTable read_tsv(std::istream& in, ExponentKind kind);

}  // namespace etatheta
