#include "etatheta/modcount.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "etatheta/error.hpp"

namespace etatheta {

namespace {

void require_tabulated(ExponentKind kind) {
  if (kind == ExponentKind::QuarterSquare || kind == ExponentKind::A182568) {
    throw error(errc::unsupported_kind,
                "no closed-form value count for " + std::string(to_string(kind)));
  }
}

// r1 = c1/m1 is strictly below r0 = c0/m0.
bool ratio_less(u64 c1, u64 m1, u64 c0, u64 m0) noexcept {
  return static_cast<u128>(c1) * m0 < static_cast<u128>(c0) * m1;
}

constexpr std::array<ExponentKind, 3> kTabulated{ExponentKind::Square, ExponentKind::Trigonal,
                                                 ExponentKind::Pentagonal};

constexpr u64 kSegment = u64{1} << 18;

}  // namespace

u64 s_prime_power(u64 p, unsigned e) {
  if (e == 0) throw error(errc::invalid_argument, "exponent must be at least 1");
  if (!is_prime(p)) throw error(errc::not_prime, std::to_string(p) + " is not prime");
  const auto pe = checked_pow(p, e);
  if (!pe) throw error(errc::invalid_argument, "prime power overflows 64 bits");
  if (p == 2) {
    if (e <= 2) return 2;
    const u64 a = u64{1} << (e - 3);
    const u64 r = ((e + 1) % 2) ? 2 : 1;
    return a + (a - r) / 3 + 2;
  }
  const u64 pe1 = *pe / p;
  const u64 r = ((e + 1) % 2) ? p : 1;
  return (*pe - pe1) / 2 + (pe1 - r) / (2 * (p + 1)) + 1;
}

u64 count_values_prime_power(ExponentKind kind, u64 p, unsigned e) {
  require_tabulated(kind);
  switch (kind) {
    case ExponentKind::Trigonal:
      if (p == 2) return u64{1} << (e - 1);
      break;
    case ExponentKind::Pentagonal:
      if (p == 2 || p == 3) {
        const auto pe = checked_pow(p, e);
        if (!pe) throw error(errc::invalid_argument, "prime power overflows 64 bits");
        return *pe;
      }
      break;
    default:
      break;
  }
  return s_prime_power(p, e);
}

u64 count_values(ExponentKind kind, u64 m) {
  require_tabulated(kind);
  if (m == 0) throw error(errc::invalid_argument, "modulus must be positive");
  u64 total = 1;
  for (const auto& [p, e] : factorize(m)) total *= count_values_prime_power(kind, p, e);
  return total;
}

ResidueProfile residues(ExponentKind kind, u64 m) {
  if (m == 0) throw error(errc::invalid_argument, "modulus must be positive");
  std::vector<char> seen(m, 0);
  auto mark = [&](u128 v) { seen[static_cast<u64>(v % m)] = 1; };
  switch (kind) {
    case ExponentKind::Pentagonal:
      for (u128 n = 0; n < 2 * static_cast<u128>(m); ++n) mark((3 * n * n - n) / 2);
      break;
    case ExponentKind::Trigonal:
      for (u128 n = 0; n < m; ++n) mark(n * (n + 1));
      break;
    case ExponentKind::Square:
      for (u128 n = 0; n < m; ++n) mark(n * n);
      break;
    case ExponentKind::AlmostSquare:
      for (u128 n = 0; n < m; ++n) mark(n * n + m - 1);
      break;
    case ExponentKind::QuarterSquare:
      for (u128 n = 0; n < 2 * static_cast<u128>(m); ++n) mark((n + 1) * (n + 1) / 4);
      break;
    case ExponentKind::A182568:
      for (u128 n = 0; n < 4 * static_cast<u128>(m); ++n) mark(2 * ((n * n) / 8));
      break;
  }
  ResidueProfile out{kind, m, {}};
  for (u64 r = 0; r < m; ++r) {
    if (seen[r]) out.residues.push_back(r);
  }
  return out;
}

std::vector<MinimaTable> successive_minima_all(u64 m_limit) {
  std::vector<MinimaTable> tables;
  for (auto kind : kTabulated) tables.push_back(MinimaTable{kind, {}});
  if (m_limit < 2) return tables;

  const u64 root = isqrt(m_limit);
  const auto small_primes = primes_upto(static_cast<std::uint32_t>(root));

  // count_values_prime_power for every sieving prime and every exponent that fits.
  std::vector<std::array<std::vector<u64>, 3>> pp_counts(small_primes.size());
  for (std::size_t i = 0; i < small_primes.size(); ++i) {
    const u64 p = small_primes[i];
    u64 pe = p;
    for (unsigned e = 1;; ++e) {
      for (std::size_t k = 0; k < 3; ++k) {
        if (pp_counts[i][k].empty()) pp_counts[i][k].push_back(1);
        pp_counts[i][k].push_back(count_values_prime_power(kTabulated[k], p, e));
      }
      if (pe > m_limit / p) break;
      pe *= p;
    }
  }

  const u64 n_seg = (m_limit - 2) / kSegment + 1;
  std::vector<std::array<std::vector<MinimaEntry>, 3>> local(n_seg);

#pragma omp parallel for schedule(dynamic, 1)
  for (long long s = 0; s < static_cast<long long>(n_seg); ++s) {
    const u64 lo = 2 + static_cast<u64>(s) * kSegment;
    const u64 hi = std::min(lo + kSegment, m_limit + 1);
    const u64 len = hi - lo;
    std::vector<std::uint64_t> rem(len);
    std::array<std::vector<u64>, 3> cnt;
    for (u64 j = 0; j < len; ++j) rem[j] = lo + j;
    for (auto& c : cnt) c.assign(len, 1);

    for (std::size_t i = 0; i < small_primes.size(); ++i) {
      const u64 p = small_primes[i];
      for (u64 x = ((lo + p - 1) / p) * p; x < hi; x += p) {
        const u64 j = x - lo;
        unsigned e = 0;
        u64 r = rem[j];
        do {
          r /= p;
          ++e;
        } while (r % p == 0);
        rem[j] = r;
        for (std::size_t k = 0; k < 3; ++k) cnt[k][j] *= pp_counts[i][k][e];
      }
    }

    for (u64 j = 0; j < len; ++j) {
      const u64 q = rem[j];
      if (q > 1) {
        for (std::size_t k = 0; k < 3; ++k) {
          cnt[k][j] *= q > 3 ? (q + 1) / 2 : count_values_prime_power(kTabulated[k], q, 1);
        }
      }
    }

    for (std::size_t k = 0; k < 3; ++k) {
      auto& out = local[s][k];
      for (u64 j = 0; j < len; ++j) {
        const u64 m = lo + j;
        if (out.empty() || ratio_less(cnt[k][j], m, out.back().count, out.back().m)) {
          out.push_back({m, cnt[k][j]});
        }
      }
    }
  }

  // A global record is a segment-local record below everything before it.
  for (std::size_t k = 0; k < 3; ++k) {
    auto& entries = tables[k].entries;
    for (const auto& seg : local) {
      for (const auto& e : seg[k]) {
        if (entries.empty() || ratio_less(e.count, e.m, entries.back().count, entries.back().m)) {
          entries.push_back(e);
        }
      }
    }
  }
  return tables;
}

MinimaTable successive_minima(ExponentKind kind, u64 m_limit) {
  const ExponentKind tk = minima_table_kind(kind);
  for (auto& t : successive_minima_all(m_limit)) {
    if (t.kind == tk) {
      t.kind = kind;
      return t;
    }
  }
  throw error(errc::unsupported_kind, "no minima table for " + std::string(to_string(kind)));
}

MinimaTable successive_minima_reference(ExponentKind kind, u64 m_limit) {
  MinimaTable table{kind, {}};
  for (u64 m = 2; m <= m_limit; ++m) {
    const u64 c = count_values(kind, m);
    if (table.entries.empty() ||
        ratio_less(c, m, table.entries.back().count, table.entries.back().m)) {
      table.entries.push_back({m, c});
    }
  }
  return table;
}

ExponentKind minima_table_kind(ExponentKind kind) {
  switch (kind) {
    case ExponentKind::Square:
    case ExponentKind::AlmostSquare:
      return ExponentKind::Square;
    case ExponentKind::Trigonal:
      return ExponentKind::Trigonal;
    case ExponentKind::Pentagonal:
      return ExponentKind::Pentagonal;
    default:
      throw error(errc::unsupported_kind, "no minima table for " + std::string(to_string(kind)));
  }
}

MinimaEntry choose_m(const MinimaTable& table, u64 T, unsigned g) {
  if (table.entries.empty()) throw error(errc::invalid_argument, "empty minima table");
  if (g == 0) throw error(errc::invalid_argument, "need at least one giant-step pass");
  // Objective g*T/m + c compared as (g*T + c*m)/m by cross-multiplication;
  // numerators stay below 2^97 and table moduli are word-sized.
  auto num = [&](const MinimaEntry& e) { return static_cast<u128>(g) * T + static_cast<u128>(e.count) * e.m; };
  const MinimaEntry* best = &table.entries.front();
  for (const auto& e : table.entries) {
    if (num(e) * best->m < num(*best) * e.m) best = &e;
  }
  return *best;
}

void write_tsv(std::ostream& out, const MinimaTable& table) {
  out << "# " << to_string(table.kind) << " successive minima: m\tcount\tratio\n";
  for (const auto& e : table.entries) {
    out << e.m << '\t' << e.count << '\t' << std::setprecision(10) << e.ratio() << '\n';
  }
}

MinimaTable read_tsv(std::istream& in, ExponentKind kind) {
  MinimaTable table{kind, {}};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    MinimaEntry e;
    if (!(fields >> e.m >> e.count) || e.m < 2 || e.count == 0) {
      throw error(errc::parse_error, "minima TSV line " + std::to_string(lineno) + ": expected m<TAB>count<TAB>ratio");
    }
    if (!table.entries.empty() &&
        (e.m <= table.entries.back().m ||
         !ratio_less(e.count, e.m, table.entries.back().count, table.entries.back().m))) {
      throw error(errc::parse_error,
                  "minima TSV line " + std::to_string(lineno) + ": ratios must be strict record lows");
    }
    table.entries.push_back(e);
  }
  if (table.entries.empty()) throw error(errc::parse_error, "minima TSV has no rows");
  return table;
}

}  // namespace etatheta
