#include "etatheta/exponents.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "etatheta/error.hpp"

namespace etatheta {

namespace {

constexpr std::array<std::pair<ExponentKind, std::string_view>, 6> kKindNames{{
    {ExponentKind::Pentagonal, "pentagonal"},
    {ExponentKind::Trigonal, "trigonal"},
    {ExponentKind::Square, "square"},
    {ExponentKind::AlmostSquare, "almost-square"},
    {ExponentKind::QuarterSquare, "quarter-square"},
    {ExponentKind::A182568, "a182568"},
}};

[[noreturn]] void not_a_member(ExponentKind kind, u64 c) {
  throw error(errc::not_a_member,
              std::to_string(c) + " is not a member of the " + std::string(to_string(kind)) + " sequence");
}

u64 a182568_raw(u64 n) { return 2 * ((n * n) / 8); }

u64 quarter_square_raw(u64 n) { return ((n + 1) * (n + 1)) / 4; }

// Smallest index i with e_i > T, by bisection on the closed-form enumeration.
u64 count_by_bisection(ExponentKind kind, u64 T) {
  u64 lo = 0, hi = 1;
  while (exponent(kind, hi) <= T) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const u64 mid = lo + (hi - lo) / 2;
    if (exponent(kind, mid) <= T) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

std::string_view to_string(ExponentKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExponentKind parse_kind(std::string_view name) {
  std::string norm;
  for (char ch : name) {
    if (ch == '_') ch = '-';
    norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (norm == "almostsquare") norm = "almost-square";
  if (norm == "quartersquare") norm = "quarter-square";
  for (const auto& [k, n] : kKindNames) {
    if (n == norm) return k;
  }
  throw error(errc::invalid_argument, "unknown exponent kind '" + std::string(name) + "'");
}

u64 exponent(ExponentKind kind, u64 i) {
  if (i == 0) throw error(errc::invalid_argument, "exponent index is 1-based");
  switch (kind) {
    case ExponentKind::Pentagonal: {
      const u64 n = i / 2;
      return (i % 2 == 0) ? n * (3 * n - 1) / 2 : n * (3 * n + 1) / 2;
    }
    case ExponentKind::Trigonal:
      return (i - 1) * i;
    case ExponentKind::Square:
      return i * i;
    case ExponentKind::AlmostSquare:
      return i * i - 1;
    case ExponentKind::QuarterSquare:
      return quarter_square_raw(i - 1);
    case ExponentKind::A182568:
      // f(1) = f(2) = 0; the duplicate zero is dropped.
      return a182568_raw(i + 1);
  }
  throw error(errc::unsupported_kind, "unknown exponent kind");
}

bool is_member(ExponentKind kind, u64 c) noexcept {
  switch (kind) {
    case ExponentKind::Pentagonal: {
      const auto z = exact_sqrt(24 * c + 1);
      return z && (*z % 2 != 0) && (*z % 3 != 0);
    }
    case ExponentKind::Trigonal:
      return exact_sqrt(4 * c + 1).has_value();
    case ExponentKind::Square:
      return c >= 1 && is_square(c);
    case ExponentKind::AlmostSquare:
      return is_square(c + 1);
    case ExponentKind::QuarterSquare: {
      // t(2m-1) = m^2, t(2m) = m(m+1)
      const u64 r = isqrt(c);
      return r * r == c || r * (r + 1) == c;
    }
    case ExponentKind::A182568: {
      if (c % 2 != 0) return false;
      // Trigonal, even square or even almost-square.
      if (exact_sqrt(4 * c + 1)) return true;
      const u64 r = isqrt(c);
      if (r * r == c && r % 2 == 0) return true;
      const auto s = exact_sqrt(c + 1);
      return s && (*s % 2 == 1);
    }
  }
  return false;
}

u64 sigma(ExponentKind kind, u64 c) {
  switch (kind) {
    case ExponentKind::Pentagonal:
    case ExponentKind::Trigonal:
    case ExponentKind::AlmostSquare:
    case ExponentKind::Square: {
      if (!is_member(kind, c)) not_a_member(kind, c);
      const u64 arg = kind == ExponentKind::Pentagonal ? 24 * c + 1
                      : kind == ExponentKind::Trigonal ? 4 * c + 1
                      : kind == ExponentKind::AlmostSquare ? c + 1
                                                           : c;
      return isqrt(arg);
    }
    default:
      throw error(errc::unsupported_kind, "no sigma map for " + std::string(to_string(kind)));
  }
}

u64 sigma_inverse(ExponentKind kind, u64 z) {
  switch (kind) {
    case ExponentKind::Pentagonal:
      if (z % 2 == 0 || z % 3 == 0) not_a_member(kind, z);
      return (z * z - 1) / 24;
    case ExponentKind::Trigonal:
      if (z % 2 == 0) not_a_member(kind, z);
      return (z * z - 1) / 4;
    case ExponentKind::AlmostSquare:
      if (z == 0) not_a_member(kind, z);
      return z * z - 1;
    case ExponentKind::Square:
      if (z == 0) not_a_member(kind, z);
      return z * z;
    default:
      throw error(errc::unsupported_kind, "no sigma map for " + std::string(to_string(kind)));
  }
}

int term_sign(u64 c) {
  const u64 z = sigma(ExponentKind::Pentagonal, c);
  // z = 6n - 1 for n >= 1 (ordinary), z = 1 - 6n for n <= 0.
  const u64 n = (z % 6 == 5) ? (z + 1) / 6 : (z - 1) / 6;
  return (n % 2 == 0) ? 1 : -1;
}

int eta_sign_by_index(u64 i) noexcept {
  const u64 n = (i % 2 == 0) ? i / 2 : (i - 1) / 2;
  return (n % 2 == 0) ? 1 : -1;
}

u64 truncation_count(ExponentKind kind, u64 T) {
  switch (kind) {
    case ExponentKind::Pentagonal: {
      // Members correspond to z <= sqrt(24T+1) coprime to 6.
      const u64 z = isqrt(24 * T + 1);
      return (z + 5) / 6 + (z + 1) / 6;
    }
    case ExponentKind::Trigonal:
      return (isqrt(4 * T + 1) - 1) / 2 + 1;
    case ExponentKind::Square:
      return isqrt(T);
    case ExponentKind::AlmostSquare:
      return isqrt(T + 1);
    default:
      return count_by_bisection(kind, T);
  }
}

std::vector<u64> first_exponents(ExponentKind kind, u64 count) {
  std::vector<u64> out;
  out.reserve(count);
  for (u64 i = 1; i <= count; ++i) out.push_back(exponent(kind, i));
  return out;
}

std::vector<u64> exponents_upto(ExponentKind kind, u64 T) {
  return first_exponents(kind, truncation_count(kind, T));
}

}  // namespace etatheta
