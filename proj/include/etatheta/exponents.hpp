#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "etatheta/numtheory.hpp"

namespace etatheta {

/// The quadratic exponent sequences behind the eta and theta q-series.
///
///   Pentagonal     n(3n-1)/2, n in Z      0, 1, 2, 5, 7, 12, ...   (eta)
///   Trigonal       n(n+1),    n >= 0      0, 2, 6, 12, 20, ...     (theta2 / q^(1/4))
///   Square         n^2,       n >= 1      1, 4, 9, 16, ...         (theta0, theta1)
///   AlmostSquare   n^2 - 1,   n >= 1      0, 3, 8, 15, ...         (theta0, theta1 / q)
///   QuarterSquare  floor((n+1)^2/4), n >= 0   0, 1, 2, 4, 6, 9, ...
///   A182568        2 floor(n^2/8),  n >= 2   0, 2, 4, 6, 8, 12, ...
///
/// Every kind is enumerated as a strictly increasing list e_1 < e_2 < ...
/// with 1-based indices.
enum class ExponentKind { Pentagonal, Trigonal, Square, AlmostSquare, QuarterSquare, A182568 };

std::string_view to_string(ExponentKind kind) noexcept;
/// Accepts the names produced by to_string (case-insensitive, '-' or '_').
ExponentKind parse_kind(std::string_view name);

/// e_i for i >= 1. Valid while the value fits in 64 bits (i < 2^31 for all kinds).
u64 exponent(ExponentKind kind, u64 i);

bool is_member(ExponentKind kind, u64 c) noexcept;

/// sigma(Pentagonal, c) = sqrt(24c+1), sigma(Trigonal, c) = sqrt(4c+1),
/// sigma(AlmostSquare, c) = sqrt(c+1), sigma(Square, c) = sqrt(c).
u64 sigma(ExponentKind kind, u64 c);
u64 sigma_inverse(ExponentKind kind, u64 z);

/// (-1)^n for the eta term q^(n(3n-1)/2).
int term_sign(u64 c);

/// Sign of the i-th term of the eta series, same as term_sign(exponent(Pentagonal, i)).
int eta_sign_by_index(u64 i) noexcept;

/// (-1)^n for the i-th Square or AlmostSquare term (n = i); used by theta1.
inline int alternating_sign_by_index(u64 i) noexcept { return (i & 1) ? -1 : 1; }

/// #{i : e_i <= T}.
u64 truncation_count(ExponentKind kind, u64 T);

std::vector<u64> first_exponents(ExponentKind kind, u64 count);
std::vector<u64> exponents_upto(ExponentKind kind, u64 T);

}  // namespace etatheta
