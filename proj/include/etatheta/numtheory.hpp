#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Exact 64-bit integer helpers shared by the exponent, decomposition and
// residue-counting code. Nothing here touches floating point results.
namespace etatheta {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// floor(sqrt(n)), exact for all 64-bit n.
u64 isqrt(u64 n) noexcept;

/// Root of n if n is a perfect square.
std::optional<u64> exact_sqrt(u64 n) noexcept;

inline bool is_square(u64 n) noexcept { return exact_sqrt(n).has_value(); }

u64 mulmod(u64 a, u64 b, u64 m) noexcept;
u64 powmod(u64 base, u64 exp, u64 m) noexcept;

/// Deterministic Miller-Rabin for the whole 64-bit range.
bool is_prime(u64 n) noexcept;

struct PrimePower {
  u64 p;
  unsigned e;
  bool operator==(const PrimePower&) const = default;
};

/// Prime factorization in increasing order of p. factorize(1) is empty.
std::vector<PrimePower> factorize(u64 n);

std::vector<std::uint32_t> primes_upto(std::uint32_t n);

/// b^e, or nullopt on 64-bit overflow.
std::optional<u64> checked_pow(u64 b, unsigned e) noexcept;

}  // namespace etatheta
