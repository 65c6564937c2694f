#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace exmax::nt {

using u64 = std::uint64_t;
using i64 = std::int64_t;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 gcd(u64 a, u64 b);
/// Inverse of a modulo m; throws when gcd(a, m) != 1.
u64 invmod(u64 a, u64 m);
i64 mod(i64 a, i64 m);

/// Deterministic for all 64-bit inputs.
bool is_prime(u64 n);

/// Prime factorisation as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

/// (p, k) with q = p^k, or nullopt when q is not a prime power.
std::optional<std::pair<u64, unsigned>> prime_power(u64 q);

/// Exact integer power; nullopt on overflow past `limit`.
std::optional<u64> checked_pow(u64 base, unsigned exp, u64 limit = ~u64{0});

/// Multiplicative order of a modulo n (gcd(a, n) must be 1).
u64 multiplicative_order(u64 a, u64 n);

std::vector<u64> primes_below(u64 n);

}  // namespace exmax::nt
