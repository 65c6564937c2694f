#include "exmax/numtheory.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "exmax/error.hpp"

namespace exmax::nt {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 invmod(u64 a, u64 m) {
    if (m == 1) return 0;
    __int128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        __int128 qt = r / nr;
        std::swap(t, nt);
        nt -= qt * t;
        std::swap(r, nr);
        nr -= qt * r;
    }
    if (r != 1) throw UsageError("value is not invertible modulo " + std::to_string(m));
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(u64 n, std::map<u64, unsigned>& out) {
    if (n == 1) return;
    for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    if (n == 0) throw UsageError("cannot factorize 0");
    std::map<u64, unsigned> m;
    factor_into(n, m);
    return {m.begin(), m.end()};
}

std::optional<std::pair<u64, unsigned>> prime_power(u64 q) {
    if (q < 2) return std::nullopt;
    auto f = factorize(q);
    if (f.size() != 1) return std::nullopt;
    return f.front();
}

std::optional<u64> checked_pow(u64 base, unsigned exp, u64 limit) {
    u64 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base) return std::nullopt;
        r *= base;
    }
    if (r > limit) return std::nullopt;
    return r;
}

u64 multiplicative_order(u64 a, u64 n) {
    if (n == 1) return 1;
    if (gcd(a % n, n) != 1) throw UsageError("element is not a unit");
    // phi(n) is a multiple of the order; strip prime factors while possible.
    u64 phi = n;
    for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
    u64 ord = phi;
    for (auto [p, e] : factorize(phi)) {
        for (unsigned i = 0; i < e && ord % p == 0 && powmod(a, ord / p, n) == 1; ++i) ord /= p;
    }
    return ord;
}

std::vector<u64> primes_below(u64 n) {
    std::vector<bool> composite(n, false);
    std::vector<u64> out;
    for (u64 i = 2; i < n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j < n; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace exmax::nt
