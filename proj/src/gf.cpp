#include "exmax/gf.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <numeric>
#include <charconv>
#include <map>
#include <mutex>

#include "exmax/error.hpp"
#include "exmax/numtheory.hpp"

namespace exmax::gf {

using nt::u64;

namespace {

constexpr u64 kTableLimit = u64{1} << 20;
constexpr u64 kMaxOrder = u64{1} << 62;
constexpr unsigned kMaxDegree = 62;

// Dense polynomials over GF(p), constant first; only used to find the modulus.
// p < 2^32 here, so products of residues fit in 64 bits.
using FpPoly = std::vector<u64>;

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, u64 p) {
    fp_trim(a);
    u64 inv_lead = m.back() == 1 ? 1 : nt::invmod(m.back(), p);
    while (a.size() >= m.size()) {
        u64 c = a.back() * inv_lead % p;
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            a[shift + i] = (a[shift + i] + p - c * m[i] % p) % p;
        }
        fp_trim(a);
    }
    return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, u64 p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        }
    }
    return fp_mod(std::move(r), m, p);
}

FpPoly fp_powmod(FpPoly base, u64 e, const FpPoly& m, u64 p) {
    FpPoly r{1};
    base = fp_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = fp_mulmod(r, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return fp_mod(std::move(r), m, p);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        a = fp_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

// x^p mod a monic f, on fixed buffers; the modulus search calls this for every candidate.
FpPoly fp_x_pow_p(const FpPoly& f, u64 p) {
    const std::size_t k = f.size() - 1;
    using Buf = std::array<u64, 2 * kMaxDegree>;
    auto mulmod = [&](const Buf& a, const Buf& b, Buf& out) {
        Buf prod{};
        for (std::size_t i = 0; i < k; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        }
        for (std::size_t i = 2 * k - 1; i-- > k;) {
            u64 c = prod[i];
            if (c == 0) continue;
            for (std::size_t j = 0; j < k; ++j) prod[i - k + j] = (prod[i - k + j] + (p - c) * f[j]) % p;
        }
        std::copy(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(k), out.begin());
    };
    Buf result{}, base{};
    result[0] = 1;
    if (k == 1) base[0] = (p - f[0]) % p;
    else base[1] = 1;
    for (u64 e = p; e; e >>= 1) {
        if (e & 1) mulmod(result, base, result);
        mulmod(base, base, base);
    }
    FpPoly r(result.begin(), result.begin() + static_cast<std::ptrdiff_t>(k));
    fp_trim(r);
    return r;
}

// Rabin's test.
bool fp_irreducible(const FpPoly& f, u64 p) {
    unsigned k = static_cast<unsigned>(f.size() - 1);
    if (k == 1) return true;
    FpPoly x{0, 1};
    // frob[j] = x^(p^j) mod f
    std::vector<FpPoly> frob{fp_mod(x, f, p)};
    frob.push_back(fp_x_pow_p(f, p));
    auto minus_x = [&](FpPoly a) {
        a.resize(std::max<std::size_t>(a.size(), 2), 0);
        a[1] = (a[1] + p - 1) % p;
        fp_trim(a);
        return a;
    };
    // a root is a linear factor; below degree 4 nothing else can split off
    if (fp_gcd(minus_x(frob[1]), f, p).size() != 1) return false;
    if (k <= 3) return true;
    for (unsigned j = 2; j <= k; ++j) frob.push_back(fp_powmod(frob.back(), p, f, p));
    if (!minus_x(frob[k]).empty()) return false;
    for (auto [r, e] : nt::factorize(k)) {
        FpPoly g = fp_gcd(minus_x(frob[k / r]), f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

FpPoly lowest_irreducible(u64 p, unsigned k) {
    // Candidates x^k + sum c_i x^i ordered by the integer sum c_i p^i.
    u64 limit = nt::checked_pow(p, k).value();
    for (u64 n = 0; n < limit; ++n) {
        FpPoly f(k + 1, 0);
        u64 v = n;
        for (unsigned i = 0; i < k; ++i) {
            f[i] = v % p;
            v /= p;
        }
        f[k] = 1;
        if (k > 1 && f[0] == 0) continue;
        // x^k + c has a root when every element is a k-th power
        if (k > 1 && n < p && std::gcd<u64>(k, p - 1) == 1) continue;
        if (fp_irreducible(f, p)) return f;
    }
    throw Error("internal error: no irreducible polynomial found");
}

}  // namespace

struct Field::Impl {
    u64 p = 0;
    unsigned k = 0;
    u64 q = 0;
    std::vector<u64> modulus;
    std::vector<u64> powers;  // p^i, i <= k
    // log tables are built once a small extension field has done about q/4 multiplications
    bool table_eligible = false;
    std::atomic<bool> tables{false};
    mutable std::atomic<u64> untabled_muls{0};
    std::once_flag table_once;
    std::vector<std::uint32_t> exp_table;  // length 2(q-1)
    std::vector<std::uint32_t> log_table;  // length q

    std::once_flag gen_once;
    Elem generator = 0;
    std::once_flag fac_once;
    std::vector<std::pair<u64, unsigned>> factors;

    void unpack(Elem a, u64* d) const {
        for (unsigned i = 0; i < k; ++i) {
            d[i] = a % p;
            a /= p;
        }
    }
    Elem pack(const u64* d) const {
        Elem r = 0;
        for (unsigned i = k; i-- > 0;) r = r * p + d[i];
        return r;
    }

    Elem poly_mul(Elem a, Elem b) const {
        std::array<u64, kMaxDegree> da, db;
        std::array<u64, 2 * kMaxDegree> pr;
        std::fill_n(pr.begin(), 2 * k - 1, 0);
        unpack(a, da.data());
        unpack(b, db.data());
        if (p < (u64{1} << 28)) {
            // k p^2 < 2^64: reduce once per coefficient
            for (unsigned i = 0; i < k; ++i) {
                if (da[i] == 0) continue;
                for (unsigned j = 0; j < k; ++j) pr[i + j] += da[i] * db[j];
            }
            for (unsigned i = 2 * k - 1; i-- > k;) {
                u64 c = pr[i] % p;
                if (c == 0) continue;
                for (unsigned j = 0; j < k; ++j) pr[i - k + j] += (p - c) * modulus[j];
            }
            for (unsigned i = 0; i < k; ++i) pr[i] %= p;
            return pack(pr.data());
        }
        for (unsigned i = 0; i < k; ++i) {
            if (da[i] == 0) continue;
            for (unsigned j = 0; j < k; ++j) {
                pr[i + j] = (pr[i + j] + da[i] * db[j] % p) % p;
            }
        }
        for (unsigned i = 2 * k - 1; i-- > k;) {
            u64 c = pr[i];
            if (c == 0) continue;
            pr[i] = 0;
            for (unsigned j = 0; j < k; ++j) {
                pr[i - k + j] = (pr[i - k + j] + (p - c) * modulus[j] % p) % p;
            }
        }
        return pack(pr.data());
    }

    Elem mul(Elem a, Elem b) const {
        if (k == 1) return nt::mulmod(a, b, p);
        if (a == 0 || b == 0) return 0;
        if (use_tables()) return exp_table[log_table[a] + log_table[b]];
        return poly_mul(a, b);
    }

    Elem pow(Elem a, u64 e) const {
        if (e == 0) return 1;
        if (a == 0) return 0;
        if (k == 1) return nt::powmod(a, e, p);
        if (tables.load(std::memory_order_acquire)) return exp_table[nt::mulmod(log_table[a], e % (q - 1), q - 1)];
        Elem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    // never touches the tables: the generator search runs while they are being built
    Elem pow_untabled(Elem a, u64 e) const {
        if (k == 1) return nt::powmod(a, e, p);
        Elem r = 1;
        for (; e; e >>= 1) {
            if (e & 1) r = poly_mul(r, a);
            a = poly_mul(a, a);
        }
        return r;
    }

    const std::vector<std::pair<u64, unsigned>>& unit_factors() {
        std::call_once(fac_once, [this] {
            if (q > 2) factors = nt::factorize(q - 1);
        });
        return factors;
    }

    bool is_generator(Elem g) {
        if (g == 0) return false;
        for (auto [r, e] : unit_factors()) {
            if (pow_untabled(g, (q - 1) / r) == 1) return false;
        }
        return true;
    }

    Elem find_generator() {
        std::call_once(gen_once, [this] {
            // packed values below p are the prime subfield
            for (Elem g = k > 1 ? p : 1; g < q; ++g) {
                if (is_generator(g)) {
                    generator = g;
                    return;
                }
            }
            throw Error("internal error: no primitive element");
        });
        return generator;
    }

    bool use_tables() const {
        if (tables.load(std::memory_order_acquire)) return true;
        if (!table_eligible || untabled_muls.fetch_add(1, std::memory_order_relaxed) < q / 4) return false;
        auto* self = const_cast<Impl*>(this);
        std::call_once(self->table_once, [self] { self->build_tables(); });
        return true;
    }

    void build_tables() {
        Elem g = find_generator();
        exp_table.assign(2 * (q - 1), 0);
        log_table.assign(q, 0);
        Elem x = 1;
        for (u64 i = 0; i < q - 1; ++i) {
            exp_table[i] = exp_table[i + q - 1] = static_cast<std::uint32_t>(x);
            log_table[x] = static_cast<std::uint32_t>(i);
            x = poly_mul(x, g);
        }
        tables.store(true, std::memory_order_release);
    }
};

Field make_field(u64 p, unsigned k) {
    if (k < 1) throw UsageError("extension degree must be at least 1");
    if (p < 2 || !nt::is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
    if (p >= (u64{1} << 32)) throw UsageError("characteristic must be below 2^32");
    auto q = nt::checked_pow(p, k, kMaxOrder);
    if (!q) throw UsageError("field order exceeds 2^62");

    static std::mutex cache_mutex;
    static std::map<std::pair<u64, unsigned>, std::shared_ptr<Field::Impl>> cache;
    {
        std::lock_guard lock(cache_mutex);
        auto it = cache.find({p, k});
        if (it != cache.end()) {
            Field f;
            f.impl_ = it->second;
            return f;
        }
    }

    auto impl = std::make_shared<Field::Impl>();
    impl->p = p;
    impl->k = k;
    impl->q = *q;
    impl->modulus = lowest_irreducible(p, k);
    impl->powers.push_back(1);
    for (unsigned i = 0; i < k; ++i) impl->powers.push_back(impl->powers.back() * p);
    impl->table_eligible = k > 1 && *q <= kTableLimit;

    {
        std::lock_guard lock(cache_mutex);
        cache.emplace(std::pair{p, k}, impl);
    }
    Field f;
    f.impl_ = std::move(impl);
    return f;
}

Field make_field_of_order(u64 q) {
    auto pk = nt::prime_power(q);
    if (!pk) throw UsageError(std::to_string(q) + " is not a prime power");
    return make_field(pk->first, pk->second);
}

u64 Field::p() const { return impl_->p; }
unsigned Field::k() const { return impl_->k; }
u64 Field::q() const { return impl_->q; }
const std::vector<u64>& Field::modulus() const { return impl_->modulus; }

Elem Field::add(Elem a, Elem b) const {
    const Impl& f = *impl_;
    if (f.k == 1) {
        Elem s = a + b;
        return s >= f.p ? s - f.p : s;
    }
    if (f.p == 2) return a ^ b;
    Elem r = 0;
    for (unsigned i = 0; i < f.k; ++i) {
        u64 s = a % f.p + b % f.p;
        if (s >= f.p) s -= f.p;
        r += s * f.powers[i];
        a /= f.p;
        b /= f.p;
    }
    return r;
}

Elem Field::neg(Elem a) const {
    const Impl& f = *impl_;
    if (f.k == 1) return a == 0 ? 0 : f.p - a;
    if (f.p == 2) return a;
    Elem r = 0;
    for (unsigned i = 0; i < f.k; ++i) {
        u64 d = a % f.p;
        r += (d == 0 ? 0 : f.p - d) * f.powers[i];
        a /= f.p;
    }
    return r;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const { return impl_->mul(a, b); }

Elem Field::inv(Elem a) const {
    if (a == 0) throw UsageError("division by zero in " + name());
    const Impl& f = *impl_;
    if (f.k == 1) return nt::invmod(a, f.p);
    if (f.tables.load(std::memory_order_acquire)) return f.exp_table[(f.q - 1 - f.log_table[a]) % (f.q - 1)];
    return f.pow(a, f.q - 2);
}

Elem Field::pow(Elem a, u64 e) const { return impl_->pow(a, e); }

Elem Field::from_int(std::int64_t v) const {
    return static_cast<Elem>(nt::mod(v, static_cast<std::int64_t>(impl_->p)));
}

std::vector<u64> Field::coeffs(Elem a) const {
    std::vector<u64> c(impl_->k);
    impl_->unpack(a, c.data());
    return c;
}

Elem Field::from_coeffs(const std::vector<u64>& c) const {
    if (c.size() > impl_->k) throw UsageError("too many coefficients for " + name());
    std::array<u64, kMaxDegree> d{};
    for (std::size_t i = 0; i < c.size(); ++i) d[i] = c[i] % impl_->p;
    return impl_->pack(d.data());
}

Elem Field::frobenius(Elem a, unsigned times) const {
    times %= impl_->k;
    return pow(a, impl_->powers[times]);
}

Elem Field::primitive_element() const { return impl_->find_generator(); }

const std::vector<std::pair<u64, unsigned>>& Field::unit_group_factors() const {
    return impl_->unit_factors();
}

u64 Field::element_order(Elem a) const {
    if (a == 0) throw UsageError("zero has no multiplicative order");
    u64 ord = impl_->q - 1;
    for (auto [r, e] : unit_group_factors()) {
        while (ord % r == 0 && pow(a, ord / r) == 1) ord /= r;
    }
    return ord;
}

std::string Field::name() const {
    if (impl_->k == 1) return "GF(" + std::to_string(impl_->p) + ")";
    return "GF(" + std::to_string(impl_->p) + "^" + std::to_string(impl_->k) + ")";
}

std::string Field::serialize(Elem a) const {
    std::string s = std::to_string(impl_->p) + "^" + std::to_string(impl_->k) + ":[";
    auto c = coeffs(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s + "]";
}

Elem Field::parse(std::string_view text) const {
    auto fail = [&] { return UsageError("cannot parse field element '" + std::string(text) + "'"); };
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw fail();
    std::string head(text.substr(0, colon));
    std::string expected = std::to_string(impl_->p) + "^" + std::to_string(impl_->k);
    if (head != expected) throw UsageError("element '" + std::string(text) + "' is not in " + name());
    auto body = text.substr(colon + 1);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') throw fail();
    body = body.substr(1, body.size() - 2);
    std::vector<u64> c;
    while (!body.empty()) {
        auto comma = body.find(',');
        auto tok = body.substr(0, comma);
        u64 v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || v >= impl_->p) throw fail();
        c.push_back(v);
        if (comma == std::string_view::npos) break;
        body = body.substr(comma + 1);
    }
    if (c.size() != impl_->k) throw fail();
    return from_coeffs(c);
}

bool Field::operator==(const Field& o) const {
    if (impl_ == o.impl_) return true;
    if (!impl_ || !o.impl_) return false;
    return impl_->p == o.impl_->p && impl_->k == o.impl_->k;
}

FieldElement element(const Field& f, std::int64_t v) { return {f, f.from_int(v)}; }

FieldElement primitive_nth_root(const Field& f, u64 n) {
    if (n == 0 || (f.q() - 1) % n != 0) {
        throw UsageError("no such root: " + std::to_string(n) + " does not divide " + std::to_string(f.q() - 1));
    }
    return {f, f.pow(f.primitive_element(), (f.q() - 1) / n)};
}

FieldElement omega_from_zeta(const FieldElement& zeta) {
    const Field& f = zeta.field();
    if (f.p() == 7) throw UsageError("omega is undefined in characteristic 7");
    if (zeta.is_zero() || f.element_order(zeta.value()) != 7) {
        throw UsageError("zeta must have multiplicative order 7");
    }
    Elem z[7];
    z[0] = 1;
    for (int i = 1; i < 7; ++i) z[i] = f.mul(z[i - 1], zeta.value());
    Elem w = f.add(f.add(z[1], z[2]), z[4]);
    w = f.sub(f.sub(f.sub(w, z[3]), z[5]), z[6]);
    return {f, w};
}

namespace {

// Discrete logarithm of a in the cyclic group of order r generated by g, r prime.
u64 prime_order_log(const Field& f, Elem g, Elem a, u64 r) {
    if (r <= (u64{1} << 16)) {
        Elem x = 1;
        for (u64 d = 0; d < r; ++d) {
            if (x == a) return d;
            x = f.mul(x, g);
        }
        throw Error("internal error: discrete logarithm not found");
    }
    // baby-step giant-step
    u64 m = 1;
    while (m * m < r) ++m;
    std::map<Elem, u64> baby;
    Elem x = 1;
    for (u64 j = 0; j < m; ++j) {
        baby.emplace(x, j);
        x = f.mul(x, g);
    }
    Elem giant = f.inv(f.pow(g, m));
    Elem y = a;
    for (u64 i = 0; i < m; ++i) {
        auto it = baby.find(y);
        if (it != baby.end()) return i * m + it->second;
        y = f.mul(y, giant);
    }
    throw Error("internal error: discrete logarithm not found");
}

// Pohlig-Hellman: log of a to base g where g has order `order` with known factorisation.
u64 discrete_log(const Field& f, Elem g, Elem a, u64 order, const std::vector<std::pair<u64, unsigned>>& fac) {
    u64 result = 0, modulus = 1;
    for (auto [r, e] : fac) {
        u64 re = nt::checked_pow(r, e).value();
        Elem gr = f.pow(g, order / re);
        Elem ar = f.pow(a, order / re);
        Elem gamma = f.pow(gr, re / r);
        u64 x = 0, rpow = 1;
        for (unsigned i = 0; i < e; ++i) {
            Elem h = f.mul(f.inv(f.pow(gr, x)), ar);
            h = f.pow(h, re / (rpow * r));
            x += prime_order_log(f, gamma, h, r) * rpow;
            rpow *= r;
        }
        // combine x mod re with result mod modulus
        u64 t = nt::mulmod((x + re - result % re) % re, nt::invmod(modulus % re, re), re);
        result += modulus * t;
        modulus *= re;
    }
    return result;
}

}  // namespace

std::vector<FieldElement> nth_roots(const FieldElement& a, u64 n) {
    if (n == 0) throw UsageError("root index must be at least 1");
    const Field& f = a.field();
    if (a.is_zero()) return {a};
    if (f.q() > kTableLimit) return detail::nth_roots_by_decomposition(a, n);
    std::vector<FieldElement> out;
    for (Elem x = 1; x < f.q(); ++x) {
        if (f.pow(x, n) == a.value()) out.emplace_back(f, x);
    }
    return out;
}

std::vector<FieldElement> detail::nth_roots_by_decomposition(const FieldElement& a, u64 n) {
    if (n == 0) throw UsageError("root index must be at least 1");
    const Field& f = a.field();
    if (a.is_zero()) return {a};
    const u64 q = f.q();
    std::vector<FieldElement> out;
    const u64 order = q - 1;
    const u64 d = nt::gcd(n, order);
    if (f.pow(a.value(), order / d) != 1) return out;

    // order = m1 * m2, m1 carrying exactly the primes shared with n.
    u64 m1 = 1;
    std::vector<std::pair<u64, unsigned>> fac1;
    for (auto [r, e] : f.unit_group_factors()) {
        if (n % r == 0) {
            m1 *= nt::checked_pow(r, e).value();
            fac1.emplace_back(r, e);
        }
    }
    const u64 m2 = order / m1;
    const u64 e1 = m1 == 1 ? 0 : nt::mulmod(nt::invmod(m2 % m1, m1), m2, order);
    const u64 e2 = (order + 1 - e1) % order;
    Elem a1 = f.pow(a.value(), e1);
    Elem a2 = f.pow(a.value(), e2);
    Elem x2 = m2 == 1 ? 1 : f.pow(a2, nt::invmod(n % m2, m2));
    Elem x1 = 1;
    if (m1 > 1) {
        Elem g1 = f.pow(f.primitive_element(), m2);
        u64 l = discrete_log(f, g1, a1, m1, fac1);
        u64 d1 = nt::gcd(n, m1);
        if (l % d1 != 0) return out;
        u64 mm = m1 / d1;
        u64 x = mm == 1 ? 0 : nt::mulmod(l / d1, nt::invmod((n / d1) % mm, mm), mm);
        x1 = f.pow(g1, x);
    }
    Elem root = f.mul(x1, x2);
    Elem mu = primitive_nth_root(f, d).value();
    Elem y = root;
    for (u64 i = 0; i < d; ++i) {
        out.emplace_back(f, y);
        y = f.mul(y, mu);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Poly::Poly(Field f, std::vector<Elem> c) : field_(std::move(f)), c_(std::move(c)) { trim(); }

Poly Poly::from_integers(const Field& f, const std::vector<std::int64_t>& c) {
    std::vector<Elem> e;
    e.reserve(c.size());
    for (auto v : c) e.push_back(f.from_int(v));
    return {f, std::move(e)};
}

Poly Poly::monomial(const Field& f, Elem c, std::size_t deg) {
    std::vector<Elem> e(deg + 1, 0);
    e[deg] = c;
    return {f, std::move(e)};
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Elem Poly::eval(Elem x) const {
    Elem r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = field_.add(field_.mul(r, x), c_[i]);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        Elem a = i < c_.size() ? c_[i] : 0;
        Elem b = i < o.c_.size() ? o.c_[i] : 0;
        r[i] = field_.add(a, b);
    }
    return {field_, std::move(r)};
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        Elem a = i < c_.size() ? c_[i] : 0;
        Elem b = i < o.c_.size() ? o.c_[i] : 0;
        r[i] = field_.sub(a, b);
    }
    return {field_, std::move(r)};
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {field_, {}};
    std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            r[i + j] = field_.add(r[i + j], field_.mul(c_[i], o.c_[j]));
        }
    }
    return {field_, std::move(r)};
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Elem inv = field_.inv(lead());
    std::vector<Elem> r(c_);
    for (auto& v : r) v = field_.mul(v, inv);
    return {field_, std::move(r)};
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw UsageError("polynomial division by zero");
    std::vector<Elem> rem(c_);
    if (rem.size() < d.c_.size()) return {Poly{field_, {}}, *this};
    std::vector<Elem> quo(rem.size() - d.c_.size() + 1, 0);
    Elem inv = field_.inv(d.lead());
    const std::size_t dn = d.c_.size();
    for (std::size_t top = rem.size(); top >= dn; --top) {
        Elem c = field_.mul(rem[top - 1], inv);
        std::size_t shift = top - dn;
        quo[shift] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < dn; ++j) {
            rem[shift + j] = field_.sub(rem[shift + j], field_.mul(c, d.c_[j]));
        }
    }
    return {Poly{field_, std::move(quo)}, Poly{field_, std::move(rem)}};
}

Poly Poly::powmod(const Poly& base, u64 e, const Poly& m) {
    Poly r{base.field_, {1}};
    r = r.mod(m);
    Poly b = base.mod(m);
    while (e) {
        if (e & 1) r = (r * b).mod(m);
        b = (b * b).mod(m);
        e >>= 1;
    }
    return r;
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

bool splits(const Poly& f) {
    if (f.degree() < 1) throw UsageError("splitting test needs a nonconstant polynomial");
    const Field& F = f.field();
    Poly x{F, {0, 1}};
    Poly g = f.monic();
    while (g.degree() > 0) {
        Poly h = Poly::powmod(x, F.q(), g) - x;
        Poly d = Poly::gcd(g, h);
        if (d.degree() == 0) return false;
        g = g.divmod(d).first;
    }
    return true;
}

bool splits(const std::vector<std::int64_t>& f, const Field& field) {
    return splits(Poly::from_integers(field, f));
}

PolyId parse_poly_id(std::string_view s) {
    if (s == "f1") return PolyId::f1;
    if (s == "f2") return PolyId::f2;
    if (s == "f3") return PolyId::f3;
    if (s == "f4") return PolyId::f4;
    if (s == "f5") return PolyId::f5;
    throw UsageError("unknown polynomial id '" + std::string(s) + "'");
}

std::string to_string(PolyId id) { return "f" + std::to_string(static_cast<int>(id) + 1); }

std::vector<std::int64_t> standard_poly(PolyId id) {
    switch (id) {
        case PolyId::f1: return {-4, -1, 1};
        case PolyId::f2: return {3, 1, 1};
        case PolyId::f3: return {-1, 1, 1};
        case PolyId::f4: return {5, 1, 1};
        case PolyId::f5: return {1, -2, -1, 1};
    }
    throw UsageError("unknown polynomial id");
}

bool splits_by_congruence(PolyId id, u64 q) {
    auto pk = nt::prime_power(q);
    if (!pk) throw UsageError(std::to_string(q) + " is not a prime power");
    auto [p, k] = *pk;
    auto in = [](u64 v, u64 m, std::initializer_list<u64> residues) {
        return std::find(residues.begin(), residues.end(), v % m) != residues.end();
    };
    if (id == PolyId::f5) return in(q, 7, {0, 1, 6});
    if (k % 2 == 0) return true;
    switch (id) {
        case PolyId::f1: return in(p, 17, {0, 1, 16, 2, 15, 4, 13, 8, 9});
        case PolyId::f2: return in(p, 11, {0, 1, 3, 4, 5, 9});
        case PolyId::f3: return in(p, 5, {0, 1, 4});
        case PolyId::f4: return in(p, 19, {0, 1, 4, 5, 6, 7, 9, 11, 16, 17});
        default: break;
    }
    throw UsageError("unknown polynomial id");
}

}  // namespace exmax::gf
