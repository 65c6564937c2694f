#include "exmax/complements.hpp"

#include <string>

#include "exmax/error.hpp"
#include "exmax/numtheory.hpp"

namespace exmax::complements {

namespace {

constexpr std::uint64_t kEnumerationCap = 10'000'000;
constexpr std::uint64_t kBruteForceCap = 100'000;

// Explicit T:<w> with elements (i, t) standing for w^i t.
class SemidirectProduct {
public:
    SemidirectProduct(const FinAbelianGroup& t, const CyclicAction& w) : t_(t), m_(w.order) {
        const std::uint64_t n = t.order();
        power_.assign(m_, std::vector<std::uint64_t>(n));
        for (std::uint64_t x = 0; x < n; ++x) power_[0][x] = x;
        for (std::uint64_t j = 1; j < m_; ++j)
            for (std::uint64_t x = 0; x < n; ++x) power_[j][x] = apply(t, w, power_[j - 1][x]);
    }

    struct Elt {
        std::uint64_t i, t;
        bool operator==(const Elt& o) const { return i == o.i && t == o.t; }
    };

    // (w^i t)(w^j u) = w^(i+j) (t W^j + u)
    Elt mul(Elt a, Elt b) const { return {(a.i + b.i) % m_, t_.add(power_[b.i][a.t], b.t)}; }
    Elt inv(Elt a) const {
        std::uint64_t i = (m_ - a.i) % m_;
        return {i, t_.neg(power_[i][a.t])};
    }
    Elt conj(Elt x, Elt u) const { return mul(mul(inv(u), x), u); }
    Elt identity() const { return {0, 0}; }
    std::uint64_t m() const { return m_; }

private:
    const FinAbelianGroup& t_;
    std::uint64_t m_;
    std::vector<std::vector<std::uint64_t>> power_;
};

// Orbits of T acting by conjugation on the set {w t : t in members}; closure under unit generators.
std::uint64_t conjugation_orbits(const FinAbelianGroup& t, const SemidirectProduct& g, const std::vector<bool>& members) {
    std::vector<SemidirectProduct::Elt> gens;
    for (std::size_t c = 0; c < t.rank(); ++c) {
        std::vector<std::uint64_t> e(t.rank(), 0);
        e[c] = 1 % t.orders()[c];
        gens.push_back({0, t.index(e)});
    }
    const std::uint64_t w_index = g.m() > 1 ? 1 : 0;
    std::vector<bool> seen(t.order(), false);
    std::uint64_t orbits = 0;
    for (std::uint64_t s = 0; s < t.order(); ++s) {
        if (!members[s] || seen[s]) continue;
        ++orbits;
        std::vector<std::uint64_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            std::uint64_t x = stack.back();
            stack.pop_back();
            for (auto& u : gens) {
                auto y = g.conj({w_index, x}, u);
                if (y.i != w_index) throw InconsistencyError("conjugation left the coset wT");
                if (!members[y.t]) throw InconsistencyError("conjugation does not preserve complements");
                if (!seen[y.t]) {
                    seen[y.t] = true;
                    stack.push_back(y.t);
                }
            }
        }
    }
    return orbits;
}

void check_bruteforce_size(const FinAbelianGroup& t, const CyclicAction& w) {
    if (t.order() == 0 || t.order() > kBruteForceCap / w.order) {
        throw LimitExceeded("brute force limited to |T| m <= 100000");
    }
}

}  // namespace

FinAbelianGroup::FinAbelianGroup(std::vector<std::uint64_t> orders) : orders_(std::move(orders)) {
    for (auto n : orders_) {
        if (n < 1) throw UsageError("cyclic factor orders must be at least 1");
        if (order_ != 0 && n > (std::uint64_t{1} << 62) / order_) {
            order_ = 0;
        } else if (order_ != 0) {
            order_ *= n;
        }
    }
}

std::vector<std::uint64_t> FinAbelianGroup::tuple(std::uint64_t index) const {
    std::vector<std::uint64_t> t(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        t[i] = index % orders_[i];
        index /= orders_[i];
    }
    return t;
}

std::uint64_t FinAbelianGroup::index(const std::vector<std::uint64_t>& t) const {
    std::uint64_t r = 0;
    for (std::size_t i = orders_.size(); i-- > 0;) r = r * orders_[i] + t[i] % orders_[i];
    return r;
}

std::uint64_t FinAbelianGroup::add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0, scale = 1;
    for (auto n : orders_) {
        r += ((a % n + b % n) % n) * scale;
        a /= n;
        b /= n;
        scale *= n;
    }
    return r;
}

std::uint64_t FinAbelianGroup::neg(std::uint64_t a) const {
    std::uint64_t r = 0, scale = 1;
    for (auto n : orders_) {
        r += ((n - a % n) % n) * scale;
        a /= n;
        scale *= n;
    }
    return r;
}

std::uint64_t apply(const FinAbelianGroup& t, const CyclicAction& w, std::uint64_t element) {
    auto x = t.tuple(element);
    const auto& ord = t.orders();
    std::vector<std::uint64_t> y(t.rank(), 0);
    for (std::size_t j = 0; j < t.rank(); ++j) {
        std::int64_t n = static_cast<std::int64_t>(ord[j]);
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < t.rank(); ++i) {
            acc = (acc + static_cast<std::int64_t>(x[i] % ord[j]) * nt::mod(w.matrix[i][j], n)) % n;
        }
        y[j] = static_cast<std::uint64_t>(acc);
    }
    return t.index(y);
}

void validate(const FinAbelianGroup& t, const CyclicAction& w) {
    const std::size_t r = t.rank();
    if (w.order < 1) throw UsageError("order of w must be at least 1");
    if (w.matrix.size() != r) throw UsageError("action matrix must be " + std::to_string(r) + "x" + std::to_string(r));
    for (auto& row : w.matrix)
        if (row.size() != r) throw UsageError("action matrix must be square");
    const auto& n = t.orders();
    // e_i has order n_i, so its image must be killed by n_i.
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            std::int64_t v = nt::mod(w.matrix[i][j], static_cast<std::int64_t>(n[j]));
            if (static_cast<std::uint64_t>(v) * n[i] % n[j] != 0) {
                throw UsageError("action matrix is not well defined on the given cyclic factors");
            }
        }
    if (t.order() == 0 || t.order() > kEnumerationCap) throw LimitExceeded("|T| limited to 10^7");
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::uint64_t> e(r, 0);
        e[i] = 1 % n[i];
        std::uint64_t x = t.index(e), y = x;
        for (std::uint64_t k = 0; k < w.order; ++k) y = apply(t, w, y);
        if (y != x) throw UsageError("W^m does not act as the identity");
    }
}

std::uint64_t centralizer_order(const FinAbelianGroup& t, const CyclicAction& w) {
    validate(t, w);
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < t.order(); ++x) count += apply(t, w, x) == x;
    return count;
}

std::uint64_t complement_class_bound(const FinAbelianGroup& t, const CyclicAction& w) {
    std::uint64_t c = centralizer_order(t, w);
    std::uint64_t bound = 1;
    for (auto [p, e] : nt::factorize(c)) {
        if (w.order % p == 0) bound *= nt::checked_pow(p, e).value();
    }
    return bound;
}

std::uint64_t complement_classes_bruteforce(const FinAbelianGroup& t, const CyclicAction& w) {
    validate(t, w);
    check_bruteforce_size(t, w);
    SemidirectProduct g(t, w);
    // A complement is <x> with x in wT of order m; it meets wT only in x.
    std::vector<bool> members(t.order(), false);
    const std::uint64_t w_index = w.order > 1 ? 1 : 0;
    for (std::uint64_t s = 0; s < t.order(); ++s) {
        SemidirectProduct::Elt x{w_index, s}, y = g.identity();
        for (std::uint64_t k = 0; k < w.order; ++k) y = g.mul(y, x);
        members[s] = y == g.identity();
    }
    return conjugation_orbits(t, g, members);
}

std::uint64_t coset_classes_bruteforce(const FinAbelianGroup& t, const CyclicAction& w) {
    validate(t, w);
    check_bruteforce_size(t, w);
    SemidirectProduct g(t, w);
    return conjugation_orbits(t, g, std::vector<bool>(t.order(), true));
}

}  // namespace exmax::complements
