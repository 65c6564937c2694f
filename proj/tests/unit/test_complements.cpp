#include <doctest.h>

#include <numeric>
#include <set>

#include "exmax/complements.hpp"
#include "exmax/error.hpp"
#include "test_support.hpp"

using namespace exmax;
using namespace exmax::complements;
using testing_support::uniform;

namespace {

using Tuple = std::vector<std::uint64_t>;

Tuple act(const Tuple& x, const std::vector<std::vector<std::int64_t>>& w, const Tuple& n) {
    Tuple y(x.size(), 0);
    for (std::size_t j = 0; j < x.size(); ++j) {
        std::int64_t nj = static_cast<std::int64_t>(n[j]);
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < x.size(); ++i) acc += static_cast<std::int64_t>(x[i]) * (((w[i][j] % nj) + nj) % nj);
        y[j] = static_cast<std::uint64_t>(acc % nj);
    }
    return y;
}

Tuple plus(const Tuple& a, const Tuple& b, const Tuple& n) {
    Tuple c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % n[i];
    return c;
}

std::vector<Tuple> all_tuples(const Tuple& n) {
    std::vector<Tuple> out{Tuple(n.size(), 0)};
    for (std::size_t i = 0; i < n.size(); ++i) {
        std::vector<Tuple> next;
        for (auto& t : out)
            for (std::uint64_t v = 0; v < n[i]; ++v) {
                auto u = t;
                u[i] = v;
                next.push_back(u);
            }
        out = next;
    }
    return out;
}

// Naive count: complements are {(wt)^j}; conjugating by every u in T
// sends wt to w(t + u - uW).
std::uint64_t naive_complements(const Tuple& n, const CyclicAction& w) {
    auto elems = all_tuples(n);
    auto power_sum_zero = [&](const Tuple& t) {
        // (wt)^m = w^m (t W^{m-1} + ... + tW + t)
        Tuple acc(n.size(), 0), cur = t;
        for (std::uint64_t k = 0; k < w.order; ++k) {
            acc = plus(acc, cur, n);
            cur = act(cur, w.matrix, n);
        }
        return acc == Tuple(n.size(), 0);
    };
    std::set<Tuple> members;
    for (auto& t : elems)
        if (power_sum_zero(t)) members.insert(t);
    std::set<Tuple> seen;
    std::uint64_t classes = 0;
    for (auto& t : members) {
        if (seen.count(t)) continue;
        ++classes;
        for (auto& u : elems) {
            Tuple neg_uw = act(u, w.matrix, n);
            for (std::size_t i = 0; i < n.size(); ++i) neg_uw[i] = (n[i] - neg_uw[i]) % n[i];
            seen.insert(plus(plus(t, u, n), neg_uw, n));
        }
    }
    return classes;
}

std::uint64_t order_of_action(const Tuple& n, const std::vector<std::vector<std::int64_t>>& w) {
    auto elems = all_tuples(n);
    std::uint64_t m = 1;
    for (;; ++m) {
        bool id = true;
        for (std::size_t i = 0; i < n.size() && id; ++i) {
            Tuple e(n.size(), 0);
            e[i] = 1 % n[i];
            Tuple x = e;
            for (std::uint64_t k = 0; k < m; ++k) x = act(x, w, n);
            id = x == e;
        }
        if (id) return m;
    }
}

// Random automorphism: blocks (Z_n)^r with an invertible matrix mod n.
std::pair<Tuple, CyclicAction> random_instance(std::uint64_t max_order) {
    for (;;) {
        Tuple n;
        std::vector<std::vector<std::int64_t>> blocks_w;
        std::vector<std::pair<std::size_t, std::size_t>> blocks;
        std::uint64_t size = 1;
        int nblocks = static_cast<int>(uniform(1, 2));
        for (int b = 0; b < nblocks; ++b) {
            std::uint64_t mod = uniform(2, 12);
            std::size_t r = uniform(1, 2);
            std::size_t start = n.size();
            for (std::size_t i = 0; i < r; ++i) n.push_back(mod), size *= mod;
            blocks.emplace_back(start, r);
        }
        if (size > max_order) continue;
        std::size_t rank = n.size();
        std::vector<std::vector<std::int64_t>> w(rank, std::vector<std::int64_t>(rank, 0));
        bool ok = true;
        for (auto [start, r] : blocks) {
            std::int64_t mod = static_cast<std::int64_t>(n[start]);
            std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(r));
            for (auto& row : m)
                for (auto& v : row) v = static_cast<std::int64_t>(uniform(0, mod - 1));
            std::int64_t det = r == 1 ? m[0][0] : m[0][0] * m[1][1] - m[0][1] * m[1][0];
            det = ((det % mod) + mod) % mod;
            if (std::gcd(det, mod) != 1) ok = false;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) w[start + i][start + j] = m[i][j];
        }
        if (!ok) continue;
        std::uint64_t m = order_of_action(n, w);
        if (uniform(0, 3) == 0) m *= uniform(2, 3);  // declared order may be a multiple
        if (size * m > 100'000) continue;
        return {n, CyclicAction{w, m}};
    }
}

}  // namespace

TEST_CASE("FinAbelianGroup indexing") {
    FinAbelianGroup t({3, 4});
    CHECK(t.order() == 12);
    CHECK(t.tuple(5) == Tuple{2, 1});
    CHECK(t.index({2, 1}) == 5);
    CHECK(t.add(t.index({2, 3}), t.index({2, 2})) == t.index({1, 1}));
    CHECK(t.neg(t.index({1, 1})) == t.index({2, 3}));
    CHECK_THROWS_AS(FinAbelianGroup({0}), UsageError);
    CHECK(FinAbelianGroup(Tuple{}).order() == 1);
}

TEST_CASE("validation") {
    FinAbelianGroup c4({4});
    CHECK_THROWS_AS(validate(c4, {{{1}}, 0}), UsageError);
    CHECK_THROWS_AS(validate(c4, {{{1, 0}}, 1}), UsageError);
    CHECK_THROWS_AS(validate(c4, {{{-1}}, 3}), UsageError);
    FinAbelianGroup mixed({2, 4});
    CHECK_THROWS_AS(validate(mixed, {{{1, 1}, {0, 1}}, 4}), UsageError);  // e1 of order 2 cannot map onto an element of order 4
    CHECK_NOTHROW(validate(mixed, {{{1, 2}, {0, 1}}, 2}));
    CHECK_THROWS_AS(validate(FinAbelianGroup({10'000'019}), {{{1}}, 1}), LimitExceeded);
}

TEST_CASE("centralizer_order examples") {
    CHECK(centralizer_order(FinAbelianGroup({5, 7}), {{{1, 0}, {0, 1}}, 1}) == 35);
    CHECK(centralizer_order(FinAbelianGroup({4}), {{{-1}}, 2}) == 2);
    CHECK(centralizer_order(FinAbelianGroup({3, 3}), {{{0, 1}, {1, 0}}, 2}) == 3);
}

TEST_CASE("complement_class_bound examples") {
    CHECK(complement_class_bound(FinAbelianGroup({5}), {{{-1}}, 2}) == 1);
    CHECK(complement_class_bound(FinAbelianGroup({4}), {{{-1}}, 2}) == 2);
    CHECK(complement_class_bound(FinAbelianGroup({6}), {{{1}}, 1}) == 1);
    CHECK(complement_class_bound(FinAbelianGroup({12}), {{{1}}, 2}) == 4);
}

TEST_CASE("complement_classes_bruteforce examples") {
    CHECK(complement_classes_bruteforce(FinAbelianGroup({4}), {{{-1}}, 2}) == 2);
    CHECK(complement_classes_bruteforce(FinAbelianGroup(Tuple{}), {{}, 3}) == 1);
    CHECK(complement_classes_bruteforce(FinAbelianGroup({1}), {{{1}}, 5}) == 1);

    // order-12 action on C5 x C5 with no nonzero fixed vector for any nontrivial power
    Tuple n{5, 5};
    std::vector<std::vector<std::int64_t>> found;
    for (int code = 0; code < 625 && found.empty(); ++code) {
        std::vector<std::vector<std::int64_t>> w{{code % 5, code / 5 % 5}, {code / 25 % 5, code / 125}};
        std::int64_t det = ((w[0][0] * w[1][1] - w[0][1] * w[1][0]) % 5 + 5) % 5;
        if (det == 0 || order_of_action(n, w) != 12) continue;
        bool free = true;
        auto elems = all_tuples(n);
        for (int k = 1; k < 12 && free; ++k) {
            for (auto& x : elems)
                if (x != Tuple{0, 0}) {
                    Tuple y = x;
                    for (int j = 0; j < k; ++j) y = act(y, w, n);
                    if (y == x) free = false;
                }
        }
        if (free) found = w;
    }
    REQUIRE_FALSE(found.empty());
    CyclicAction w{found, 12};
    CHECK(complement_classes_bruteforce(FinAbelianGroup(n), w) == 1);
    CHECK(centralizer_order(FinAbelianGroup(n), w) == 1);

    CHECK_THROWS_AS(complement_classes_bruteforce(FinAbelianGroup({50'000}), {{{1}}, 3}), LimitExceeded);
}

TEST_CASE("brute force agrees with a naive orbit count") {
    for (int trial = 0; trial < 60; ++trial) {
        auto [n, w] = random_instance(60);
        FinAbelianGroup t(n);
        CHECK(complement_classes_bruteforce(t, w) == naive_complements(n, w));
    }
}

TEST_CASE("class counts never exceed the bound; coprime gives one class") {
    for (int trial = 0; trial < 200; ++trial) {
        auto [n, w] = random_instance(1000);
        FinAbelianGroup t(n);
        std::uint64_t brute = complement_classes_bruteforce(t, w);
        std::uint64_t bound = complement_class_bound(t, w);
        CHECK(brute >= 1);
        CHECK(brute <= bound);
        if (std::gcd(t.order(), w.order) == 1) CHECK(brute == 1);
    }
}

TEST_CASE("coset wT splits into |C_T(w)| classes when |T| divides a power of m") {
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 60; ++trial) {
        auto [n, w] = random_instance(1000);
        FinAbelianGroup t(n);
        std::uint64_t rest = t.order();
        for (std::uint64_t g; (g = std::gcd(rest, w.order)) > 1;) rest /= g;
        if (rest != 1) continue;
        ++checked;
        CHECK(coset_classes_bruteforce(t, w) == centralizer_order(t, w));
    }
    CHECK(checked >= 20);
}
