#include "exmax/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "exmax/atlas.hpp"
#include "exmax/complements.hpp"
#include "exmax/error.hpp"
#include "exmax/gf.hpp"
#include "exmax/numtheory.hpp"
#include "exmax/rep.hpp"
#include "exmax/ryba.hpp"
#include "exmax/sl28.hpp"

namespace exmax::acceptance {

namespace {

using gf::Elem;
using gf::Field;
using linalg::Matrix;
using linalg::Vector;

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && passed) detail << "FAILED: " << what << "; ";
        passed = passed && ok;
    }
};

// ---- 1: splitting congruences ----

void splitting(Outcome& out) {
    std::size_t checks = 0;
    for (auto p : nt::primes_below(10000)) {
        for (auto id : {gf::PolyId::f1, gf::PolyId::f2, gf::PolyId::f3, gf::PolyId::f4}) {
            bool direct = gf::splits(gf::standard_poly(id), gf::make_field(p, 1));
            out.require(direct == gf::splits_by_congruence(id, p), gf::to_string(id) + " at p=" + std::to_string(p));
            ++checks;
        }
        for (unsigned k = 1; k <= 3; ++k) {
            auto q = *nt::checked_pow(p, k);
            bool direct = gf::splits(gf::standard_poly(gf::PolyId::f5), gf::make_field(p, k));
            out.require(direct == gf::splits_by_congruence(gf::PolyId::f5, q), "f5 at q=" + std::to_string(q));
            ++checks;
        }
    }
    out.detail << checks << " factorizations agree with the congruence classes";
}

// ---- 2: the 27-dimensional representation ----

void representation(Outcome& out) {
    for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{29, 1}, {11, 3}}) {
        auto m = sl28::build_rep(gf::make_field(p, k));
        auto failing = m.rep.failing_relations();
        out.require(failing.empty(), std::to_string(failing.size()) + " relations fail over " + m.rep.field().name());
        auto order = rep::enumerate_group(m.rep, 100000);
        out.require(order == 1512, "group order " + std::to_string(order) + " over " + m.rep.field().name());
        out.detail << m.rep.field().name() << ": " << m.rep.relations().size() << " relations, order " << order << "; ";
    }
}

// ---- 3: the invariant form ----

bool check_form_field(Outcome& out, std::uint64_t q, std::size_t expected_sets, std::vector<Elem> cinf_values) {
    auto f = gf::make_field_of_order(q);
    auto module = sl28::build_rep(f);
    auto sols = sl28::solve_coefficients(module);
    std::string at = " over GF(" + std::to_string(q) + ")";
    out.require(sols.size() == expected_sets, std::to_string(sols.size()) + " coefficient sets" + at);
    for (auto& c : sols) {
        try {
            auto built = sl28::build_form(c, module);
            out.require(sl28::is_invariant(built.form, module.rep), "form not invariant" + at);
        } catch (const sl28::PropagationConflict& e) {
            out.require(false, std::string("propagation conflict") + at + ": " + e.what());
            continue;
        }
        for (auto& row : sl28::sweep_cinf(c, module, cinf_values)) {
            if (row.c_inf == 0) continue;
            out.require(row.invariant && row.x_inf_singular && row.radical_dim == 17,
                        "radical " + std::to_string(row.radical_dim) + " at c_inf=" + f.serialize(row.c_inf) + at);
        }
        auto d = sl28::delta_system(c);
        out.require(linalg::rank(d) == 1 && linalg::kernel(d).dim() == 2, "delta system rank" + at);
    }
    out.detail << "GF(" << q << "): " << sols.size() << " sets; ";
    return !sols.empty();
}

void form(Outcome& out) {
    auto all_values = [](std::uint64_t q) {
        std::vector<Elem> v;
        for (Elem x = 0; x < q; ++x) v.push_back(x);
        return v;
    };
    check_form_field(out, 29, 1, all_values(29));
    check_form_field(out, 113, 1, all_values(113));
    // a field with q = 1 mod 3 and three coefficient sets
    for (auto p : nt::primes_below(500)) {
        if (p % 7 != 1 || p % 3 != 1) continue;
        if (sl28::solve_coefficients(gf::make_field(p, 1)).size() != 3) continue;
        check_form_field(out, p, 3, all_values(p));
        return;
    }
    out.require(false, "no q < 500 with three coefficient sets");
}

// ---- 4: embedding routes ----

void embedding(Outcome& out) {
    std::size_t n = 0;
    for (std::uint64_t q = 2; q < 500; ++q) {
        auto pk = nt::prime_power(q);
        if (!pk || pk->first == 2 || pk->first == 3 || pk->first == 7) continue;
        ++n;
        std::string at = " at q=" + std::to_string(q);
        out.require(sl28::h_in_e6_by_congruence(q) == sl28::h_in_e6_by_field(q), "routes disagree" + at);
        bool residue = q % 7 == 1 || q % 7 == 2 || q % 7 == 4;
        auto d = sl28::embedding_decision(q);
        out.require(d.h_prime_in_e6 == residue && d.h_prime_in_2e6 == !residue, "H' flags" + at);
        out.require(sl28::h_prime_in_e6_by_field(q) == residue, "-7 square test" + at);
        out.require(d.h_in_e6 == sl28::h_in_e6_by_field(q), "decision vs field route" + at);
    }
    out.detail << n << " prime powers";
}

// ---- 5: complements ----

using Orders = std::vector<std::uint64_t>;

std::pair<Orders, complements::CyclicAction> random_instance(std::mt19937_64& rng) {
    auto uniform = [&](std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng); };
    for (;;) {
        Orders n;
        std::vector<std::pair<std::size_t, std::size_t>> blocks;
        std::uint64_t size = 1;
        for (int b = 0, nb = static_cast<int>(uniform(1, 2)); b < nb; ++b) {
            std::uint64_t mod = uniform(2, 12);
            std::size_t r = uniform(1, 2);
            blocks.emplace_back(n.size(), r);
            for (std::size_t i = 0; i < r; ++i) n.push_back(mod), size *= mod;
        }
        if (size > 1000) continue;
        std::vector<std::vector<std::int64_t>> w(n.size(), std::vector<std::int64_t>(n.size(), 0));
        bool ok = true;
        for (auto [start, r] : blocks) {
            auto mod = static_cast<std::int64_t>(n[start]);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) w[start + i][start + j] = static_cast<std::int64_t>(uniform(0, mod - 1));
            auto a = start, b = start + 1;
            std::int64_t det = r == 1 ? w[a][a] : w[a][a] * w[b][b] - w[a][b] * w[b][a];
            ok = ok && std::gcd(nt::mod(det, mod), mod) == 1;
        }
        if (!ok) continue;
        complements::FinAbelianGroup t(n);
        // order of W: smallest m with W^m = 1 on the generators
        std::uint64_t m = 1;
        for (;; ++m) {
            bool id = true;
            for (std::size_t i = 0; i < n.size() && id; ++i) {
                Orders e(n.size(), 0);
                e[i] = 1;
                auto x = t.index(e);
                for (std::uint64_t k = 0; k < m; ++k) x = complements::apply(t, {w, m}, x);
                id = x == t.index(e);
            }
            if (id) break;
        }
        if (uniform(0, 3) == 0) m *= uniform(2, 3);
        if (size * m > 100000) continue;
        return {n, {w, m}};
    }
}

void complement_classes(Outcome& out) {
    complements::FinAbelianGroup c4({4});
    complements::CyclicAction inversion{{{-1}}, 2};
    auto dihedral = complements::complement_classes_bruteforce(c4, inversion);
    out.require(dihedral == 2 && complements::complement_class_bound(c4, inversion) == 2, "dihedral case");

    std::mt19937_64 rng(20240611);
    std::size_t coprime = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto [n, w] = random_instance(rng);
        complements::FinAbelianGroup t(n);
        auto brute = complements::complement_classes_bruteforce(t, w);
        auto bound = complements::complement_class_bound(t, w);
        out.require(brute >= 1 && brute <= bound, "brute " + std::to_string(brute) + " > bound " + std::to_string(bound));
        if (std::gcd(t.order(), w.order) == 1) {
            ++coprime;
            out.require(brute == 1, "coprime instance with " + std::to_string(brute) + " classes");
        }
    }
    out.detail << "dihedral " << dihedral << ", 200 random instances (" << coprime << " coprime)";
}

// ---- 6: Ryba spaces ----

Vector expand(const Field& f, const std::vector<Vector>& table, std::size_t n, const Vector& u, const Vector& v) {
    Vector res(n, 0);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++idx) {
            Elem c = f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i]));
            if (c == 0) continue;
            for (std::size_t k = 0; k < n; ++k) res[k] = f.add(res[k], f.mul(c, table[idx][k]));
        }
    return res;
}

// every table of values on basis pairs, tested against every generator
std::size_t exhaustive_ryba_count(const rep::MatrixRep& r) {
    const Field& f = r.field();
    const std::size_t n = r.dim(), pairs = n * (n - 1) / 2, entries = pairs * n;
    std::size_t total = 1;
    for (std::size_t i = 0; i < entries; ++i) total *= f.q();
    std::size_t count = 0;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<Vector> table(pairs, Vector(n, 0));
        for (std::size_t e = 0, c = code; e < entries; ++e, c /= f.q()) table[e / n][e % n] = c % f.q();
        bool ok = true;
        for (auto& [name, g] : r.generators()) {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < n && ok; ++i)
                for (std::size_t j = i + 1; j < n && ok; ++j, ++idx)
                    ok = expand(f, table, n, g.row(i), g.row(j)) == g.apply_row(table[idx]);
        }
        count += ok;
    }
    return count;
}

std::vector<rep::MatrixRep> ryba_corpus() {
    std::vector<rep::MatrixRep> corpus;
    std::mt19937_64 rng(7);
    for (std::uint64_t p : {2, 3}) {
        auto f = gf::make_field(p, 1);
        for (std::size_t n = 1; n <= 3; ++n) corpus.emplace_back(f, n, std::vector<std::pair<std::string, Matrix>>{});
        corpus.emplace_back(f, 3, std::vector<std::pair<std::string, Matrix>>{
                                      {"c", Matrix::from_ints(f, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})},
                                      {"s", Matrix::from_ints(f, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})}});
        corpus.emplace_back(f, 2, std::vector<std::pair<std::string, Matrix>>{
                                      {"u", Matrix::from_ints(f, {{1, 1}, {0, 1}})}});
        for (int trial = 0; trial < 12; ++trial) {
            std::size_t n = 2 + trial % 2;
            std::vector<std::pair<std::string, Matrix>> gens;
            for (int g = 0; g < 1 + trial % 3 / 2; ++g) {
                Matrix m(f, n, n);
                do {
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng() % p;
                } while (linalg::rank(m) != n);
                gens.emplace_back("g" + std::to_string(g), m);
            }
            corpus.emplace_back(f, n, gens);
        }
    }
    return corpus;
}

// sl2 with basis (e, f, h) and its adjoint action, row i = A^-1 b_i A
Vector sl2_coords(const Matrix& x) { return {x(0, 1), x(1, 0), x(0, 0)}; }

Matrix sl2_matrix(const Field& f, const Vector& v) {
    Matrix m(f, 2, 2);
    m(0, 1) = v[0];
    m(1, 0) = v[1];
    m(0, 0) = v[2];
    m(1, 1) = f.neg(v[2]);
    return m;
}

Vector unit(std::size_t n, std::size_t i) {
    Vector v(n, 0);
    v[i] = 1;
    return v;
}

Matrix adjoint(const Matrix& a) {
    const Field& f = a.field();
    Matrix ad(f, 3, 3), ai = a.inverse();
    for (std::size_t i = 0; i < 3; ++i) {
        auto c = sl2_coords(ai * sl2_matrix(f, unit(3, i)) * a);
        for (std::size_t j = 0; j < 3; ++j) ad(i, j) = c[j];
    }
    return ad;
}

ryba::AltProduct sl2_bracket(const Field& f, std::size_t dim, std::size_t offset) {
    ryba::AltProduct b(f, dim);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            Matrix x = sl2_matrix(f, unit(3, i)), y = sl2_matrix(f, unit(3, j));
            auto c = sl2_coords(x * y - y * x);
            Vector v(dim, 0);
            for (std::size_t k = 0; k < 3; ++k) v[offset + k] = c[k];
            b.set(offset + i, offset + j, v);
        }
    return b;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

void ryba_properties(Outcome& out) {
    auto corpus = ryba_corpus();
    for (auto& r : corpus) {
        std::size_t dim = ryba::ryba_space(r).size();
        std::size_t count = exhaustive_ryba_count(r), expect = 1;
        for (std::size_t i = 0; i < dim; ++i) expect *= r.field().q();
        out.require(count == expect, "Ryba dimension " + std::to_string(dim) + " vs " + std::to_string(count) +
                                         " maps over " + r.field().name());
    }
    for (std::uint64_t p : {3, 5, 7, 11}) {
        auto f = gf::make_field(p, 1);
        for (auto& v : ryba::jacobi_residual(sl2_bracket(f, 3, 0), ryba::all_triples(3)))
            out.require(v == Vector(3, 0), "Jacobi residual over " + f.name());
    }
    auto f = gf::make_field(7, 1);
    auto u = Matrix::from_ints(f, {{1, 1}, {0, 1}}), s = Matrix::from_ints(f, {{0, 1}, {-1, 0}});
    Matrix z(f, 6, 6);
    for (std::size_t i = 0; i < 6; ++i) z(i, i) = i < 3 ? 1 : f.neg(1);
    rep::MatrixRep two(f, 6, {{"u", block_diag(adjoint(u), adjoint(u))}, {"s", block_diag(adjoint(s), adjoint(s))}, {"z", z}});
    auto ambient = ryba::ryba_space(two);
    // z negates the second block, so that block must bracket into the first
    auto prod = sl2_bracket(f, 6, 0);
    for (std::size_t i = 3; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) prod.set(i, j, prod.value(i - 3, j - 3));
    auto block = linalg::Subspace::span(f, 6, {unit(6, 0), unit(6, 1), unit(6, 2)});
    auto skew = linalg::Subspace::span(f, 6, {unit(6, 0), unit(6, 1), unit(6, 3)});
    out.require(ryba::is_equivariant(prod, two), "block bracket not equivariant");
    out.require(ryba::subalgebra_check(prod, block, ambient), "block embedding not a subalgebra");
    out.require(!ryba::subalgebra_check(prod, skew, ambient), "skew subspace accepted");
    out.detail << corpus.size() << " corpus reps, Ryba space of the block sum has dim " << ambient.size();
}

// ---- 7: pressure ----

void pressure_checks(Outcome& out) {
    using rep::CompositionFactor;
    auto fac = [](std::string l, int d, int h, bool t) { return CompositionFactor{std::move(l), d, h, t}; };
    rep::CompositionProfile psl211({fac("10", 10, 0, false), fac("5", 5, 1, false), fac("5", 5, 1, false),
                                    fac("5*", 5, 1, false), fac("1", 1, 0, true), fac("1", 1, 0, true)});
    auto v = rep::pressure(psl211);
    out.require(v == 1, "PSL2(11) profile gives " + std::to_string(v));
    out.require(rep::pressure(rep::CompositionProfile{}) == 0, "empty profile");
    out.require(rep::pressure(rep::CompositionProfile({fac("1", 1, 0, true)})) == -1, "lone trivial factor");
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<CompositionFactor> a, b;
        for (auto* side : {&a, &b})
            for (int i = 0, n = static_cast<int>(rng() % 7); i < n; ++i) {
                bool triv = rng() % 3 == 0;
                side->push_back(fac("x", triv ? 1 : 2 + static_cast<int>(rng() % 29), static_cast<int>(rng() % 4), triv));
            }
        rep::CompositionProfile pa(a), pb(b);
        out.require(rep::pressure(pa + pb) == rep::pressure(pa) + rep::pressure(pb), "additivity");
    }
    out.detail << "PSL2(11) pressure " << v;
}

// ---- 8: atlas ----

void atlas_fidelity(Outcome& out) {
    using namespace atlas;
    const auto& a = Atlas::standard();
    std::map<int, std::size_t> expected{{1, 14}, {2, 12}, {3, 8}, {5, 15}, {6, 19}, {7, 24}, {8, 23}};
    out.require(a.row_counts() == expected, "row counts");

    auto names = [](const std::vector<QueryRow>& rows, int table) {
        std::set<std::string> s;
        for (auto& r : rows)
            if (r.entry->source_table == table) s.insert(r.entry->group_name);
        return s;
    };
    auto count_of = [](const std::vector<QueryRow>& rows, const std::string& g) -> std::int64_t {
        for (auto& r : rows)
            if (r.entry->group_name == g) return r.class_count;
        return 0;
    };
    std::set<std::string> f4_7{"^3D_4(2).3", "PSL_2(8).3", "PGL_2(13)", "PSL_2(25).2", "PSL_2(27).3"};
    out.require(names(query_maximals(a, Family::F4, 7), 1) == f4_7, "F4(7) S-list");
    out.require(count_of(query_maximals(a, Family::E6, 5), "M_12") == 4, "M12 in E6(5)");
    auto u2 = query_maximals(a, Family::E6Twisted, 2);
    out.require(count_of(u2, "Fi_22") == 3, "Fi22 in 2E6(2)");
    out.require(count_of(u2, "Omega_7(3).2") == 0, "Omega_7(3).2 without phi");
    out.require(count_of(query_maximals(a, Family::E6Twisted, 2, {"phi"}), "Omega_7(3).2") == 1, "Omega_7(3).2 with phi");
    out.require(count_of(query_maximals(a, Family::E6, 29), "PGL_2(13)") == 0, "PGL2(13) in E6(29) without gamma");
    out.require(count_of(query_maximals(a, Family::E6, 29, {"gamma"}), "PGL_2(13)") > 0, "PGL2(13) in E6(29) with gamma");
    out.require(count_of(query_maximals(a, Family::E6Twisted, 17), "PGL_2(13)") == 0, "PGL2(13) in 2E6(17) without phi");
    out.require(count_of(query_maximals(a, Family::E6Twisted, 17, {"phi"}), "PGL_2(13)") > 0, "PGL2(13) in 2E6(17) with phi");
    std::size_t rows = 0;
    for (auto& [t, n] : a.row_counts()) rows += n;
    out.detail << rows << " rows in 7 tables";
}

struct CriterionDef {
    const char* title;
    double budget;
    std::function<void(Outcome&)> run;
};

const std::vector<CriterionDef>& definitions() {
    static const std::vector<CriterionDef> s = {
        {"splitting fields of f1..f5 vs congruences, p < 10^4", 5, splitting},
        {"27-dim representation: relations and order 1512", 10, representation},
        {"invariant form: propagation, radical 17, delta rank 1", 180, form},
        {"PSL2(8).3 embedding: congruence route = field route, q < 500", 30, embedding},
        {"complement classes: bound, coprime, dihedral", 30, complement_classes},
        {"Ryba spaces vs exhaustive maps; sl2 Jacobi and subalgebra", 10, ryba_properties},
        {"pressure of the PSL2(11) profile; additivity", 1, pressure_checks},
        {"atlas row counts and spot queries", 1, atlas_fidelity},
    };
    return s;
}

}  // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriteria) throw UsageError("no acceptance criterion " + std::to_string(id));
    const auto& def = definitions()[static_cast<std::size_t>(id - 1)];
    CriterionResult r;
    r.id = id;
    r.title = def.title;
    r.budget_seconds = def.budget;
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
        def.run(out);
    } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = out.passed && r.seconds <= r.budget_seconds;
    r.detail = out.detail.str();
    if (out.passed && !r.passed) r.detail += " (over time budget)";
    return r;
}

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    for (int i = 1; i <= kCriteria; ++i) out.push_back(run_criterion(i));
    return out;
}

std::string format_line(const CriterionResult& r) {
    char timing[64];
    std::snprintf(timing, sizeof timing, "(%.2f s / %.0f s)", r.seconds, r.budget_seconds);
    return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + " " + timing + " " +
           r.detail;
}

}  // namespace exmax::acceptance
