#include "exmax/sl28.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>

#include "exmax/numtheory.hpp"

namespace exmax::sl28 {

using gf::Field;
using gf::FieldElement;

namespace {

constexpr int kMult[3] = {1, 4, 2};
constexpr const char* kLetters = "xyz";

struct F8 {
    Field field = gf::make_field(2, 3);
    int xi = 0;
    int pw[7]{};    // ξ^i
    int log[8]{};   // log of nonzero elements
    int pos[8]{};   // position inside a block, ∞ excluded

    F8() {
        xi = static_cast<int>(gf::primitive_nth_root(field, 7).value());
        Elem v = 1;
        for (int i = 0; i < 7; ++i) {
            pw[i] = static_cast<int>(v);
            log[v] = i;
            v = field.mul(v, xi);
        }
        pos[0] = 1;
        for (int i = 0; i < 7; ++i) pos[pw[i]] = 2 + i;
    }
    int add(int a, int b) const { return static_cast<int>(field.add(a, b)); }
    int mul(int a, int b) const { return static_cast<int>(field.mul(a, b)); }
    int inv(int a) const { return static_cast<int>(field.inv(a)); }
};

const F8& f8() {
    static const F8 instance;
    return instance;
}

std::size_t idx(int block, int sub) { return BasisIndex{static_cast<Block>(block), sub}.index(); }

int mod7(int v) { return ((v % 7) + 7) % 7; }

MonomialGenerator make_g(const std::string& name, int i) {
    MonomialGenerator g{name, {}, {}};
    for (int b = 0; b < 3; ++b) {
        g.image[idx(b, BasisIndex::kInfinity)] = idx(b, BasisIndex::kInfinity);
        for (int l = 0; l < 8; ++l) g.image[idx(b, l)] = idx(b, f8().add(l, i));
    }
    return g;
}

MonomialGenerator make_h(const std::string& name, int j) {
    const F8& F = f8();
    MonomialGenerator g{name, {}, {}};
    int lj = F.log[j];
    int j2 = F.mul(j, j);
    for (int b = 0; b < 3; ++b) {
        int m = kMult[b];
        g.image[idx(b, BasisIndex::kInfinity)] = idx(b, BasisIndex::kInfinity);
        g.zeta_exp[idx(b, BasisIndex::kInfinity)] = mod7(m * lj);
        for (int l = 0; l < 8; ++l) {
            g.image[idx(b, l)] = idx(b, F.mul(l, j2));
            g.zeta_exp[idx(b, l)] = mod7(-m * lj);
        }
    }
    return g;
}

MonomialGenerator make_t(const std::string& name) {
    const F8& F = f8();
    MonomialGenerator g{name, {}, {}};
    for (int b = 0; b < 3; ++b) {
        int m = kMult[b];
        g.image[idx(b, BasisIndex::kInfinity)] = idx(b, 0);
        g.image[idx(b, 0)] = idx(b, BasisIndex::kInfinity);
        for (int l = 1; l < 8; ++l) {
            g.image[idx(b, l)] = idx(b, F.inv(l));
            g.zeta_exp[idx(b, l)] = mod7(m * F.log[l]);
        }
    }
    return g;
}

MonomialGenerator make_s(const std::string& name) {
    const F8& F = f8();
    MonomialGenerator g{name, {}, {}};
    for (int b = 0; b < 3; ++b) {
        g.image[idx(b, BasisIndex::kInfinity)] = idx((b + 1) % 3, BasisIndex::kInfinity);
        for (int l = 0; l < 8; ++l) g.image[idx(b, l)] = idx((b + 1) % 3, F.mul(l, l));
    }
    return g;
}

Matrix to_matrix(const MonomialGenerator& g, const Field& f, const Elem* zeta_pow) {
    Matrix m(f, kDim, kDim);
    for (std::size_t a = 0; a < kDim; ++a) m(a, g.image[a]) = zeta_pow[g.zeta_exp[a]];
    return m;
}

void check_characteristic(std::uint64_t p) {
    if (p == 2 || p == 3 || p == 7) {
        throw UsageError("characteristic " + std::to_string(p) + " is excluded (must avoid 2, 3, 7)");
    }
}

std::pair<std::uint64_t, unsigned> checked_prime_power(std::uint64_t q) {
    auto pk = nt::prime_power(q);
    if (!pk) throw UsageError(std::to_string(q) + " is not a prime power");
    check_characteristic(pk->first);
    return *pk;
}

bool is_qr_mod7(std::uint64_t q) {
    auto r = q % 7;
    return r == 1 || r == 2 || r == 4;
}

std::string triple_name(const SymTrilinearForm& f, std::size_t t) {
    auto [a, b, c] = f.triple(t);
    return "(" + BasisIndex::from_index(a).name() + ", " + BasisIndex::from_index(b).name() + ", " +
           BasisIndex::from_index(c).name() + ")";
}

}  // namespace

std::size_t BasisIndex::index() const {
    int p = sub == kInfinity ? 0 : f8().pos[sub];
    return 9 * static_cast<std::size_t>(block) + static_cast<std::size_t>(p);
}

BasisIndex BasisIndex::from_index(std::size_t i) {
    if (i >= kDim) throw UsageError("basis index out of range");
    Block b = static_cast<Block>(i / 9);
    std::size_t p = i % 9;
    if (p == 0) return {b, kInfinity};
    if (p == 1) return {b, 0};
    return {b, f8().pw[p - 2]};
}

BasisIndex BasisIndex::power(Block b, int e) { return {b, f8().pw[mod7(e)]}; }

BasisIndex BasisIndex::parse(std::string_view name) {
    auto fail = [&] { return UsageError("bad basis name '" + std::string(name) + "'"); };
    if (name.size() < 3 || name[1] != '_') throw fail();
    Block b;
    switch (name[0]) {
        case 'x': b = Block::x; break;
        case 'y': b = Block::y; break;
        case 'z': b = Block::z; break;
        default: throw fail();
    }
    auto sub = name.substr(2);
    if (sub == "inf") return infinity(b);
    if (sub == "0") return zero(b);
    if (sub == "1") return power(b, 0);
    if (sub == "xi") return power(b, 1);
    if (sub.rfind("xi^", 0) == 0) {
        int e = 0;
        auto digits = sub.substr(3);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), e);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || e < 0 || e > 6) throw fail();
        return power(b, e);
    }
    throw fail();
}

std::string BasisIndex::name() const {
    std::string s(1, kLetters[static_cast<int>(block)]);
    s += "_";
    if (sub == kInfinity) return s + "inf";
    if (sub == 0) return s + "0";
    int e = f8().log[sub];
    if (e == 0) return s + "1";
    if (e == 1) return s + "xi";
    return s + "xi^" + std::to_string(e);
}

Vector basis_vector(BasisIndex b) {
    Vector v(kDim, 0);
    v[b.index()] = 1;
    return v;
}

Vector sigma_vector(Block b) {
    Vector v(kDim, 0);
    for (int l = 0; l < 8; ++l) v[BasisIndex{b, l}.index()] = 1;
    return v;
}

Vector e_vector(const Field& f, Block b) {
    Vector v(kDim, 0);
    v[BasisIndex::zero(b).index()] = 1;
    for (int e : {1, 2, 4}) v[BasisIndex::power(b, e).index()] = 1;
    for (int e : {0, 3, 5, 6}) v[BasisIndex::power(b, e).index()] = f.neg(1);
    return v;
}

Module build_rep(const Field& f) {
    check_characteristic(f.p());
    if ((f.q() - 1) % 7 != 0) throw UsageError(f.name() + " has no primitive 7th root of unity");
    return build_rep(gf::primitive_nth_root(f, 7));
}

Module build_rep(const FieldElement& zeta) {
    const Field& f = zeta.field();
    check_characteristic(f.p());
    if (zeta.is_zero() || f.element_order(zeta.value()) != 7) throw UsageError("zeta must have order 7");
    Elem zp[7];
    zp[0] = 1;
    for (int i = 1; i < 7; ++i) zp[i] = f.mul(zp[i - 1], zeta.value());

    const F8& F = f8();
    Module m;
    m.zeta = zeta;
    m.omega = gf::omega_from_zeta(zeta);
    m.monomial = {make_g("g1", 1), make_h("h_xi", F.xi), make_t("t"), make_s("s")};
    std::vector<std::pair<std::string, Matrix>> gens;
    for (auto& g : m.monomial) gens.emplace_back(g.name, to_matrix(g, f, zp));
    std::vector<std::string> relations = {
        "s^3", "t^2", "g1^2", "h_xi^7", "s^-1*g1^-1*s*g1", "s^-1*t^-1*s*t",
        // g_ξ = h_ξ^-4 g1 h_ξ^4 and g_ξ² = h_ξ^-1 g1 h_ξ
        "s^-1*h_xi^-4*g1*h_xi^4*s*h_xi^-1*g1^-1*h_xi",
    };
    m.rep = rep::MatrixRep(f, kDim, std::move(gens), std::move(relations));
    m.rep.verify_relations();

    Matrix g_xi = to_matrix(make_g("g_xi", F.xi), f, zp);
    Matrix g_xi2 = to_matrix(make_g("g_xi2", F.mul(F.xi, F.xi)), f, zp);
    const Matrix& s = m.rep.generator("s");
    if (s.inverse() * g_xi * s != g_xi2) throw InconsistencyError("s^-1 g_xi s != g_xi^2");
    const Matrix& h = m.rep.generator("h_xi");
    if (h.pow(-4) * m.rep.generator("g1") * h.pow(4) != g_xi) throw InconsistencyError("h_xi does not conjugate g1 to g_xi");
    return m;
}

SymTrilinearForm::SymTrilinearForm(Field f, std::size_t dim) : field_(std::move(f)), dim_(dim) {
    lookup_.assign(dim * dim * dim, 0);
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = a; b < dim; ++b)
            for (std::size_t c = b; c < dim; ++c) {
                lookup_[(a * dim + b) * dim + c] = static_cast<std::uint32_t>(triples_.size());
                triples_.push_back({a, b, c});
            }
    values_.assign(triples_.size(), 0);
}

std::size_t SymTrilinearForm::triple_index(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= dim_ || j >= dim_ || k >= dim_) throw UsageError("form index out of range");
    if (i > j) std::swap(i, j);
    if (j > k) std::swap(j, k);
    if (i > j) std::swap(i, j);
    return lookup_[(i * dim_ + j) * dim_ + k];
}

std::array<std::size_t, 3> SymTrilinearForm::triple(std::size_t index) const { return triples_.at(index); }

Elem SymTrilinearForm::evaluate(const Vector& u, const Vector& v, const Vector& w) const {
    if (u.size() != dim_ || v.size() != dim_ || w.size() != dim_) throw UsageError("vector length does not match form");
    const Field& f = field_;
    Elem s = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (v[j] == 0) continue;
            Elem uv = f.mul(u[i], v[j]);
            for (std::size_t k = 0; k < dim_; ++k) {
                if (w[k] == 0) continue;
                Elem val = value(i, j, k);
                if (val) s = f.add(s, f.mul(f.mul(uv, w[k]), val));
            }
        }
    }
    return s;
}

Matrix SymTrilinearForm::bilinear_matrix(const Vector& v) const {
    if (v.size() != dim_) throw UsageError("vector length does not match form");
    const Field& f = field_;
    Matrix m(f, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k) {
                Elem val = value(i, j, k);
                if (val) m(j, k) = f.add(m(j, k), f.mul(v[i], val));
            }
    }
    return m;
}

bool SymTrilinearForm::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](Elem v) { return v == 0; });
}

bool SymTrilinearForm::operator==(const SymTrilinearForm& o) const {
    return dim_ == o.dim_ && field_ == o.field_ && values_ == o.values_;
}

bool satisfies_solved_identities(const Coefficients& c) {
    const Field& f = c.omega.field();
    FieldElement one = gf::element(f, 1), w = c.omega;
    if (w * w != gf::element(f, -7)) return false;
    if (c.c_xy != one || c.c_inf.is_zero()) return false;
    if (c.c != c.c_yx * c.c_yx) return false;
    if (c.c_x != c.c_yx * c.c_yx * (one - w)) return false;
    return c.c_yx.pow(3) * (w + one) == one;
}

FormBuild build_form(const Coefficients& coeffs, const Module& module) {
    const Field& f = module.rep.field();
    for (auto* e : {&coeffs.c_x, &coeffs.c_xy, &coeffs.c_yx, &coeffs.c, &coeffs.c_inf}) {
        if (e->field() != f) throw UsageError("coefficients live over a different field than the module");
    }
    FormBuild out;
    out.form = SymTrilinearForm(f, kDim);
    SymTrilinearForm& form = out.form;
    const std::size_t n = form.triple_count();
    Elem zinv[7];
    Elem z = module.zeta.value();
    Elem zi = f.inv(z);
    zinv[0] = 1;
    for (int i = 1; i < 7; ++i) zinv[i] = f.mul(zinv[i - 1], zi);

    // image triple and zeta exponent of every triple under every generator
    const auto& gens = module.monomial;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>> step(gens.size(), std::vector<std::pair<std::uint32_t, std::uint8_t>>(n));
    for (std::size_t g = 0; g < gens.size(); ++g) {
        for (std::size_t t = 0; t < n; ++t) {
            auto [a, b, c] = form.triple(t);
            auto& G = gens[g];
            step[g][t] = {static_cast<std::uint32_t>(form.triple_index(G.image[a], G.image[b], G.image[c])),
                          static_cast<std::uint8_t>((G.zeta_exp[a] + G.zeta_exp[b] + G.zeta_exp[c]) % 7)};
        }
    }

    std::vector<bool> assigned(n, false);
    std::vector<std::uint32_t> stack;
    auto assign = [&](std::uint32_t t, Elem v) {
        if (assigned[t]) {
            if (form.values()[t] != v) throw PropagationConflict("propagation conflict at " + triple_name(form, t));
            return;
        }
        assigned[t] = true;
        form.values()[t] = v;
        stack.push_back(t);
    };
    auto propagate = [&] {
        while (!stack.empty()) {
            std::uint32_t t = stack.back();
            stack.pop_back();
            for (std::size_t g = 0; g < gens.size(); ++g) {
                auto [u, e] = step[g][t];
                assign(u, f.mul(form.values()[t], zinv[e]));
            }
        }
    };
    auto seed = [&](BasisIndex a, BasisIndex b, BasisIndex c, Elem v) {
        ++out.seeds;
        assign(static_cast<std::uint32_t>(form.triple_index(a.index(), b.index(), c.index())), v);
        propagate();
    };

    using BI = BasisIndex;
    seed(BI::infinity(Block::x), BI::zero(Block::x), BI::power(Block::x, 0), coeffs.c_x.value());
    seed(BI::infinity(Block::x), BI::zero(Block::y), BI::power(Block::y, 0), coeffs.c_xy.value());
    seed(BI::infinity(Block::y), BI::zero(Block::x), BI::power(Block::x, 0), coeffs.c_yx.value());
    seed(BI::infinity(Block::x), BI::infinity(Block::y), BI::infinity(Block::z), coeffs.c_inf.value());
    seed(BI::infinity(Block::x), BI::zero(Block::y), BI::power(Block::z, 0), coeffs.c.value());
    // x_inf singular
    seed(BI::infinity(Block::x), BI::infinity(Block::x), BI::zero(Block::z), 0);
    // h_xi eigenvector triples whose eigenvalue product is not 1
    std::vector<std::pair<BI, int>> eigen;
    for (int b = 0; b < 3; ++b) {
        eigen.emplace_back(BI::infinity(static_cast<Block>(b)), kMult[b]);
        eigen.emplace_back(BI::zero(static_cast<Block>(b)), -kMult[b]);
    }
    for (std::size_t i = 0; i < eigen.size(); ++i)
        for (std::size_t j = i; j < eigen.size(); ++j)
            for (std::size_t k = j; k < eigen.size(); ++k)
                if (mod7(eigen[i].second + eigen[j].second + eigen[k].second) != 0) {
                    seed(eigen[i].first, eigen[j].first, eigen[k].first, 0);
                }

    // classify what propagation never reached
    std::vector<int> rel(n, -1);
    for (std::size_t t = 0; t < n; ++t) {
        if (assigned[t]) {
            ++out.reached;
            continue;
        }
        if (rel[t] >= 0) continue;
        std::vector<std::uint32_t> orbit{static_cast<std::uint32_t>(t)};
        rel[t] = 0;
        bool dead = false;
        for (std::size_t pos = 0; pos < orbit.size(); ++pos) {
            std::uint32_t u = orbit[pos];
            for (std::size_t g = 0; g < gens.size(); ++g) {
                auto [w, e] = step[g][u];
                int r = mod7(rel[u] - e);
                if (rel[w] < 0) {
                    rel[w] = r;
                    orbit.push_back(w);
                } else if (rel[w] != r) {
                    dead = true;
                }
            }
        }
        (dead ? out.unreached_forced_zero : out.unreached_free) += orbit.size();
    }
    return out;
}

bool is_invariant(const SymTrilinearForm& form, const rep::MatrixRep& rep) {
    const Field& f = form.field();
    const std::size_t n = form.dim();
    if (rep.dim() != n || rep.field() != f) throw UsageError("form and representation do not match");
    for (auto& [name, g] : rep.generators()) {
        std::vector<std::vector<std::pair<std::size_t, Elem>>> nz(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (g(i, j)) nz[i].emplace_back(j, g(i, j));
        for (std::size_t t = 0; t < form.triple_count(); ++t) {
            auto [a, b, c] = form.triple(t);
            Elem s = 0;
            for (auto [x, gx] : nz[a])
                for (auto [y, gy] : nz[b]) {
                    Elem xy = f.mul(gx, gy);
                    for (auto [z, gz] : nz[c]) {
                        Elem v = form.value(x, y, z);
                        if (v) s = f.add(s, f.mul(f.mul(xy, gz), v));
                    }
                }
            if (s != form.values()[t]) return false;
        }
    }
    return true;
}

Subspace singular_radical(const SymTrilinearForm& form, const Vector& v) {
    return linalg::kernel(form.bilinear_matrix(v));
}

bool is_singular(const SymTrilinearForm& form, const Vector& v) {
    Matrix m = form.bilinear_matrix(v);
    Vector w = m.apply_col(v);
    return std::all_of(w.begin(), w.end(), [](Elem x) { return x == 0; });
}

Matrix delta_system(const Coefficients& c) {
    const Field& f = c.omega.field();
    FieldElement one = gf::element(f, 1);
    FieldElement wm = c.omega - one, wp = c.omega + one;
    std::vector<std::vector<FieldElement>> rows = {
        {c.c_x, c.c_yx, c.c_xy},
        {c.c_yx * wm, -c.c_xy, -(c.c * wp)},
        {c.c_xy * wm, -(c.c * wp), -(c.c_yx * wp)},
    };
    Matrix m(f, 3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = rows[i][j].value();
    return m;
}

Matrix delta_system_from_form(const SymTrilinearForm& form) {
    const Field& f = form.field();
    Matrix m(f, 3, 3);
    Vector xinf = basis_vector(BasisIndex::infinity(Block::x));
    for (int r = 0; r < 3; ++r) {
        Vector v = basis_vector(BasisIndex::zero(static_cast<Block>(r)));
        for (int c = 0; c < 3; ++c) m(r, c) = form.evaluate(xinf, e_vector(f, static_cast<Block>(c)), v);
    }
    return m;
}

std::vector<Coefficients> solve_coefficients(const Module& module) {
    const Field& f = module.rep.field();
    FieldElement one = gf::element(f, 1);
    FieldElement w = module.omega;
    std::vector<Coefficients> out;
    for (auto& a : gf::nth_roots(one / (w + one), 3)) {
        Coefficients c;
        c.omega = w;
        c.c_xy = one;
        c.c_yx = a;
        c.c = a * a;
        c.c_x = a * a * (one - w);
        c.c_inf = one;
        c.solved = true;
        if (!satisfies_solved_identities(c)) throw InconsistencyError("solved coefficients fail their identities");
        out.push_back(c);
    }
    return out;
}

std::vector<Coefficients> solve_coefficients(const Field& f) { return solve_coefficients(build_rep(f)); }

std::vector<CinfSweepRow> sweep_cinf(const Coefficients& base, const Module& module, const std::vector<Elem>& values) {
    const Field& f = module.rep.field();
    std::vector<CinfSweepRow> out;
    Vector xinf = basis_vector(BasisIndex::infinity(Block::x));
    for (Elem v : values) {
        Coefficients c = base;
        c.c_inf = {f, v};
        FormBuild b = build_form(c, module);
        out.push_back({v, is_invariant(b.form, module.rep), is_singular(b.form, xinf),
                       singular_radical(b.form, xinf).dim()});
    }
    return out;
}

unsigned zeta_degree(std::uint64_t q) {
    if (q % 7 == 0) throw UsageError("no primitive 7th root in characteristic 7");
    return static_cast<unsigned>(nt::multiplicative_order(q % 7, 7));
}

Field zeta_field(std::uint64_t q) {
    auto pk = nt::prime_power(q);
    if (!pk) throw UsageError(std::to_string(q) + " is not a prime power");
    return gf::make_field(pk->first, pk->second * zeta_degree(q));
}

bool h_prime_in_e6_by_field(std::uint64_t q) {
    checked_prime_power(q);
    Field f = gf::make_field_of_order(q);
    return !gf::nth_roots(gf::element(f, -7), 2).empty();
}

bool omega_plus_one_is_cube(std::uint64_t q) {
    checked_prime_power(q);
    Field f = gf::make_field_of_order(q);
    auto roots = gf::detail::nth_roots_by_decomposition(gf::element(f, -7), 2);
    if (roots.empty()) return false;
    return !gf::detail::nth_roots_by_decomposition(roots.front() + gf::element(f, 1), 3).empty();
}

bool h_in_e6_by_field(std::uint64_t q) { return omega_plus_one_is_cube(q); }

bool h_in_e6_by_congruence(std::uint64_t q) {
    auto [p, k] = checked_prime_power(q);
    if (!is_qr_mod7(q)) return false;
    if (q % 3 == 2) return true;
    if (k % 3 == 0) return true;
    // ω lies in GF(q); test (ω+1)^((q-1)/3) = 1 inside the field holding ζ.
    Field big = zeta_field(q);
    FieldElement w = gf::omega_from_zeta(gf::primitive_nth_root(big, 7));
    if (w.pow(q) != w) throw InconsistencyError("Gauss sum is not rational over GF(q)");
    return (w + gf::element(big, 1)).pow((q - 1) / 3) == gf::element(big, 1);
}

EmbeddingDecision embedding_decision(std::uint64_t q) {
    static std::mutex mutex;
    static std::map<std::uint64_t, EmbeddingDecision> memo;
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find(q); it != memo.end()) return it->second;
    }
    auto [p, k] = checked_prime_power(q);
    auto h_in = [](std::uint64_t qq, unsigned kk) {
        if (!is_qr_mod7(qq)) return false;
        return qq % 3 == 2 || kk % 3 == 0 || omega_plus_one_is_cube(qq);
    };
    EmbeddingDecision d;
    d.h_prime_in_e6 = is_qr_mod7(q);
    d.h_prime_in_2e6 = !d.h_prime_in_e6;
    d.h_in_e6 = h_in(q, k);
    auto q2 = nt::checked_pow(q, 2, std::uint64_t{1} << 62);
    if (!q2) throw UsageError("q too large for the twisted decision");
    d.h_in_2e6 = d.h_prime_in_2e6 && h_in(*q2, 2 * k);
    std::lock_guard lock(mutex);
    memo.emplace(q, d);
    return d;
}

std::vector<std::size_t> frobenius_on_forms(std::uint64_t q, const Module& module,
                                            const std::vector<SymTrilinearForm>& forms) {
    const Field& f = module.rep.field();
    auto pk = nt::prime_power(q);
    if (!pk || pk->first != f.p()) throw UsageError("q must be a power of the characteristic");
    int m = static_cast<int>(q % 7);
    if (m != 1 && m != 2 && m != 4) throw UsageError("the q-power map twists the module by the graph automorphism");
    // block b goes to the block whose multiplier is m * mult[b]
    int shift[3];
    for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
            if (kMult[c] == m * kMult[b] % 7) shift[b] = c;
    auto relabel = [&](std::size_t i) { return (shift[i / 9]) * 9 + i % 9; };
    std::vector<std::size_t> perm;
    for (auto& form : forms) {
        if (form.field() != f || form.dim() != kDim) throw UsageError("form does not match the module");
        SymTrilinearForm image(f, kDim);
        for (std::size_t t = 0; t < form.triple_count(); ++t) {
            auto [a, b, c] = form.triple(t);
            image.set(relabel(a), relabel(b), relabel(c), f.pow(form.values()[t], q));
        }
        auto it = std::find(forms.begin(), forms.end(), image);
        if (it == forms.end()) throw InconsistencyError("the q-power map sends a form outside the given list");
        perm.push_back(static_cast<std::size_t>(it - forms.begin()));
    }
    return perm;
}

}  // namespace exmax::sl28
