#include "exmax/ryba.hpp"

#include "exmax/error.hpp"

namespace exmax::ryba {

using gf::Elem;
using linalg::wedge_index;

AltProduct::AltProduct(gf::Field f, std::size_t dim) : dim_(dim), table_(std::move(f), dim * (dim - 1) / 2, dim) {}

AltProduct AltProduct::from_table(const Matrix& table) {
    std::size_t n = table.cols();
    if (table.rows() != n * (n - 1) / 2) throw UsageError("product table must have C(n,2) rows");
    AltProduct p(table.field(), n);
    p.table_ = table;
    return p;
}

Vector AltProduct::value(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_) throw UsageError("basis index out of range");
    if (i == j) return Vector(dim_, 0);
    if (i < j) return table_.row(wedge_index(i, j, dim_));
    Vector v = table_.row(wedge_index(j, i, dim_));
    for (auto& x : v) x = field().neg(x);
    return v;
}

void AltProduct::set(std::size_t i, std::size_t j, const Vector& v) {
    if (i >= dim_ || j >= dim_ || v.size() != dim_) throw UsageError("bad product entry");
    if (i == j) throw UsageError("alternating product has b(e_i, e_i) = 0");
    std::size_t r = wedge_index(std::min(i, j), std::max(i, j), dim_);
    for (std::size_t k = 0; k < dim_; ++k) table_(r, k) = i < j ? v[k] : field().neg(v[k]);
}

Vector AltProduct::bracket(const Vector& u, const Vector& v) const {
    if (u.size() != dim_ || v.size() != dim_) throw UsageError("vector length does not match product dimension");
    const gf::Field& f = field();
    Vector out(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i + 1; j < dim_; ++j) {
            Elem c = f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i]));
            if (c == 0) continue;
            const Elem* row = table_.row_ptr(wedge_index(i, j, dim_));
            for (std::size_t k = 0; k < dim_; ++k)
                if (row[k]) out[k] = f.add(out[k], f.mul(c, row[k]));
        }
    }
    return out;
}

AltProduct AltProduct::operator+(const AltProduct& o) const {
    if (dim_ != o.dim_) throw UsageError("products of different dimension");
    return from_table(table_ + o.table_);
}

AltProduct AltProduct::scaled(Elem c) const { return from_table(table_.scaled(c)); }

AltProduct linear_combination(const std::vector<AltProduct>& basis, const std::vector<Elem>& coeffs) {
    if (basis.empty() || basis.size() != coeffs.size()) throw UsageError("coefficient count does not match basis");
    AltProduct r = basis.front().scaled(coeffs.front());
    for (std::size_t i = 1; i < basis.size(); ++i) r = r + basis[i].scaled(coeffs[i]);
    return r;
}

std::vector<AltProduct> ryba_space(const rep::MatrixRep& rep) {
    if (rep.dim() > 80) throw LimitExceeded("Ryba space computation limited to dimension 80");
    if (rep.dim() < 2) return {};
    std::vector<AltProduct> out;
    for (auto& x : rep::hom_space(rep.exterior_square(), rep)) out.push_back(AltProduct::from_table(x));
    return out;
}

bool is_equivariant(const AltProduct& prod, const rep::MatrixRep& rep) {
    const std::size_t n = prod.dim();
    if (rep.dim() != n) throw UsageError("product and module dimensions differ");
    for (auto& [name, g] : rep.generators()) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (prod.bracket(g.row(i), g.row(j)) != g.apply_row(prod.value(i, j))) return false;
            }
        }
    }
    return true;
}

std::vector<Triple> all_triples(std::size_t dim) {
    std::vector<Triple> out;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
            for (std::size_t k = j + 1; k < dim; ++k) out.push_back({i, j, k});
    return out;
}

std::vector<Vector> jacobi_residual(const AltProduct& prod, const std::vector<Triple>& triples) {
    const gf::Field& f = prod.field();
    const std::size_t n = prod.dim();
    auto unit = [n](std::size_t i) {
        Vector v(n, 0);
        v[i] = 1;
        return v;
    };
    std::vector<Vector> out;
    for (auto [i, j, k] : triples) {
        if (i >= n || j >= n || k >= n) throw UsageError("triple index out of range");
        Vector a = prod.bracket(prod.value(i, j), unit(k));
        Vector b = prod.bracket(prod.value(j, k), unit(i));
        Vector c = prod.bracket(prod.value(k, i), unit(j));
        Vector s(n);
        for (std::size_t t = 0; t < n; ++t) s[t] = f.add(f.add(a[t], b[t]), c[t]);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::vector<Elem>> jacobi_sweep(const std::vector<AltProduct>& basis, const std::vector<Triple>& triples) {
    if (basis.empty()) return {};
    const gf::Field& f = basis.front().field();
    double points = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) points *= static_cast<double>(f.q());
    if (points > 1e6) throw LimitExceeded("coefficient sweep limited to 10^6 points");
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> c(basis.size(), 0);
    for (;;) {
        auto res = jacobi_residual(linear_combination(basis, c), triples);
        bool zero = true;
        for (auto& v : res)
            for (auto x : v) zero = zero && x == 0;
        if (zero) out.push_back(c);
        std::size_t pos = 0;
        while (pos < c.size() && ++c[pos] == f.q()) c[pos++] = 0;
        if (pos == c.size()) break;
    }
    return out;
}

bool subalgebra_check(const AltProduct& prod, const Subspace& w, const std::vector<AltProduct>& ambient_ryba) {
    if (w.ambient() != prod.dim()) throw UsageError("subspace and product dimensions differ");
    std::vector<const AltProduct*> all{&prod};
    for (auto& p : ambient_ryba) {
        if (p.dim() != prod.dim()) throw UsageError("Ryba basis element has the wrong dimension");
        all.push_back(&p);
    }
    auto basis = w.basis_vectors();
    for (auto* p : all) {
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                if (!w.contains(p->bracket(basis[i], basis[j]))) return false;
    }
    return true;
}

}  // namespace exmax::ryba
