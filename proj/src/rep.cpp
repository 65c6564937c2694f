#include "exmax/rep.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <unordered_set>

#include "exmax/error.hpp"

namespace exmax::rep {

using gf::Elem;
using linalg::SparseEchelon;
using linalg::Vector;

Word parse_word(std::string_view text) {
    Word w;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty() || s == "1") return w;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t end = s.find('*', pos);
        if (end == std::string::npos) end = s.size();
        std::string tok = s.substr(pos, end - pos);
        if (tok.empty()) throw UsageError("empty factor in word '" + std::string(text) + "'");
        Letter l;
        auto caret = tok.find('^');
        l.generator = tok.substr(0, caret);
        if (l.generator.empty()) throw UsageError("missing generator in word '" + std::string(text) + "'");
        if (caret != std::string::npos) {
            std::string e = tok.substr(caret + 1);
            auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), l.exponent);
            if (ec != std::errc{} || ptr != e.data() + e.size()) {
                throw UsageError("bad exponent in word '" + std::string(text) + "'");
            }
        }
        w.push_back(std::move(l));
        pos = end + 1;
    }
    return w;
}

std::string to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "*";
        s += w[i].generator;
        if (w[i].exponent != 1) s += "^" + std::to_string(w[i].exponent);
    }
    return s;
}

MatrixRep::MatrixRep(gf::Field field, std::size_t dim, std::vector<std::pair<std::string, Matrix>> generators,
                     std::vector<std::string> relations)
    : field_(std::move(field)), dim_(dim), generators_(std::move(generators)), relations_(std::move(relations)) {
    std::set<std::string> seen;
    for (auto& [name, m] : generators_) {
        if (name.empty()) throw UsageError("generators must be named");
        if (!seen.insert(name).second) throw UsageError("duplicate generator name '" + name + "'");
        if (m.field() != field_) throw UsageError("generator '" + name + "' lives over the wrong field");
        if (m.rows() != dim_ || m.cols() != dim_) throw UsageError("generator '" + name + "' has the wrong size");
        if (linalg::rank(m) != dim_) throw UsageError("generator '" + name + "' is not invertible");
    }
    for (auto& r : relations_) {
        for (auto& l : parse_word(r)) generator(l.generator);
    }
}

std::vector<std::string> MatrixRep::generator_names() const {
    std::vector<std::string> out;
    for (auto& g : generators_) out.push_back(g.first);
    return out;
}

const Matrix& MatrixRep::generator(std::string_view name) const {
    for (auto& g : generators_)
        if (g.first == name) return g.second;
    throw UsageError("unknown generator '" + std::string(name) + "'");
}

Matrix MatrixRep::evaluate(const Word& w) const {
    Matrix r = Matrix::identity(field_, dim_);
    for (auto& l : w) r = r * generator(l.generator).pow(l.exponent);
    return r;
}

std::vector<std::string> MatrixRep::failing_relations() const {
    std::vector<std::string> out;
    for (auto& r : relations_)
        if (!evaluate(r).is_identity()) out.push_back(r);
    return out;
}

void MatrixRep::verify_relations() const {
    auto bad = failing_relations();
    if (bad.empty()) return;
    std::string msg = "relations fail:";
    for (auto& b : bad) msg += " " + b;
    throw InconsistencyError(msg);
}

MatrixRep MatrixRep::exterior_square() const {
    std::vector<std::pair<std::string, Matrix>> gens;
    for (auto& [name, m] : generators_) gens.emplace_back(name, linalg::exterior_square(m));
    return MatrixRep(field_, dim_ * (dim_ - 1) / 2, std::move(gens));
}

std::uint64_t enumerate_group(const MatrixRep& rep, std::uint64_t bound) {
    if (bound < 1) throw UsageError("bound must be at least 1");
    std::unordered_set<Matrix, linalg::MatrixHash> seen;
    std::vector<Matrix> frontier{Matrix::identity(rep.field(), rep.dim())};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<Matrix> next;
        for (auto& x : frontier) {
            for (auto& [name, g] : rep.generators()) {
                Matrix y = x * g;
                if (seen.insert(y).second) {
                    if (seen.size() > bound) {
                        throw LimitExceeded("bound exceeded: group has more than " + std::to_string(bound) + " elements");
                    }
                    next.push_back(std::move(y));
                }
            }
        }
        frontier = std::move(next);
    }
    return seen.size();
}

std::vector<Matrix> hom_space(const MatrixRep& a, const MatrixRep& b) {
    if (a.field() != b.field()) throw UsageError("hom_space operands live over different fields");
    auto na = a.generator_names(), nb = b.generator_names();
    if (std::set(na.begin(), na.end()) != std::set(nb.begin(), nb.end()) || na.size() != nb.size()) {
        throw UsageError("hom_space operands have different generator names");
    }
    const gf::Field& f = a.field();
    const std::size_t m = a.dim(), n = b.dim();
    SparseEchelon ech(f);
    // (gA X - X gB)[i][j] = sum_l gA[i][l] X[l][j] - sum_l X[i][l] gB[l][j]
    for (auto& name : na) {
        const Matrix& ga = a.generator(name);
        const Matrix& gb = b.generator(name);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                SparseEchelon::SparseVector row;
                for (std::size_t l = 0; l < m; ++l) {
                    if (ga(i, l) != 0) row[l * n + j] = f.add(row[l * n + j], ga(i, l));
                }
                for (std::size_t l = 0; l < n; ++l) {
                    if (gb(l, j) != 0) row[i * n + l] = f.sub(row[i * n + l], gb(l, j));
                }
                ech.add(std::move(row));
            }
        }
    }
    Subspace k = ech.kernel(m * n);
    std::vector<Matrix> out;
    for (auto& v : k.basis_vectors()) {
        Matrix x(f, m, n);
        std::copy(v.begin(), v.end(), x.row_ptr(0));
        out.push_back(std::move(x));
    }
    return out;
}

Subspace fixed_points(const MatrixRep& rep) {
    const gf::Field& f = rep.field();
    const std::size_t n = rep.dim();
    // v g = v  <=>  (g - I)^T v^T = 0
    std::vector<Vector> rows;
    for (auto& [name, g] : rep.generators()) {
        Matrix d = (g - Matrix::identity(f, n)).transpose();
        for (std::size_t i = 0; i < n; ++i) rows.push_back(d.row(i));
    }
    if (rows.empty()) return Subspace::full(f, n);
    return linalg::kernel(Matrix::from_rows(f, rows, n));
}

namespace {

struct MonomialIndex {
    std::size_t n;
    std::size_t count = 0;
    std::vector<std::size_t> table;

    explicit MonomialIndex(std::size_t dim) : n(dim), table(dim * dim * dim, 0) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b)
                for (std::size_t c = b; c < n; ++c) table[(a * n + b) * n + c] = count++;
    }
    std::size_t operator()(std::size_t a, std::size_t b, std::size_t c) const {
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        return table[(a * n + b) * n + c];
    }
};

}  // namespace

std::size_t sym_cube_fixed_dim(const MatrixRep& rep) {
    const std::size_t n = rep.dim();
    if (n > 40) throw LimitExceeded("symmetric cube limited to dimension 40");
    const gf::Field& f = rep.field();
    MonomialIndex idx(n);
    if (rep.generators().empty()) return idx.count;
    // Fixed vectors are the left kernel of the stacked (S^3 g - I); collect its columns.
    SparseEchelon ech(f);
    for (auto& [name, g] : rep.generators()) {
        std::vector<std::vector<std::pair<std::size_t, Elem>>> nz(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (g(i, j) != 0) nz[i].emplace_back(j, g(i, j));
        std::vector<SparseEchelon::SparseVector> cols(idx.count);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a; b < n; ++b) {
                for (std::size_t c = b; c < n; ++c) {
                    std::size_t src = idx(a, b, c);
                    for (auto [x, gx] : nz[a]) {
                        for (auto [y, gy] : nz[b]) {
                            Elem xy = f.mul(gx, gy);
                            for (auto [z, gz] : nz[c]) {
                                auto& cell = cols[idx(x, y, z)][src];
                                cell = f.add(cell, f.mul(xy, gz));
                            }
                        }
                    }
                    auto& diag = cols[src][src];
                    diag = f.sub(diag, 1);
                }
            }
        }
        for (auto& col : cols) ech.add(std::move(col));
    }
    return idx.count - ech.rank();
}

CompositionProfile::CompositionProfile(std::vector<CompositionFactor> factors) : factors_(std::move(factors)) {
    for (auto& f : factors_) {
        if (f.dim < 1) throw UsageError("composition factor '" + f.label + "' must have positive dimension");
        if (f.h1_dim < 0) throw UsageError("composition factor '" + f.label + "' has negative H1 dimension");
        if (f.is_trivial && f.dim != 1) throw UsageError("trivial factor '" + f.label + "' must have dimension 1");
    }
}

CompositionProfile CompositionProfile::operator+(const CompositionProfile& o) const {
    auto all = factors_;
    all.insert(all.end(), o.factors_.begin(), o.factors_.end());
    return CompositionProfile(std::move(all));
}

std::int64_t pressure(const CompositionProfile& profile) {
    std::int64_t p = 0;
    for (auto& f : profile.factors()) p += f.h1_dim - (f.is_trivial ? 1 : 0);
    return p;
}

}  // namespace exmax::rep
