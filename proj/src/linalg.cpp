#include "exmax/linalg.hpp"

#include <functional>

#include "exmax/error.hpp"

namespace exmax::linalg {

namespace {

void require_same_field(const Field& a, const Field& b) {
    if (a != b) throw UsageError("operands live over different fields: " + a.name() + " vs " + b.name());
}

}  // namespace

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw UsageError("ragged matrix rows");
        std::copy(rows[i].begin(), rows[i].end(), m.row_ptr(i));
    }
    return m;
}

Matrix Matrix::from_ints(const Field& f, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw UsageError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = f.from_int(rows[i][j]);
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require_same_field(field_, o.field_);
    if (cols_ != o.rows_) throw UsageError("matrix product dimension mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Elem* out = r.row_ptr(i);
        for (std::size_t l = 0; l < cols_; ++l) {
            Elem a = (*this)(i, l);
            if (a == 0) continue;
            const Elem* in = o.row_ptr(l);
            for (std::size_t j = 0; j < o.cols_; ++j) {
                if (in[j] != 0) out[j] = field_.add(out[j], field_.mul(a, in[j]));
            }
        }
    }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require_same_field(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix sum dimension mismatch");
    Matrix r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    require_same_field(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix difference dimension mismatch");
    Matrix r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], o.data_[i]);
    return r;
}

Matrix Matrix::scaled(Elem c) const {
    Matrix r(*this);
    for (auto& v : r.data_) v = field_.mul(v, c);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix Matrix::inverse() const {
    if (!is_square()) throw UsageError("only square matrices have inverses");
    const std::size_t n = rows_;
    Matrix aug(field_, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(row_ptr(i), row_ptr(i) + n, aug.row_ptr(i));
        aug(i, n + i) = 1;
    }
    Rref r = rref(aug);
    if (r.rank < n || r.pivots[n - 1] != n - 1) throw UsageError("matrix is singular");
    Matrix inv(field_, n, n);
    for (std::size_t i = 0; i < n; ++i) std::copy(r.matrix.row_ptr(i) + n, r.matrix.row_ptr(i) + 2 * n, inv.row_ptr(i));
    return inv;
}

Matrix Matrix::pow(std::int64_t e) const {
    if (!is_square()) throw UsageError("only square matrices have powers");
    Matrix base = e < 0 ? inverse() : *this;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    Matrix r = identity(field_, rows_);
    while (n) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return r;
}

Vector Matrix::apply_row(const Vector& v) const {
    if (v.size() != rows_) throw UsageError("vector length does not match matrix rows");
    Vector r(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (v[i] == 0) continue;
        const Elem* in = row_ptr(i);
        for (std::size_t j = 0; j < cols_; ++j) {
            if (in[j] != 0) r[j] = field_.add(r[j], field_.mul(v[i], in[j]));
        }
    }
    return r;
}

Vector Matrix::apply_col(const Vector& v) const {
    if (v.size() != cols_) throw UsageError("vector length does not match matrix columns");
    Vector r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const Elem* in = row_ptr(i);
        Elem s = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (in[j] != 0 && v[j] != 0) s = field_.add(s, field_.mul(in[j], v[j]));
        }
        r[i] = s;
    }
    return r;
}

bool Matrix::is_zero() const {
    for (auto v : data_)
        if (v != 0) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && data_ == o.data_;
}

std::size_t Matrix::hash() const {
    std::size_t h = rows_ * 1315423911u + cols_;
    for (auto v : data_) h = h * 1000003u ^ std::hash<Elem>{}(v);
    return h;
}

Rref rref(const Matrix& m) {
    Rref out{m, 0, {}};
    Matrix& a = out.matrix;
    const Field& f = a.field();
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r) std::swap_ranges(a.row_ptr(piv), a.row_ptr(piv) + cols, a.row_ptr(r));
        Elem inv = f.inv(a(r, c));
        Elem* pr = a.row_ptr(r);
        for (std::size_t j = c; j < cols; ++j) pr[j] = f.mul(pr[j], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            Elem factor = a(i, c);
            if (factor == 0) continue;
            Elem* pi = a.row_ptr(i);
            for (std::size_t j = c; j < cols; ++j) {
                if (pr[j] != 0) pi[j] = f.sub(pi[j], f.mul(factor, pr[j]));
            }
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Subspace Subspace::zero(const Field& f, std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix(f, 0, ambient);
    return s;
}

Subspace Subspace::full(const Field& f, std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix::identity(f, ambient);
    return s;
}

Subspace Subspace::span(const Field& f, std::size_t ambient, const std::vector<Vector>& vectors) {
    Rref r = rref(Matrix::from_rows(f, vectors, ambient));
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix(f, r.rank, ambient);
    for (std::size_t i = 0; i < r.rank; ++i) std::copy(r.matrix.row_ptr(i), r.matrix.row_ptr(i) + ambient, s.basis_.row_ptr(i));
    return s;
}

std::vector<Vector> Subspace::basis_vectors() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < basis_.rows(); ++i) out.push_back(basis_.row(i));
    return out;
}

bool Subspace::contains(const Vector& v) const {
    if (v.size() != ambient_) throw UsageError("vector length does not match subspace ambient dimension");
    const Field& f = field();
    Vector w(v);
    // Reduce against the echelon basis: pivot of row i is its first nonzero entry.
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        const Elem* b = basis_.row_ptr(i);
        std::size_t piv = 0;
        while (b[piv] == 0) ++piv;
        Elem c = w[piv];
        if (c == 0) continue;
        for (std::size_t j = piv; j < ambient_; ++j) {
            if (b[j] != 0) w[j] = f.sub(w[j], f.mul(c, b[j]));
        }
    }
    for (auto x : w)
        if (x != 0) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw UsageError("subspaces of different ambient spaces");
    // U ∩ W = annihilator of (ann U + ann W).
    auto annihilator = [&](const Subspace& s) { return kernel(s.basis_); };
    Subspace a = annihilator(*this), b = annihilator(other);
    std::vector<Vector> rows = a.basis_vectors();
    for (auto& v : b.basis_vectors()) rows.push_back(v);
    Matrix m = Matrix::from_rows(field(), rows, ambient_);
    return kernel(m);
}

Subspace kernel(const Matrix& m) {
    Rref r = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : r.pivots) is_pivot[c] = true;
    const Field& f = m.field();
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vector v(n, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = f.neg(r.matrix(i, free));
        basis.push_back(std::move(v));
    }
    return Subspace::span(f, n, basis);
}

Subspace left_kernel(const Matrix& m) { return kernel(m.transpose()); }

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw UsageError("right-hand side length does not match matrix rows");
    const std::size_t n = m.cols();
    Matrix aug(m.field(), m.rows(), n + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::copy(m.row_ptr(i), m.row_ptr(i) + n, aug.row_ptr(i));
        aug(i, n) = b[i];
    }
    Rref r = rref(aug);
    if (r.rank > 0 && r.pivots.back() == n) return std::nullopt;
    Vector x(n, 0);
    for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.matrix(i, n);
    return x;
}

std::size_t wedge_index(std::size_t i, std::size_t j, std::size_t n) {
    if (i >= j || j >= n) throw UsageError("wedge index needs i < j < n");
    // pairs (a, b) with a < i come first: sum_{a<i} (n - 1 - a)
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

Matrix exterior_square(const Matrix& g) {
    if (!g.is_square()) throw UsageError("exterior square needs a square matrix");
    const std::size_t n = g.rows();
    const std::size_t m = n * (n - 1) / 2;
    const Field& f = g.field();
    Matrix out(f, m, m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::size_t row = wedge_index(i, j, n);
            for (std::size_t a = 0; a < n; ++a) {
                Elem gia = g(i, a), gja = g(j, a);
                if (gia == 0 && gja == 0) continue;
                for (std::size_t b = a + 1; b < n; ++b) {
                    Elem v = f.sub(f.mul(gia, g(j, b)), f.mul(g(i, b), gja));
                    if (v != 0) out(row, wedge_index(a, b, n)) = v;
                }
            }
        }
    }
    return out;
}

bool SparseEchelon::add(SparseVector v) {
    const Field& f = field_;
    for (auto it = v.begin(); it != v.end();) {
        if (it->second == 0) {
            it = v.erase(it);
            continue;
        }
        auto row = rows_.find(it->first);
        if (row == rows_.end()) {
            ++it;
            continue;
        }
        Elem c = it->second;
        for (auto [col, val] : row->second) {
            Elem nv = f.sub(v[col], f.mul(c, val));
            v[col] = nv;
        }
        it = v.begin();
    }
    if (v.empty()) return false;
    Elem inv = f.inv(v.begin()->second);
    for (auto& [col, val] : v) val = f.mul(val, inv);
    std::size_t pivot = v.begin()->first;
    rows_.emplace(pivot, std::move(v));
    return true;
}

Subspace SparseEchelon::kernel(std::size_t ncols) const {
    const Field& f = field_;
    // Back substitution, largest pivot first, gives the reduced echelon form.
    std::map<std::size_t, SparseVector> reduced;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
        SparseVector row = it->second;
        for (auto e = std::next(row.begin()); e != row.end();) {
            auto other = reduced.find(e->first);
            if (other == reduced.end() || e->second == 0) {
                ++e;
                continue;
            }
            Elem c = e->second;
            for (auto [col, val] : other->second) row[col] = f.sub(row[col], f.mul(c, val));
            e = row.upper_bound(other->first);
        }
        for (auto e = row.begin(); e != row.end();) e = e->second == 0 ? row.erase(e) : std::next(e);
        reduced.emplace(it->first, std::move(row));
    }
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (reduced.count(free)) continue;
        Vector v(ncols, 0);
        v[free] = 1;
        basis.push_back(std::move(v));
    }
    // Fill pivot coordinates: v[pivot] = -row[free].
    std::size_t idx = 0;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < ncols; ++c)
        if (!reduced.count(c)) free_cols.push_back(c);
    std::map<std::size_t, std::size_t> free_pos;
    for (auto c : free_cols) free_pos[c] = idx++;
    for (auto& [pivot, row] : reduced) {
        if (pivot >= ncols) throw UsageError("sparse row exceeds declared column count");
        for (auto [col, val] : row) {
            if (col == pivot) continue;
            basis[free_pos.at(col)][pivot] = f.neg(val);
        }
    }
    return Subspace::span(f, ncols, basis);
}

}  // namespace exmax::linalg
