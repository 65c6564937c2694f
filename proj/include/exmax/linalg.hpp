#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "exmax/gf.hpp"

namespace exmax::linalg {

using gf::Elem;
using gf::Field;
using Vector = std::vector<Elem>;

/// Dense row-major matrix over a finite field.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols);
    static Matrix identity(const Field& f, std::size_t n);
    static Matrix from_rows(const Field& f, const std::vector<Vector>& rows, std::size_t cols);
    static Matrix from_ints(const Field& f, const std::vector<std::vector<std::int64_t>>& rows);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const Elem* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }
    Elem* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    Vector row(std::size_t i) const { return {row_ptr(i), row_ptr(i) + cols_}; }
    const std::vector<Elem>& data() const { return data_; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(Elem c) const;
    Matrix transpose() const;
    Matrix inverse() const;
    /// Negative exponents go through the inverse.
    Matrix pow(std::int64_t e) const;

    /// Row vector times matrix.
    Vector apply_row(const Vector& v) const;
    /// Matrix times column vector.
    Vector apply_col(const Vector& v) const;

    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    std::size_t hash() const;

private:
    Field field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Elem> data_;
};

struct MatrixHash {
    std::size_t operator()(const Matrix& m) const { return m.hash(); }
};

struct Rref {
    Matrix matrix;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form; pivots are the leftmost nonzero columns.
Rref rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Subspace of F^n held as its canonical reduced echelon basis.
class Subspace {
public:
    Subspace() = default;
    static Subspace zero(const Field& f, std::size_t ambient);
    static Subspace full(const Field& f, std::size_t ambient);
    static Subspace span(const Field& f, std::size_t ambient, const std::vector<Vector>& vectors);

    const Field& field() const { return basis_.field(); }
    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    /// Rows form the canonical basis.
    const Matrix& basis() const { return basis_; }
    std::vector<Vector> basis_vectors() const;

    bool contains(const Vector& v) const;
    bool contains(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

private:
    std::size_t ambient_ = 0;
    Matrix basis_;
};

/// Right null space {v : m v = 0}.
Subspace kernel(const Matrix& m);
/// Left null space {v : v m = 0}.
Subspace left_kernel(const Matrix& m);
/// Some x with m x = b, if one exists.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

std::size_t wedge_index(std::size_t i, std::size_t j, std::size_t n);
/// Action on e_i ^ e_j (i < j, lexicographic) induced by row-vector action of g.
Matrix exterior_square(const Matrix& g);

/// Incremental echelon basis of sparse row vectors.
class SparseEchelon {
public:
    using SparseVector = std::map<std::size_t, Elem>;
    explicit SparseEchelon(Field f) : field_(std::move(f)) {}
    /// Returns true when v was independent of the rows already added.
    bool add(SparseVector v);
    std::size_t rank() const { return rows_.size(); }
    /// Right null space of the accumulated rows inside F^ncols.
    Subspace kernel(std::size_t ncols) const;

private:
    Field field_;
    std::map<std::size_t, SparseVector> rows_;  // keyed by pivot, pivot entry 1
};

}  // namespace exmax::linalg
