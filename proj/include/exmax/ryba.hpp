#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "exmax/linalg.hpp"
#include "exmax/rep.hpp"

namespace exmax::ryba {

using linalg::Matrix;
using linalg::Subspace;
using linalg::Vector;

/// Alternating bilinear product b on F^n, stored as the C(n,2) x n table of b(e_i, e_j), i < j.
class AltProduct {
public:
    AltProduct() = default;
    AltProduct(gf::Field f, std::size_t dim);
    /// From a Hom(Λ²M, M) matrix whose rows follow the wedge order.
    static AltProduct from_table(const Matrix& table);

    const gf::Field& field() const { return table_.field(); }
    std::size_t dim() const { return dim_; }
    const Matrix& table() const { return table_; }

    /// b(e_i, e_j) for any i, j.
    Vector value(std::size_t i, std::size_t j) const;
    /// Sets b(e_i, e_j) = v (and b(e_j, e_i) = -v).
    void set(std::size_t i, std::size_t j, const Vector& v);
    Vector bracket(const Vector& u, const Vector& v) const;

    AltProduct operator+(const AltProduct& o) const;
    AltProduct scaled(gf::Elem c) const;
    bool is_zero() const { return table_.is_zero(); }
    bool operator==(const AltProduct& o) const { return dim_ == o.dim_ && table_ == o.table_; }

private:
    std::size_t dim_ = 0;
    Matrix table_;
};

AltProduct linear_combination(const std::vector<AltProduct>& basis, const std::vector<gf::Elem>& coeffs);

/// Basis of Hom_G(Λ²M, M); the module dimension is capped at 80.
std::vector<AltProduct> ryba_space(const rep::MatrixRep& rep);

/// b(v g, w g) = b(v, w) g on all basis pairs, for every generator.
bool is_equivariant(const AltProduct& prod, const rep::MatrixRep& rep);

using Triple = std::array<std::size_t, 3>;

/// All i < j < k.
std::vector<Triple> all_triples(std::size_t dim);

/// [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] for each triple.
std::vector<Vector> jacobi_residual(const AltProduct& prod, const std::vector<Triple>& triples);

/// Coefficient vectors (over the whole field) whose combination of `basis` has zero residual on `triples`.
std::vector<std::vector<gf::Elem>> jacobi_sweep(const std::vector<AltProduct>& basis, const std::vector<Triple>& triples);

/// True iff b(W, W) ⊆ W for prod and every element of ambient_ryba.
bool subalgebra_check(const AltProduct& prod, const Subspace& w, const std::vector<AltProduct>& ambient_ryba);

}  // namespace exmax::ryba
