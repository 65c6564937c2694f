#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exmax/linalg.hpp"

namespace exmax::rep {

using linalg::Matrix;
using linalg::Subspace;

struct Letter {
    std::string generator;
    std::int64_t exponent = 1;
};
/// Product of generator powers, read left to right.
using Word = std::vector<Letter>;

/// Parses "s^-1*g1*s*g1^-1"; "1" or "" is the empty word.
Word parse_word(std::string_view text);
std::string to_string(const Word& w);

/// A group acting on row vectors through named generator matrices.
class MatrixRep {
public:
    MatrixRep() = default;
    MatrixRep(gf::Field field, std::size_t dim, std::vector<std::pair<std::string, Matrix>> generators,
              std::vector<std::string> relations = {});

    const gf::Field& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::pair<std::string, Matrix>>& generators() const { return generators_; }
    std::vector<std::string> generator_names() const;
    const Matrix& generator(std::string_view name) const;
    const std::vector<std::string>& relations() const { return relations_; }

    Matrix evaluate(const Word& w) const;
    Matrix evaluate(std::string_view word) const { return evaluate(parse_word(word)); }
    /// Relations whose evaluation is not the identity.
    std::vector<std::string> failing_relations() const;
    /// Throws InconsistencyError when a relation fails.
    void verify_relations() const;

    /// Same generator names acting on the exterior square.
    MatrixRep exterior_square() const;

private:
    gf::Field field_;
    std::size_t dim_ = 0;
    std::vector<std::pair<std::string, Matrix>> generators_;
    std::vector<std::string> relations_;
};

/// Order of the group generated; throws LimitExceeded past `bound`.
std::uint64_t enumerate_group(const MatrixRep& rep, std::uint64_t bound);

/// Basis of {X : g_A X = X g_B for every generator g}.
std::vector<Matrix> hom_space(const MatrixRep& a, const MatrixRep& b);

Subspace fixed_points(const MatrixRep& rep);

/// Dimension of the fixed space on degree-3 monomials in the basis vectors.
std::size_t sym_cube_fixed_dim(const MatrixRep& rep);

struct CompositionFactor {
    std::string label;
    int dim = 1;
    int h1_dim = 0;
    bool is_trivial = false;
};

class CompositionProfile {
public:
    CompositionProfile() = default;
    explicit CompositionProfile(std::vector<CompositionFactor> factors);
    const std::vector<CompositionFactor>& factors() const { return factors_; }
    CompositionProfile operator+(const CompositionProfile& o) const;

private:
    std::vector<CompositionFactor> factors_;
};

/// Sum over factors of h1_dim, less one for each trivial factor.
std::int64_t pressure(const CompositionProfile& profile);

}  // namespace exmax::rep
