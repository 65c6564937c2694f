#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "exmax/error.hpp"
#include "exmax/gf.hpp"
#include "exmax/linalg.hpp"
#include "exmax/rep.hpp"

namespace exmax::sl28 {

using gf::Elem;
using linalg::Matrix;
using linalg::Subspace;
using linalg::Vector;

constexpr std::size_t kDim = 27;

enum class Block { x = 0, y = 1, z = 2 };

/// One of the 27 basis vectors: block letter and subscript in GF(8) ∪ {∞}.
struct BasisIndex {
    static constexpr int kInfinity = -1;

    Block block = Block::x;
    /// kInfinity, or the packed GF(8) element 0..7 (x^3 + x + 1 modulus, ξ = 2).
    int sub = kInfinity;

    /// Position in the fixed order x-block, y-block, z-block; ∞, 0, 1, ξ, ..., ξ^6 inside a block.
    std::size_t index() const;
    static BasisIndex from_index(std::size_t i);
    /// Subscript ξ^e, e in 0..6.
    static BasisIndex power(Block b, int e);
    static BasisIndex infinity(Block b) { return {b, kInfinity}; }
    static BasisIndex zero(Block b) { return {b, 0}; }
    /// Names like "x_inf", "y_0", "z_1", "x_xi", "x_xi^5".
    static BasisIndex parse(std::string_view name);
    std::string name() const;
    bool operator==(const BasisIndex& o) const { return block == o.block && sub == o.sub; }
};

Vector basis_vector(BasisIndex b);
/// Sum of the eight finite-subscript vectors of a block.
Vector sigma_vector(Block b);
/// (b_0 + b_ξ + b_ξ² + b_ξ⁴) - (b_1 + b_ξ³ + b_ξ⁵ + b_ξ⁶), as elements of `f`.
Vector e_vector(const gf::Field& f, Block b);

/// e_a -> ζ^{zeta_exp[a]} e_{image[a]}.
struct MonomialGenerator {
    std::string name;
    std::array<std::uint8_t, kDim> image{};
    std::array<std::uint8_t, kDim> zeta_exp{};
};

struct Module {
    rep::MatrixRep rep;
    gf::FieldElement zeta;
    gf::FieldElement omega;
    std::vector<MonomialGenerator> monomial;
};

/// The 27-dimensional module for ⟨g1, h_xi, t, s⟩ over a field holding a primitive 7th root.
Module build_rep(const gf::Field& f);
Module build_rep(const gf::FieldElement& zeta);

/// Symmetric trilinear form stored on sorted index triples.
class SymTrilinearForm {
public:
    SymTrilinearForm() = default;
    SymTrilinearForm(gf::Field f, std::size_t dim);

    const gf::Field& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    std::size_t triple_count() const { return values_.size(); }
    std::size_t triple_index(std::size_t i, std::size_t j, std::size_t k) const;
    std::array<std::size_t, 3> triple(std::size_t index) const;

    Elem value(std::size_t i, std::size_t j, std::size_t k) const { return values_[triple_index(i, j, k)]; }
    void set(std::size_t i, std::size_t j, std::size_t k, Elem v) { values_[triple_index(i, j, k)] = v; }
    const std::vector<Elem>& values() const { return values_; }
    std::vector<Elem>& values() { return values_; }

    Elem evaluate(const Vector& u, const Vector& v, const Vector& w) const;
    /// M_jk = f(v, e_j, e_k).
    Matrix bilinear_matrix(const Vector& v) const;
    bool is_zero() const;
    bool operator==(const SymTrilinearForm& o) const;

private:
    gf::Field field_;
    std::size_t dim_ = 0;
    std::vector<Elem> values_;
    std::vector<std::array<std::size_t, 3>> triples_;
    std::vector<std::uint32_t> lookup_;
};

struct Coefficients {
    gf::FieldElement c_x, c_xy, c_yx, c, c_inf;
    gf::FieldElement omega;
    bool solved = false;
};

/// c_xy = 1, c = c_yx², c_x = c_yx²(1 - ω), c_yx³ = 1/(ω + 1), c_inf != 0, ω² = -7.
bool satisfies_solved_identities(const Coefficients& c);

class PropagationConflict : public InconsistencyError {
public:
    using InconsistencyError::InconsistencyError;
};

struct FormBuild {
    SymTrilinearForm form;
    std::size_t seeds = 0;
    std::size_t reached = 0;
    /// Unreached triples whose orbit carries a nontrivial scalar, hence must vanish.
    std::size_t unreached_forced_zero = 0;
    /// Unreached triples in orbits that would admit a nonzero value.
    std::size_t unreached_free = 0;
};

/// Seeds the form from the five constants and propagates it along the monomial action.
FormBuild build_form(const Coefficients& coeffs, const Module& module);

bool is_invariant(const SymTrilinearForm& form, const rep::MatrixRep& rep);
Subspace singular_radical(const SymTrilinearForm& form, const Vector& v);
bool is_singular(const SymTrilinearForm& form, const Vector& v);

/// Rows (c_x, c_yx, c_xy), (c_yx(ω-1), -c_xy, -c(ω+1)), (c_xy(ω-1), -c(ω+1), -c_yx(ω+1)).
Matrix delta_system(const Coefficients& coeffs);
/// Rows v = x_0, y_0, z_0; columns u = x_e, y_e, z_e; entries f(x_inf, u, v).
Matrix delta_system_from_form(const SymTrilinearForm& form);

/// One record per cube root of 1/(ω+1), with c_xy = 1 and c_inf = 1.
std::vector<Coefficients> solve_coefficients(const Module& module);
std::vector<Coefficients> solve_coefficients(const gf::Field& f);

struct CinfSweepRow {
    Elem c_inf = 0;
    bool invariant = false;
    bool x_inf_singular = false;
    std::size_t radical_dim = 0;
};
std::vector<CinfSweepRow> sweep_cinf(const Coefficients& base, const Module& module, const std::vector<Elem>& values);

/// Multiplicative order of q modulo 7: the degree over GF(q) of the field holding ζ.
unsigned zeta_degree(std::uint64_t q);
gf::Field zeta_field(std::uint64_t q);

struct EmbeddingDecision {
    bool h_prime_in_e6 = false;
    bool h_prime_in_2e6 = false;
    bool h_in_e6 = false;
    bool h_in_2e6 = false;
};

/// Mod-7 class for H', then q ≡ 2 mod 3, q = p^{3n}, or a cube root of ω+1 found in GF(q).
EmbeddingDecision embedding_decision(std::uint64_t q);

/// -7 is a square in GF(q), decided by root extraction.
bool h_prime_in_e6_by_field(std::uint64_t q);
/// ω = √-7 and a cube root of ω+1 both found in GF(q) by root extraction.
bool h_in_e6_by_field(std::uint64_t q);
/// Congruences on q, then Euler's criterion on the Gauss sum computed where ζ lives.
bool h_in_e6_by_congruence(std::uint64_t q);
/// Whether ω+1 is a cube in GF(q); false when -7 is not a square there.
bool omega_plus_one_is_cube(std::uint64_t q);

/// Permutation of `forms` induced by the q-power map (with block relabelling when ζ^q ≠ ζ).
std::vector<std::size_t> frobenius_on_forms(std::uint64_t q, const Module& module,
                                            const std::vector<SymTrilinearForm>& forms);

}  // namespace exmax::sl28
