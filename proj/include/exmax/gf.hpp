#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace exmax::gf {

/// Packed element of GF(p^k): the integer sum c_i p^i of its coefficient vector.
using Elem = std::uint64_t;

class Field {
public:
    Field() = default;

    std::uint64_t p() const;
    unsigned k() const;
    std::uint64_t q() const;
    bool valid() const { return impl_ != nullptr; }

    /// Monic irreducible of degree k, constant term first (length k + 1).
    const std::vector<std::uint64_t>& modulus() const;

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;
    Elem from_int(std::int64_t v) const;

    std::vector<std::uint64_t> coeffs(Elem a) const;
    Elem from_coeffs(const std::vector<std::uint64_t>& c) const;

    /// a^(p^times).
    Elem frobenius(Elem a, unsigned times = 1) const;

    /// Smallest packed index that generates the multiplicative group.
    Elem primitive_element() const;
    std::uint64_t element_order(Elem a) const;
    /// Prime factorisation of q - 1, cached.
    const std::vector<std::pair<std::uint64_t, unsigned>>& unit_group_factors() const;

    std::string name() const;
    std::string serialize(Elem a) const;
    Elem parse(std::string_view text) const;

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    friend Field make_field(std::uint64_t p, unsigned k);
};

/// GF(p^k) over the lowest monic irreducible of degree k, ordered by packed index.
Field make_field(std::uint64_t p, unsigned k);
/// GF(q) for a prime power q.
Field make_field_of_order(std::uint64_t q);

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(Field f, Elem v) : field_(std::move(f)), v_(v) {}

    const Field& field() const { return field_; }
    Elem value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    std::vector<std::uint64_t> coeffs() const { return field_.coeffs(v_); }
    std::string to_string() const { return field_.serialize(v_); }

    FieldElement operator+(const FieldElement& o) const { return {field_, field_.add(v_, o.v_)}; }
    FieldElement operator-(const FieldElement& o) const { return {field_, field_.sub(v_, o.v_)}; }
    FieldElement operator*(const FieldElement& o) const { return {field_, field_.mul(v_, o.v_)}; }
    FieldElement operator/(const FieldElement& o) const { return {field_, field_.div(v_, o.v_)}; }
    FieldElement operator-() const { return {field_, field_.neg(v_)}; }
    FieldElement pow(std::uint64_t e) const { return {field_, field_.pow(v_, e)}; }
    FieldElement inverse() const { return {field_, field_.inv(v_)}; }
    bool operator==(const FieldElement& o) const { return field_ == o.field_ && v_ == o.v_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool operator<(const FieldElement& o) const { return v_ < o.v_; }

private:
    Field field_;
    Elem v_ = 0;
};

FieldElement element(const Field& f, std::int64_t v);

/// Element of exact multiplicative order n; for GF(8), n = 7 this is the class of x.
FieldElement primitive_nth_root(const Field& f, std::uint64_t n);

/// Gauss sum zeta + zeta^2 + zeta^4 - zeta^3 - zeta^5 - zeta^6, a square root of -7.
FieldElement omega_from_zeta(const FieldElement& zeta);

/// Every x with x^n = a, sorted by packed index.
std::vector<FieldElement> nth_roots(const FieldElement& a, std::uint64_t n);

namespace detail {
/// Root extraction through the unit-group decomposition, used above 2^20 elements.
std::vector<FieldElement> nth_roots_by_decomposition(const FieldElement& a, std::uint64_t n);
}  // namespace detail

/// Polynomial over a field, constant term first, no trailing zeros.
class Poly {
public:
    Poly() = default;
    Poly(Field f, std::vector<Elem> c);
    static Poly from_integers(const Field& f, const std::vector<std::int64_t>& c);
    static Poly monomial(const Field& f, Elem c, std::size_t deg);

    const Field& field() const { return field_; }
    const std::vector<Elem>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    Elem lead() const { return c_.empty() ? 0 : c_.back(); }
    Elem eval(Elem x) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Poly monic() const;
    /// (quotient, remainder).
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly mod(const Poly& d) const { return divmod(d).second; }
    /// base^e mod m.
    static Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);
    /// Monic gcd; zero when both inputs are zero.
    static Poly gcd(Poly a, Poly b);

private:
    void trim();
    Field field_;
    std::vector<Elem> c_;
};

/// True iff f is a product of linear factors over `field` (f given by integer coefficients).
bool splits(const std::vector<std::int64_t>& f, const Field& field);
bool splits(const Poly& f);

enum class PolyId { f1, f2, f3, f4, f5 };

PolyId parse_poly_id(std::string_view s);
std::string to_string(PolyId id);
/// Integer coefficients, constant term first.
std::vector<std::int64_t> standard_poly(PolyId id);
/// Congruence criterion for splitting over GF(q), no field arithmetic.
bool splits_by_congruence(PolyId id, std::uint64_t q);

}  // namespace exmax::gf
