#include <doctest.h>

#include "exmax/error.hpp"
#include "exmax/linalg.hpp"
#include "test_support.hpp"

using namespace exmax;
using namespace exmax::linalg;
using testing_support::random_invertible;
using testing_support::random_matrix;
using testing_support::uniform;

namespace {

// Determinant by Laplace expansion, no elimination involved.
Elem det_laplace(const Field& f, const std::vector<std::vector<Elem>>& m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    Elem d = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        std::vector<std::vector<Elem>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Elem> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[i][j]);
            sub.push_back(row);
        }
        Elem term = f.mul(m[0][c], det_laplace(f, sub));
        d = c % 2 == 0 ? f.add(d, term) : f.sub(d, term);
    }
    return d;
}

// Largest k with a nonzero k x k minor.
std::size_t minor_rank(const Matrix& m) {
    const Field& f = m.field();
    std::size_t best = 0;
    std::size_t r = m.rows(), c = m.cols();
    for (std::uint32_t rs = 1; rs < (1u << r); ++rs) {
        for (std::uint32_t cs = 1; cs < (1u << c); ++cs) {
            if (__builtin_popcount(rs) != __builtin_popcount(cs)) continue;
            std::size_t k = __builtin_popcount(rs);
            if (k <= best) continue;
            std::vector<std::vector<Elem>> sub;
            for (std::size_t i = 0; i < r; ++i) {
                if (!(rs >> i & 1)) continue;
                std::vector<Elem> row;
                for (std::size_t j = 0; j < c; ++j)
                    if (cs >> j & 1) row.push_back(m(i, j));
                sub.push_back(row);
            }
            if (det_laplace(f, sub) != 0) best = k;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("rref of identity and zero") {
    Field f = gf::make_field(7, 1);
    auto id = Matrix::identity(f, 4);
    auto r = rref(id);
    CHECK(r.matrix == id);
    CHECK(r.rank == 4);
    Matrix z(f, 3, 5);
    auto rz = rref(z);
    CHECK(rz.matrix == z);
    CHECK(rz.rank == 0);
}

TEST_CASE("rank agrees with the minor-expansion oracle over GF(7)") {
    Field f = gf::make_field(7, 1);
    for (int trial = 0; trial < 60; ++trial) {
        Matrix m = random_matrix(f, 5, 5);
        // force some rank deficiency half the time
        if (trial % 2 == 0) {
            for (std::size_t j = 0; j < 5; ++j) m(4, j) = f.add(m(0, j), f.mul(3, m(1, j)));
        }
        if (trial % 3 == 0) {
            for (std::size_t j = 0; j < 5; ++j) m(3, j) = f.mul(2, m(2, j));
        }
        CHECK(rank(m) == minor_rank(m));
    }
}

TEST_CASE("rref is idempotent and kernel vectors are annihilated") {
    Field f = gf::make_field(11, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = uniform(1, 6), c = uniform(1, 7);
        Matrix m = random_matrix(f, r, c);
        if (trial % 4 == 0 && r > 1) {
            for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j);
        }
        auto once = rref(m);
        auto twice = rref(once.matrix);
        CHECK(twice.matrix == once.matrix);
        Subspace k = kernel(m);
        CHECK(k.dim() + once.rank == c);
        for (auto& v : k.basis_vectors()) {
            auto mv = m.apply_col(v);
            CHECK(std::all_of(mv.begin(), mv.end(), [](Elem x) { return x == 0; }));
        }
    }
}

TEST_CASE("kernel of identity and zero") {
    Field f = gf::make_field(5, 1);
    CHECK(kernel(Matrix::identity(f, 4)).dim() == 0);
    CHECK(kernel(Matrix(f, 4, 4)).dim() == 4);
}

TEST_CASE("inverse, pow and solve") {
    Field f = gf::make_field(13, 2);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix g = random_invertible(f, 4);
        CHECK((g * g.inverse()).is_identity());
        CHECK(g.pow(-3) * g.pow(3) == Matrix::identity(f, 4));
        Vector x;
        for (int i = 0; i < 4; ++i) x.push_back(uniform(0, f.q() - 1));
        auto b = g.apply_col(x);
        auto sol = solve(g, b);
        REQUIRE(sol);
        CHECK(*sol == x);
    }
    Matrix sing(f, 2, 2);
    sing(0, 0) = 1;
    CHECK_THROWS_AS(sing.inverse(), UsageError);
    CHECK_FALSE(solve(sing, Vector{0, 1}).has_value());
}

TEST_CASE("exterior square examples") {
    Field f = gf::make_field(5, 1);
    CHECK(exterior_square(Matrix::identity(f, 4)).is_identity());
    Matrix d = Matrix::from_ints(f, {{2, 0, 0}, {0, 3, 0}, {0, 0, 4}});
    CHECK(exterior_square(d) == Matrix::from_ints(f, {{6, 0, 0}, {0, 8, 0}, {0, 0, 12}}));
}

TEST_CASE("exterior square is multiplicative") {
    Field f = gf::make_field(5, 1);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = uniform(2, 5);
        Matrix g = random_invertible(f, n), h = random_invertible(f, n);
        CHECK(exterior_square(g * h) == exterior_square(g) * exterior_square(h));
    }
}

TEST_CASE("subspace canonical form and containment") {
    Field f = gf::make_field(3, 1);
    auto a = Subspace::span(f, 3, {{1, 1, 0}, {0, 1, 1}});
    auto b = Subspace::span(f, 3, {{1, 2, 1}, {1, 0, 2}, {2, 2, 0}});
    CHECK(a == b);
    CHECK(a.contains(Vector{1, 2, 1}));
    CHECK_FALSE(a.contains(Vector{1, 0, 0}));
    auto c = Subspace::span(f, 3, {{1, 0, 0}, {0, 1, 0}});
    auto i = a.intersect(c);
    CHECK(i.dim() == 1);
    CHECK(i.contains(Vector{1, 1, 0}));
}

TEST_CASE("sparse echelon kernel equals dense kernel") {
    Field f = gf::make_field(7, 1);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t r = uniform(1, 8), c = uniform(1, 9);
        Matrix m(f, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (uniform(0, 2) == 0) m(i, j) = uniform(0, 6);
        SparseEchelon e(f);
        for (std::size_t i = 0; i < r; ++i) {
            SparseEchelon::SparseVector v;
            for (std::size_t j = 0; j < c; ++j)
                if (m(i, j)) v[j] = m(i, j);
            e.add(v);
        }
        CHECK(e.rank() == rank(m));
        CHECK(e.kernel(c) == kernel(m));
    }
}
