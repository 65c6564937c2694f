#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "exmax/linalg.hpp"

namespace testing_support {

inline std::mt19937_64& rng() {
    static std::mt19937_64 r(20240611);
    return r;
}

inline std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng());
}

inline exmax::linalg::Matrix random_matrix(const exmax::gf::Field& f, std::size_t r, std::size_t c) {
    exmax::linalg::Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(0, f.q() - 1);
    return m;
}

inline exmax::linalg::Matrix random_invertible(const exmax::gf::Field& f, std::size_t n) {
    for (;;) {
        auto m = random_matrix(f, n, n);
        if (exmax::linalg::rank(m) == n) return m;
    }
}

}  // namespace testing_support
