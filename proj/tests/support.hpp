#pragma once

// Shared helpers for the test suite: literal-friendly constructors, a
// reproducible RNG, and an independent determinant reference.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <random>
#include <vector>

#include <modlin/modlin.hpp>

namespace testsupport {

// mt19937_64 with modulo draw: bit-reproducible across platforms, unlike
// std::uniform_int_distribution.
struct TestRng {
    std::mt19937_64 engine;
    explicit TestRng(std::uint64_t seed) : engine(seed) {}
    std::uint64_t next(std::uint64_t bound) { return engine() % bound; }
};

inline modlin::MatModK make_mat(std::uint64_t k,
                                std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::vector<std::int64_t> flat;
    std::size_t cols = 0;
    for (const auto& row : rows) {
        cols = row.size();
        for (std::int64_t v : row) flat.push_back(v);
    }
    return modlin::reduce_entries(rows.size(), cols, flat, modlin::Modulus::factorize(k));
}

inline modlin::VecModK make_vec(std::uint64_t k, std::initializer_list<std::int64_t> entries) {
    std::vector<std::int64_t> flat(entries);
    return modlin::reduce_entries(flat, modlin::Modulus::factorize(k));
}

inline modlin::GeneratingSet make_gens(std::uint64_t k, std::size_t dim,
                                       std::initializer_list<std::initializer_list<std::int64_t>> vecs) {
    modlin::GeneratingSet gens(dim, modlin::Modulus::factorize(k));
    for (const auto& v : vecs) gens.add(make_vec(k, v));
    return gens;
}

inline modlin::MatModK random_matrix(TestRng& rng, std::size_t rows, std::size_t cols,
                                     const modlin::Modulus& k) {
    modlin::MatModK m(rows, cols, k);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng.next(k.value()));
    }
    return m;
}

inline modlin::VecModK random_vector(TestRng& rng, std::size_t dim, const modlin::Modulus& k) {
    modlin::VecModK v(dim, k);
    for (std::size_t i = 0; i < dim; ++i) v.set(i, rng.next(k.value()));
    return v;
}

// Reference determinant by literal permutation expansion (sum over all n!
// permutations of signed entry products). Independent of any elimination
// code; fine for the small n used in tests.
inline std::uint64_t permutation_determinant(const modlin::MatModK& a) {
    const std::uint64_t k = a.modulus().value();
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::uint64_t det = 0;
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (perm[i] > perm[j]) ++inversions;
            }
        }
        std::uint64_t term = 1 % k;
        for (std::size_t i = 0; i < n; ++i) term = modlin::detail::mul_mod(term, a(i, perm[i]), k);
        if (inversions % 2 == 0) {
            det = modlin::detail::add_mod(det, term, k);
        } else {
            det = modlin::detail::sub_mod(det, term, k);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

} // namespace testsupport
