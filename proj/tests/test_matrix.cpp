#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include <modlin/modlin.hpp>

#include "support.hpp"

using modlin::MatModK;
using modlin::Modulus;
using modlin::VecModK;
using testsupport::make_mat;
using testsupport::make_vec;

TEST_CASE("reduce_entries canonicalizes signed input") {
    const MatModK m = make_mat(4, {{-1}});
    REQUIRE(m(0, 0) == 3);

    const MatModK w = make_mat(6, {{7, -3}, {5, -9}});
    REQUIRE(w(0, 0) == 1);
    REQUIRE(w(0, 1) == 3);
    REQUIRE(w(1, 0) == 5);
    REQUIRE(w(1, 1) == 3);

    const VecModK v = make_vec(5, {-7, 12});
    REQUIRE(v[0] == 3);
    REQUIRE(v[1] == 2);

    const std::vector<std::int64_t> flat{1, 2, 3};
    REQUIRE_THROWS_AS(modlin::reduce_entries(2, 2, flat, Modulus::factorize(5)),
                      std::invalid_argument);
}

TEST_CASE("matrix and vector accessors reduce and range-check") {
    MatModK m(2, 3, Modulus::factorize(4));
    m.set(1, 2, 7);
    REQUIRE(m(1, 2) == 3);
    REQUIRE_THROWS_AS(m(2, 0), std::out_of_range);
    REQUIRE_THROWS_AS(m.set(0, 3, 1), std::out_of_range);
    REQUIRE_THROWS_AS(MatModK(0, 1, Modulus::factorize(4)), std::invalid_argument);

    VecModK v(2, Modulus::factorize(4));
    v.set(0, 9);
    REQUIRE(v[0] == 1);
    REQUIRE_THROWS_AS(v[2], std::out_of_range);

    REQUIRE(VecModK::unit(3, 1, Modulus::factorize(5)) == make_vec(5, {0, 1, 0}));
    REQUIRE(MatModK::identity(2, Modulus::factorize(3)) == make_mat(3, {{1, 0}, {0, 1}}));
}

TEST_CASE("reduced_mod projects into divisor moduli only") {
    const MatModK m = make_mat(12, {{10, 7}, {4, 11}});
    const MatModK m4 = m.reduced_mod(Modulus::factorize(4));
    REQUIRE(m4 == make_mat(4, {{2, 3}, {0, 3}}));
    REQUIRE_THROWS_AS(m.reduced_mod(Modulus::factorize(5)), std::invalid_argument);

    const VecModK v = make_vec(12, {10, 7});
    REQUIRE(v.reduced_mod(Modulus::factorize(3)) == make_vec(3, {1, 1}));
    REQUIRE_THROWS_AS(v.reduced_mod(Modulus::factorize(7)), std::invalid_argument);
}

TEST_CASE("pad_square embeds rectangular systems") {
    SECTION("wide: zero rows appended") {
        const auto [sq, rhs] = modlin::pad_square(make_mat(6, {{1, 2}}), make_vec(6, {5}));
        REQUIRE(sq == make_mat(6, {{1, 2}, {0, 0}}));
        REQUIRE(rhs == make_vec(6, {5, 0}));
    }
    SECTION("tall: zero columns appended") {
        const auto [sq, rhs] = modlin::pad_square(make_mat(6, {{1}, {2}, {3}}), make_vec(6, {4, 5, 0}));
        REQUIRE(sq == make_mat(6, {{1, 0, 0}, {2, 0, 0}, {3, 0, 0}}));
        REQUIRE(rhs == make_vec(6, {4, 5, 0}));
    }
    SECTION("square: unchanged") {
        const MatModK a = make_mat(4, {{1, 2}, {3, 0}});
        const VecModK y = make_vec(4, {1, 1});
        const auto [sq, rhs] = modlin::pad_square(a, y);
        REQUIRE(sq == a);
        REQUIRE(rhs == y);
    }
    SECTION("validation") {
        REQUIRE_THROWS_AS(modlin::pad_square(make_mat(6, {{1, 2}}), make_vec(6, {1, 2})),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(modlin::pad_square(make_mat(6, {{1}}), make_vec(4, {1})),
                          std::invalid_argument);
    }
}

TEST_CASE("mat_mul and mat_vec_mul reduce every term") {
    const MatModK a = make_mat(6, {{2, 3}, {4, 5}});
    const MatModK b = make_mat(6, {{1, 2}, {3, 4}});
    // Over the integers: [[11,16],[19,28]]
    REQUIRE(modlin::mat_mul(a, b) == make_mat(6, {{5, 4}, {1, 4}}));
    REQUIRE(modlin::mat_mul(a, MatModK::identity(2, a.modulus())) == a);

    const MatModK u = make_mat(2, {{1, 1}, {0, 1}});
    REQUIRE(modlin::mat_mul(u, u) == MatModK::identity(2, u.modulus()));

    REQUIRE(modlin::mat_vec_mul(a, make_vec(6, {1, 2})) == make_vec(6, {2, 2}));

    REQUIRE_THROWS_AS(modlin::mat_mul(a, make_mat(6, {{1, 2}})), std::invalid_argument);
    REQUIRE_THROWS_AS(modlin::mat_mul(a, make_mat(5, {{1, 2}, {3, 4}})), std::invalid_argument);
    REQUIRE_THROWS_AS(modlin::mat_vec_mul(a, make_vec(6, {1})), std::invalid_argument);
    REQUIRE_THROWS_AS(modlin::mat_vec_mul(a, make_vec(5, {1, 2})), std::invalid_argument);
}

TEST_CASE("mat_mul stays exact near the 64-bit boundary") {
    const std::uint64_t k = UINT64_MAX;
    const Modulus m = Modulus::factorize(k);
    MatModK a(1, 1, m), b(1, 1, m);
    a.set(0, 0, k - 1);
    b.set(0, 0, k - 1);
    REQUIRE(modlin::mat_mul(a, b)(0, 0) == 1); // (-1) * (-1)
}

TEST_CASE("determinant matches the worked examples") {
    REQUIRE(modlin::determinant_mod_k(make_mat(3, {{2, 1}, {1, 2}})) == modlin::Residue{0, 3});
    REQUIRE(modlin::determinant_mod_k(make_mat(7, {{1, 1}, {0, 1}})) == modlin::Residue{1, 7});
    REQUIRE(modlin::determinant_mod_k(make_mat(7, {{5}})) == modlin::Residue{5, 7});
    REQUIRE(modlin::determinant_mod_k(make_mat(6, {{5}})) == modlin::Residue{5, 6});
    // A row swap away from the identity: determinant is -1.
    REQUIRE(modlin::determinant_mod_k(make_mat(12, {{0, 1}, {1, 0}})).value == 11);
    REQUIRE_THROWS_AS(modlin::determinant_mod_k(make_mat(4, {{1, 2}})), std::invalid_argument);
}

TEST_CASE("determinant matches permutation expansion exhaustively for 2x2") {
    for (std::uint64_t k : {2, 3, 4, 6, 9}) {
        const Modulus m = Modulus::factorize(k);
        for (std::uint64_t a = 0; a < k; ++a) {
            for (std::uint64_t b = 0; b < k; ++b) {
                for (std::uint64_t c = 0; c < k; ++c) {
                    for (std::uint64_t d = 0; d < k; ++d) {
                        MatModK mat(2, 2, m);
                        mat.set(0, 0, a);
                        mat.set(0, 1, b);
                        mat.set(1, 0, c);
                        mat.set(1, 1, d);
                        REQUIRE(modlin::determinant_mod_k(mat).value ==
                                testsupport::permutation_determinant(mat));
                    }
                }
            }
        }
    }
}

TEST_CASE("determinant matches permutation expansion on random matrices") {
    testsupport::TestRng rng(2024);
    const std::vector<std::uint64_t> moduli{2,  3,  4,  5,  8,  9,  12, 16, 27, 30,
                                            36, 49, 60, 64, 72, 81, 97, 100, 125, 1024};
    for (int trial = 0; trial < 400; ++trial) {
        const Modulus k = Modulus::factorize(moduli[rng.next(moduli.size())]);
        const std::size_t n = 1 + rng.next(4);
        const MatModK a = testsupport::random_matrix(rng, n, n, k);
        REQUIRE(modlin::determinant_mod_k(a).value == testsupport::permutation_determinant(a));
    }
}

TEST_CASE("determinant matches permutation expansion for huge moduli") {
    testsupport::TestRng rng(99);
    // Prime, prime power, and composite moduli near the top of the range.
    // Large primes go through the prime_power factory, which validates by
    // primality test instead of trial division.
    const std::vector<Modulus> moduli{Modulus::prime_power((std::uint64_t(1) << 61) - 1, 1),
                                      Modulus::factorize(std::uint64_t(1) << 40),
                                      Modulus::factorize(UINT64_MAX),
                                      Modulus::factorize(3ull * 3 * 3 * 1000003)};
    for (const Modulus& k : moduli) {
        for (int trial = 0; trial < 8; ++trial) {
            const std::size_t n = 1 + rng.next(4);
            const MatModK a = testsupport::random_matrix(rng, n, n, k);
            REQUIRE(modlin::determinant_mod_k(a).value == testsupport::permutation_determinant(a));
        }
    }
}

TEST_CASE("determinant is multiplicative") {
    testsupport::TestRng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Modulus k = Modulus::factorize(2 + rng.next(98));
        const std::size_t n = 1 + rng.next(4);
        const MatModK a = testsupport::random_matrix(rng, n, n, k);
        const MatModK b = testsupport::random_matrix(rng, n, n, k);
        REQUIRE(modlin::determinant_mod_k(modlin::mat_mul(a, b)).value ==
                modlin::detail::mul_mod(modlin::determinant_mod_k(a).value,
                                        modlin::determinant_mod_k(b).value, k.value()));
    }
}

TEST_CASE("inverse matches the worked examples") {
    for (std::uint64_t k : {2, 3, 4, 6, 12, 97}) {
        REQUIRE(modlin::inverse_mod_k(make_mat(k, {{1, 1}, {0, 1}})) ==
                make_mat(k, {{1, static_cast<std::int64_t>(k) - 1}, {0, 1}}));
    }
    REQUIRE(modlin::inverse_mod_k(make_mat(12, {{5}})) == make_mat(12, {{5}}));

    try {
        modlin::inverse_mod_k(make_mat(4, {{2}}));
        FAIL("expected not_invertible");
    } catch (const modlin::not_invertible& e) {
        REQUIRE(e.determinant() == modlin::Residue{2, 4});
    }
    REQUIRE_THROWS_AS(modlin::inverse_mod_k(make_mat(4, {{1, 2}})), std::invalid_argument);
}

TEST_CASE("inverse succeeds exactly on unit determinants") {
    testsupport::TestRng rng(77);
    int invertible = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Modulus k = Modulus::factorize(2 + rng.next(60));
        const std::size_t n = 1 + rng.next(3);
        const MatModK a = testsupport::random_matrix(rng, n, n, k);
        const std::uint64_t det = modlin::determinant_mod_k(a).value;
        const bool unit = modlin::detail::gcd_u64(det, k.value()) == 1;
        try {
            const MatModK inv = modlin::inverse_mod_k(a);
            REQUIRE(unit);
            REQUIRE(modlin::mat_mul(a, inv) == MatModK::identity(n, k));
            REQUIRE(modlin::mat_mul(inv, a) == MatModK::identity(n, k));
            ++invertible;
        } catch (const modlin::not_invertible& e) {
            REQUIRE_FALSE(unit);
            REQUIRE(e.determinant().value == det);
        }
    }
    REQUIRE(invertible > 50); // sanity: the loop exercised both branches
}
