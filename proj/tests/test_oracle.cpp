#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>
#include <vector>

#include <modlin/modlin.hpp>

#include "support.hpp"

using modlin::GeneratingSet;
using modlin::MatModK;
using modlin::Modulus;
using modlin::VecModK;
using testsupport::make_gens;
using testsupport::make_mat;
using testsupport::make_vec;

using Vecs = std::set<std::vector<std::uint64_t>>;

TEST_CASE("brute_force_solve enumerates exact solution sets") {
    REQUIRE(modlin::brute_force_solve(make_mat(4, {{2}}), make_vec(4, {0})) == Vecs{{0}, {2}});
    REQUIRE(modlin::brute_force_solve(make_mat(4, {{2}}), make_vec(4, {1})).empty());
    REQUIRE(modlin::brute_force_solve(make_mat(2, {{1, 1}}), make_vec(2, {0})) ==
            Vecs{{0, 0}, {1, 1}});
    REQUIRE(modlin::brute_force_solve(make_mat(4, {{2}}), make_vec(4, {2})) == Vecs{{1}, {3}});

    // A zero map accepts everything: k^n solutions.
    REQUIRE(modlin::brute_force_solve(make_mat(5, {{0, 0}}), make_vec(5, {0})).size() == 25);
}

TEST_CASE("brute_force_solve validates and guards") {
    REQUIRE_THROWS_AS(modlin::brute_force_solve(make_mat(4, {{1}}), make_vec(4, {1, 2})),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(modlin::brute_force_solve(make_mat(4, {{1}}), make_vec(2, {1})),
                      std::invalid_argument);

    // 2^24 = 16M exceeds the 10^7 guard; the guard fires before any work.
    MatModK wide(1, 24, Modulus::factorize(2));
    REQUIRE_THROWS_AS(modlin::brute_force_solve(wide, VecModK(1, wide.modulus())),
                      modlin::size_guard_error);
}

TEST_CASE("subgroup_closure on small generating sets") {
    REQUIRE(modlin::subgroup_closure(GeneratingSet(1, Modulus::factorize(4))) == Vecs{{0}});
    REQUIRE(modlin::subgroup_closure(make_gens(4, 1, {{2}})) == Vecs{{0}, {2}});
    REQUIRE(modlin::subgroup_closure(make_gens(2, 2, {{1, 1}})) == Vecs{{0, 0}, {1, 1}});
    // gcd(2,3) = 1, so together they generate everything mod 6.
    REQUIRE(modlin::subgroup_closure(make_gens(6, 1, {{2}, {3}})).size() == 6);
    // Zero vectors are dropped at construction, leaving the trivial group.
    REQUIRE(modlin::subgroup_closure(make_gens(6, 2, {{0, 0}})) == Vecs{{0, 0}});
}

TEST_CASE("subgroup_closure guards enormous ambients") {
    REQUIRE_THROWS_AS(modlin::subgroup_closure(GeneratingSet(24, Modulus::factorize(2))),
                      modlin::size_guard_error);
}

TEST_CASE("subgroup_closure is closed under addition and negation") {
    testsupport::TestRng rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        const Modulus k = Modulus::factorize(2 + rng.next(11));
        const std::size_t n = 1 + rng.next(2);
        GeneratingSet gens(n, k);
        const std::size_t count = rng.next(3);
        for (std::size_t i = 0; i < count; ++i) gens.add(testsupport::random_vector(rng, n, k));
        const Vecs closure = modlin::subgroup_closure(gens);
        for (const auto& u : closure) {
            std::vector<std::uint64_t> neg(n);
            for (std::size_t i = 0; i < n; ++i) neg[i] = modlin::detail::neg_mod(u[i], k.value());
            REQUIRE(closure.count(neg) == 1);
            for (const auto& v : closure) {
                std::vector<std::uint64_t> sum(n);
                for (std::size_t i = 0; i < n; ++i) {
                    sum[i] = modlin::detail::add_mod(u[i], v[i], k.value());
                }
                REQUIRE(closure.count(sum) == 1);
            }
        }
    }
}

TEST_CASE("spans_same compares subgroups, not generator lists") {
    const Modulus m6 = Modulus::factorize(6);
    REQUIRE(modlin::spans_same(make_gens(6, 1, {{1}}), make_gens(6, 1, {{5}})));
    REQUIRE(modlin::spans_same(make_gens(6, 1, {{2}}), make_gens(6, 1, {{4}})));
    REQUIRE_FALSE(modlin::spans_same(make_gens(6, 1, {{2}}), make_gens(6, 1, {{3}})));
    REQUIRE(modlin::spans_same(GeneratingSet(1, m6), GeneratingSet(1, m6)));
    // A zero generator normalizes away, so both sides span the trivial group.
    REQUIRE(modlin::spans_same(make_gens(6, 1, {{0}}), GeneratingSet(1, m6)));
    // Different generator counts, same subgroup.
    REQUIRE(modlin::spans_same(make_gens(6, 1, {{2}, {3}}), make_gens(6, 1, {{1}})));

    REQUIRE_THROWS_AS(modlin::spans_same(GeneratingSet(1, m6), GeneratingSet(2, m6)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(modlin::spans_same(GeneratingSet(1, m6), GeneratingSet(1, Modulus::factorize(4))),
                      std::invalid_argument);
}

TEST_CASE("generating sets drop zeros and duplicates but keep order") {
    GeneratingSet gens(2, Modulus::factorize(6));
    REQUIRE_FALSE(gens.add(make_vec(6, {0, 0})));
    REQUIRE(gens.add(make_vec(6, {1, 2})));
    REQUIRE(gens.add(make_vec(6, {3, 0})));
    REQUIRE_FALSE(gens.add(make_vec(6, {1, 2})));
    REQUIRE(gens.size() == 2);
    REQUIRE(gens[0] == make_vec(6, {1, 2}));
    REQUIRE(gens[1] == make_vec(6, {3, 0}));

    REQUIRE_THROWS_AS(gens.add(make_vec(6, {1})), std::invalid_argument);
    REQUIRE_THROWS_AS(gens.add(make_vec(12, {1, 2})), std::invalid_argument);
}
