#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "base.hpp"
#include "generating_set.hpp"
#include "matrix.hpp"

namespace modlin {

namespace detail {

inline constexpr std::uint64_t enumeration_guard = 10'000'000;

// k^n, or throw once it exceeds the enumeration guard.
inline std::uint64_t guarded_power(std::uint64_t k, std::size_t n) {
    u128 total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= k;
        if (total > enumeration_guard) {
            throw size_guard_error("enumeration of k^n vectors exceeds the 10^7 guard");
        }
    }
    return static_cast<std::uint64_t>(total);
}

} // namespace detail

/// Every solution of A x == y mod k, found by enumerating all k^n vectors.
/// Exponentially slow by design — this is the reference the fast paths are
/// checked against. Guarded to k^n <= 10^7.
inline std::set<std::vector<std::uint64_t>> brute_force_solve(const MatModK& a, const VecModK& y) {
    if (a.rows() != y.dim()) throw std::invalid_argument("right-hand side length must equal row count");
    if (a.modulus() != y.modulus()) throw std::invalid_argument("operands must share a modulus");
    const std::uint64_t k = a.modulus().value();
    const std::size_t n = a.cols();
    detail::guarded_power(k, n);

    std::set<std::vector<std::uint64_t>> solutions;
    VecModK x(n, a.modulus());
    std::vector<std::uint64_t> digits(n, 0);
    while (true) {
        for (std::size_t i = 0; i < n; ++i) x.set(i, digits[i]);
        if (mat_vec_mul(a, x) == y) solutions.insert(digits);
        std::size_t pos = 0;
        while (pos < n && ++digits[pos] == k) digits[pos++] = 0;
        if (pos == n) break;
    }
    return solutions;
}

/// The full subgroup generated by a generating set: all Z/kZ-linear
/// combinations, computed by closing {0} under addition of generators.
/// Guarded to k^n <= 10^7 ambient vectors.
inline std::set<std::vector<std::uint64_t>> subgroup_closure(const GeneratingSet& gens) {
    const std::uint64_t k = gens.modulus().value();
    const std::size_t n = gens.ambient_dim();
    detail::guarded_power(k, n);

    std::set<std::vector<std::uint64_t>> members;
    std::vector<std::vector<std::uint64_t>> frontier;
    members.insert(std::vector<std::uint64_t>(n, 0));
    frontier.push_back(std::vector<std::uint64_t>(n, 0));
    while (!frontier.empty()) {
        const std::vector<std::uint64_t> v = std::move(frontier.back());
        frontier.pop_back();
        for (const VecModK& g : gens) {
            std::vector<std::uint64_t> w(n);
            for (std::size_t i = 0; i < n; ++i) w[i] = detail::add_mod(v[i], g[i], k);
            if (members.insert(w).second) frontier.push_back(std::move(w));
        }
    }
    return members;
}

/// Whether two generating sets span the same subgroup of (Z/kZ)^n.
inline bool spans_same(const GeneratingSet& a, const GeneratingSet& b) {
    if (a.modulus() != b.modulus()) throw std::invalid_argument("operands must share a modulus");
    if (a.ambient_dim() != b.ambient_dim()) {
        throw std::invalid_argument("operands must share an ambient dimension");
    }
    return subgroup_closure(a) == subgroup_closure(b);
}

} // namespace modlin
