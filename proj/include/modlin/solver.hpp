#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "base.hpp"
#include "crt_combine.hpp"
#include "generating_set.hpp"
#include "lifting.hpp"
#include "matrix.hpp"
#include "residue.hpp"

namespace modlin {

/// Result of an explicit solve: either a verified solution vector or a
/// certificate-free "infeasible".
class SolveOutcome {
public:
    static SolveOutcome solution(VecModK x) { return SolveOutcome(std::move(x)); }
    static SolveOutcome infeasible() { return SolveOutcome(); }

    bool has_solution() const noexcept { return x_.has_value(); }

    const VecModK& solution_vector() const {
        if (!x_) throw std::logic_error("no solution vector on an infeasible outcome");
        return *x_;
    }

private:
    SolveOutcome() = default;
    explicit SolveOutcome(VecModK x) : x_(std::move(x)) {}

    std::optional<VecModK> x_;
};

namespace detail {

// Square system matrix [A | y; 0 | 0] of side n+1 over the shared modulus.
// A vector (x, -1) lies in its nullspace exactly when A x == y.
inline MatModK homogenize(const MatModK& a, const VecModK& y) {
    const std::size_t n = a.rows(); // a is square here
    MatModK b(n + 1, n + 1, a.modulus());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) b.set(r, c, a(r, c));
        b.set(r, n, y[r]);
    }
    return b;
}

} // namespace detail

/// Solve A x == y over Z/p^eZ for square A. Reduction to the homogeneous
/// problem: take a generating set of the nullspace of [A | y] (padded with
/// a zero row); a solution exists exactly when some generator has a unit
/// last coordinate c, and then scaling that generator by -c^{-1} puts -1
/// in the last slot, so its first n coordinates solve the system. The
/// first such generator (in the deterministic generating-set order) is
/// used, so results are reproducible.
inline SolveOutcome solve_prime_power(const MatModK& a, const VecModK& y) {
    if (a.rows() != a.cols()) throw std::invalid_argument("prime-power solve expects a square matrix");
    if (a.rows() != y.dim()) throw std::invalid_argument("right-hand side length must equal row count");
    if (a.modulus() != y.modulus()) throw std::invalid_argument("operands must share a modulus");
    const auto [p, e] = detail::require_prime_power(a.modulus(), "solve_prime_power");
    (void)e;
    const std::uint64_t q = a.modulus().value();
    const std::size_t n = a.rows();

    const GeneratingSet gens = nullspace_mod_prime_power(detail::homogenize(a, y));
    for (std::size_t h = 0; h < gens.size(); ++h) {
        const std::uint64_t last = gens[h][n];
        if (last % p == 0) continue;
        const std::uint64_t alpha = detail::neg_mod(detail::inv_unit(last, q), q);
        VecModK x(n, a.modulus());
        for (std::size_t i = 0; i < n; ++i) x.set(i, detail::mul_mod(alpha, gens[h][i], q));
        return SolveOutcome::solution(std::move(x));
    }
    return SolveOutcome::infeasible();
}

/// Solve A x == y over Z/kZ for any shape of A: pad to a square system,
/// solve per prime-power factor, and recombine coordinates by CRT. The
/// returned vector always satisfies A x == y (checked before returning).
inline SolveOutcome solve(const MatModK& a, const VecModK& y) {
    if (a.rows() != y.dim()) throw std::invalid_argument("right-hand side length must equal row count");
    if (a.modulus() != y.modulus()) throw std::invalid_argument("operands must share a modulus");
    const auto [sq, rhs] = pad_square(a, y);

    std::vector<VecModK> parts;
    const auto& factors = a.modulus().factors();
    parts.reserve(factors.size());
    for (const auto& f : factors) {
        const Modulus q = Modulus::prime_power(f.prime, f.exponent);
        SolveOutcome part = solve_prime_power(sq.reduced_mod(q), rhs.reduced_mod(q));
        if (!part.has_solution()) return SolveOutcome::infeasible();
        parts.push_back(part.solution_vector());
    }

    VecModK x(a.cols(), a.modulus());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> slots(factors.size());
    for (std::size_t i = 0; i < a.cols(); ++i) {
        for (std::size_t j = 0; j < factors.size(); ++j) {
            slots[j] = {parts[j][i], factors[j].value};
        }
        x.set(i, crt_reconstruct(slots, a.modulus()).value);
    }
    if (mat_vec_mul(a, x) != y) {
        throw std::logic_error("internal error: recombined solution fails verification");
    }
    return SolveOutcome::solution(std::move(x));
}

/// Feasibility of A x == y over Z/kZ: true exactly when a solution exists,
/// equivalently when every prime-power factor admits one.
inline bool feasible(const MatModK& a, const VecModK& y) {
    if (a.rows() != y.dim()) throw std::invalid_argument("right-hand side length must equal row count");
    if (a.modulus() != y.modulus()) throw std::invalid_argument("operands must share a modulus");
    const auto [sq, rhs] = pad_square(a, y);
    for (const auto& f : a.modulus().factors()) {
        const Modulus q = Modulus::prime_power(f.prime, f.exponent);
        if (!solve_prime_power(sq.reduced_mod(q), rhs.reduced_mod(q)).has_solution()) return false;
    }
    return true;
}

/// Generating set for { x in (Z/kZ)^n : B x == 0 mod k }: pad to square,
/// lift per prime-power factor, recombine, then (for a padded system)
/// restrict generators back to the original n coordinates. Restriction is
/// sound because padded columns are zero: the extra coordinates of a
/// padded solution are unconstrained, so the projection of the padded
/// nullspace onto the first n coordinates is exactly the original one.
inline GeneratingSet nullspace(const MatModK& b) {
    MatModK sq = b.rows() == b.cols() ? b : pad_square(b, VecModK(b.rows(), b.modulus())).first;

    std::vector<std::pair<std::uint64_t, GeneratingSet>> per_factor;
    const auto& factors = b.modulus().factors();
    per_factor.reserve(factors.size());
    for (const auto& f : factors) {
        const Modulus q = Modulus::prime_power(f.prime, f.exponent);
        per_factor.emplace_back(f.value, nullspace_mod_prime_power(sq.reduced_mod(q)));
    }
    GeneratingSet combined = combine_nullspaces(sq, per_factor);
    if (sq.cols() == b.cols()) return combined;

    GeneratingSet out(b.cols(), b.modulus());
    for (const VecModK& v : combined) {
        VecModK w(b.cols(), b.modulus());
        for (std::size_t i = 0; i < b.cols(); ++i) w.set(i, v[i]);
        out.add(w);
    }
    return out;
}

/// Embed a mod-p instance (A, y) into modulus k, where p is a prime factor
/// of k: the scaled instance ((k/p) A, (k/p) y) over Z/kZ is feasible
/// exactly when the original is feasible mod p.
inline std::pair<MatModK, VecModK> embed_lower_modulus(const MatModK& a, const VecModK& y,
                                                       const Modulus& k) {
    if (a.rows() != y.dim()) throw std::invalid_argument("right-hand side length must equal row count");
    if (a.modulus() != y.modulus()) throw std::invalid_argument("operands must share a modulus");
    if (!a.modulus().is_prime()) throw std::invalid_argument("embedding expects a prime source modulus");
    const std::uint64_t p = a.modulus().value();
    if (k.value() % p != 0) {
        throw std::invalid_argument("source prime " + std::to_string(p) +
                                    " does not divide the target modulus " + std::to_string(k.value()));
    }
    const std::uint64_t scale = k.value() / p;
    MatModK sa(a.rows(), a.cols(), k);
    VecModK sy(y.dim(), k);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            sa.set(r, c, detail::mul_mod(scale, a(r, c), k.value()));
        }
        sy.set(r, detail::mul_mod(scale, y[r], k.value()));
    }
    return {std::move(sa), std::move(sy)};
}

} // namespace modlin
