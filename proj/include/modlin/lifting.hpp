#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "base.hpp"
#include "fp_linalg.hpp"
#include "generating_set.hpp"
#include "matrix.hpp"
#include "residue.hpp"

namespace modlin {

/// Split of a matrix B over Z/p^eZ at level t: B == low + p^t * high as
/// integer matrices on canonical representatives, with low entries in
/// [0, p^t) and high entries in [0, p^(e-t)). Both parts are stored over
/// the original modulus p^e.
struct LiftDecomposition {
    MatModK low;
    MatModK high;
};

namespace detail {

inline std::pair<std::uint64_t, unsigned> require_prime_power(const Modulus& m, const char* who) {
    if (!m.is_prime_power()) {
        throw std::invalid_argument(std::string(who) + " requires a prime-power modulus");
    }
    return {m.factors()[0].prime, m.factors()[0].exponent};
}

inline std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace detail

/// Split B (over Z/p^eZ) into its digits below and above p^t, for
/// 1 <= t < e.
inline LiftDecomposition decompose(const MatModK& b, unsigned t) {
    const auto [p, e] = detail::require_prime_power(b.modulus(), "decompose");
    if (t < 1 || t >= e) throw std::invalid_argument("level must satisfy 1 <= t < e");
    const std::uint64_t pt = detail::pow_u64(p, t);
    MatModK low(b.rows(), b.cols(), b.modulus());
    MatModK high(b.rows(), b.cols(), b.modulus());
    for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            const std::uint64_t x = b(r, c);
            low.set(r, c, x % pt);
            high.set(r, c, x / pt);
        }
    }
    return {std::move(low), std::move(high)};
}

/// The level-t constraint matrix over F_p used to advance a generating set
/// of the nullspace of B from modulus p^t to p^(t+1).
///
/// Writing B = low + p^t * high and V_j for the given generators (each
/// satisfying B V_j == 0 mod p^t, which makes low * V_j divisible by p^t
/// as an integer vector), column j of the result is
///
///     (low * V_j) / p^t + high * V_j   (mod p)
///
/// and the last n columns are low itself reduced mod p. A vector z in the
/// F_p-nullspace of this matrix encodes a combination sum_j z_j V_j +
/// p^t * z_tail whose image under B vanishes mod p^(t+1).
///
/// The quotient (low * V_j) / p^t is computed from the product accumulated
/// mod p^(t+1): the true integer product differs from that representative
/// by a multiple of p^(t+1), so after the exact division by p^t the two
/// agree mod p, which is all the F_p matrix keeps.
inline MatModK build_lifted_constraint(const MatModK& b, const GeneratingSet& gens, unsigned t) {
    const auto [p, e] = detail::require_prime_power(b.modulus(), "build_lifted_constraint");
    if (t < 1 || t >= e) throw std::invalid_argument("level must satisfy 1 <= t < e");
    if (gens.modulus() != b.modulus()) throw std::invalid_argument("generators must share the matrix modulus");
    if (gens.ambient_dim() != b.cols()) throw std::invalid_argument("generators must match the column count");

    const std::uint64_t pt = detail::pow_u64(p, t);
    const std::uint64_t pt1 = pt * p; // t < e, so p^(t+1) <= p^e fits
    const LiftDecomposition dec = decompose(b, t);
    const Modulus fp = Modulus::prime_power(p, 1);
    MatModK out(b.rows(), gens.size() + b.cols(), fp);

    for (std::size_t j = 0; j < gens.size(); ++j) {
        const VecModK& v = gens[j];
        for (std::size_t r = 0; r < b.rows(); ++r) {
            std::uint64_t acc = 0; // low row r times v, mod p^(t+1)
            for (std::size_t c = 0; c < b.cols(); ++c) {
                acc = detail::add_mod(acc, detail::mul_mod(dec.low(r, c), v[c], pt1), pt1);
            }
            if (acc % pt != 0) {
                throw std::invalid_argument("generator is not in the nullspace at the current level");
            }
            std::uint64_t entry = (acc / pt) % p;
            for (std::size_t c = 0; c < b.cols(); ++c) {
                entry = detail::add_mod(entry, detail::mul_mod(dec.high(r, c) % p, v[c] % p, p), p);
            }
            out.set(r, j, entry);
        }
    }
    for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) out.set(r, gens.size() + c, dec.low(r, c) % p);
    }
    return out;
}

/// Advance a generating set for { w : B w == 0 mod p^t } to one for
/// { w : B w == 0 mod p^(t+1) } (vectors over Z/p^eZ throughout).
///
/// The output collects, in order: p * V_h for each current generator V_h,
/// then, for each F_p-nullspace basis vector z of the lifted constraint
/// matrix, the combination sum_j z_j V_j + p^t * z_tail. Zero vectors and
/// duplicates are dropped, so the output size is at most 2 * N + n.
inline GeneratingSet lift_step(const MatModK& b, const GeneratingSet& gens, unsigned t) {
    const auto [p, e] = detail::require_prime_power(b.modulus(), "lift_step");
    (void)e;
    const std::uint64_t q = b.modulus().value();
    const std::size_t n = b.cols();
    const std::size_t count = gens.size();
    const std::uint64_t pt = detail::pow_u64(p, t);

    const MatModK constraint = build_lifted_constraint(b, gens, t);
    const GeneratingSet basis = nullspace_basis_mod_p(constraint);

    GeneratingSet out(n, b.modulus());
    for (std::size_t h = 0; h < count; ++h) {
        VecModK w(n, b.modulus());
        for (std::size_t i = 0; i < n; ++i) w.set(i, detail::mul_mod(p % q, gens[h][i], q));
        out.add(w);
    }
    for (const VecModK& z : basis) {
        VecModK w(n, b.modulus());
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t acc = detail::mul_mod(pt, z[count + i], q);
            for (std::size_t j = 0; j < count; ++j) {
                acc = detail::add_mod(acc, detail::mul_mod(z[j], gens[j][i], q), q);
            }
            w.set(i, acc);
        }
        out.add(w);
    }
    return out;
}

/// Generating set for { w in (Z/p^eZ)^n : B w == 0 mod p^e }, built by
/// starting from an F_p nullspace basis and lifting one level at a time.
inline GeneratingSet nullspace_mod_prime_power(const MatModK& b) {
    const auto [p, e] = detail::require_prime_power(b.modulus(), "nullspace_mod_prime_power");
    if (b.rows() != b.cols()) throw std::invalid_argument("nullspace lifting expects a square matrix");
    const std::size_t n = b.cols();

    const Modulus fp = Modulus::prime_power(p, 1);
    const GeneratingSet base = nullspace_basis_mod_p(b.reduced_mod(fp));
    GeneratingSet gens(n, b.modulus());
    for (const VecModK& v : base) {
        VecModK w(n, b.modulus());
        for (std::size_t i = 0; i < n; ++i) w.set(i, v[i]);
        gens.add(w);
    }
    for (unsigned t = 1; t < e; ++t) gens = lift_step(b, gens, t);
    return gens;
}

} // namespace modlin
