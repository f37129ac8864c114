#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "base.hpp"

namespace modlin {

/// Thrown when an inverse is requested for a value that shares a factor
/// with the modulus. Carries the offending gcd as a witness.
class not_a_unit : public std::domain_error {
public:
    not_a_unit(std::uint64_t value, std::uint64_t modulus, std::uint64_t gcd)
        : std::domain_error("value " + std::to_string(value) + " is not a unit modulo " +
                            std::to_string(modulus) + " (gcd " + std::to_string(gcd) + ")"),
          value_(value), modulus_(modulus), gcd_(gcd) {}

    std::uint64_t value() const noexcept { return value_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    std::uint64_t gcd() const noexcept { return gcd_; }

private:
    std::uint64_t value_;
    std::uint64_t modulus_;
    std::uint64_t gcd_;
};

/// One factor q = prime^exponent of a modulus.
struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    std::uint64_t value; // prime^exponent

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A validated modulus k with its prime-power factorization, primes
/// ascending. Construct via factorize() or prime_power(); every other
/// type in the library carries one of these by value.
class Modulus {
public:
    /// Factor k by trial division. Intended for the moderate moduli this
    /// library targets; k must be at least 2.
    static Modulus factorize(std::uint64_t k) {
        if (k < 2) throw std::invalid_argument("modulus must be at least 2");
        std::vector<PrimePower> factors;
        std::uint64_t n = k;
        auto strip = [&](std::uint64_t d) {
            if (n % d != 0) return;
            unsigned e = 0;
            std::uint64_t q = 1;
            while (n % d == 0) {
                n /= d;
                ++e;
                q *= d;
            }
            factors.push_back({d, e, q});
        };
        strip(2);
        for (std::uint64_t d = 3; d <= n / d; d += 2) strip(d);
        if (n > 1) factors.push_back({n, 1, n});
        return Modulus(k, std::move(factors));
    }

    /// Build the modulus p^e directly; validates that p is prime, e >= 1,
    /// and p^e fits in 64 bits.
    static Modulus prime_power(std::uint64_t p, unsigned e) {
        if (!detail::is_prime(p)) {
            throw std::invalid_argument(std::to_string(p) + " is not prime");
        }
        if (e == 0) throw std::invalid_argument("exponent must be at least 1");
        std::uint64_t q = 1;
        for (unsigned i = 0; i < e; ++i) {
            if (q > UINT64_MAX / p) throw std::invalid_argument("prime power exceeds 64 bits");
            q *= p;
        }
        return Modulus(q, {PrimePower{p, e, q}});
    }

    std::uint64_t value() const noexcept { return k_; }
    const std::vector<PrimePower>& factors() const noexcept { return factors_; }

    bool is_prime() const noexcept {
        return factors_.size() == 1 && factors_[0].exponent == 1;
    }
    bool is_prime_power() const noexcept { return factors_.size() == 1; }

    friend bool operator==(const Modulus&, const Modulus&) = default;

private:
    Modulus(std::uint64_t k, std::vector<PrimePower> factors)
        : k_(k), factors_(std::move(factors)) {}

    std::uint64_t k_;
    std::vector<PrimePower> factors_;
};

/// A canonical representative in [0, k) tagged with its modulus.
struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;

    friend bool operator==(const Residue&, const Residue&) = default;
};

/// Multiplicative inverse of a modulo k. Throws not_a_unit (with the gcd
/// witness) when gcd(a, k) > 1.
inline Residue mod_inverse(std::uint64_t a, const Modulus& k) {
    std::uint64_t r = a % k.value();
    auto eg = detail::egcd_mod(r, k.value());
    if (eg.gcd != 1) throw not_a_unit(r, k.value(), eg.gcd);
    return Residue{eg.coeff, k.value()};
}

/// Recombine one residue per prime-power factor of k into the unique
/// value mod k. `residues[j]` must be (value mod q_j, q_j) in the same
/// order as k.factors().
inline Residue crt_reconstruct(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& residues,
                               const Modulus& k) {
    const auto& factors = k.factors();
    if (residues.size() != factors.size()) {
        throw std::invalid_argument("expected one residue per prime-power factor of the modulus");
    }
    std::uint64_t x = 0;
    for (std::size_t j = 0; j < factors.size(); ++j) {
        const std::uint64_t q = factors[j].value;
        if (residues[j].second != q) {
            throw std::invalid_argument("residue factor " + std::to_string(residues[j].second) +
                                        " does not match modulus factor " + std::to_string(q));
        }
        if (residues[j].first >= q) {
            throw std::invalid_argument("residue value must be canonical in [0, factor)");
        }
        const std::uint64_t m = k.value() / q;             // coprime to q
        const std::uint64_t w = detail::inv_unit(m % q, q); // m * w == 1 (mod q)
        const std::uint64_t term = detail::mul_mod(detail::mul_mod(residues[j].first, m % k.value(), k.value()),
                                                   w, k.value());
        x = detail::add_mod(x, term, k.value());
    }
    return Residue{x, k.value()};
}

} // namespace modlin
