#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace modlin {

/// Thrown by enumeration-based operations whose instance exceeds the
/// documented size guard (k^n or path-count limits).
class size_guard_error : public std::length_error {
public:
    explicit size_guard_error(const std::string& what) : std::length_error(what) {}
};

namespace detail {

using u128 = unsigned __int128;
using i128 = __int128;

// All helpers assume 2 <= k and operands already canonical in [0, k),
// unless stated otherwise. k may be anything below 2^64, so sums and
// products go through 128-bit intermediates.

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t k) {
    return static_cast<std::uint64_t>((static_cast<u128>(a) + b) % k);
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t k) {
    return static_cast<std::uint64_t>((static_cast<u128>(a) + (k - b)) % k);
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t k) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % k);
}

inline std::uint64_t neg_mod(std::uint64_t a, std::uint64_t k) {
    return a == 0 ? 0 : k - a;
}

// Canonical representative of an arbitrary signed value.
inline std::uint64_t canonical(std::int64_t v, std::uint64_t k) {
    i128 r = static_cast<i128>(v) % static_cast<i128>(k);
    if (r < 0) r += static_cast<i128>(k);
    return static_cast<std::uint64_t>(r);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t k) {
    std::uint64_t result = 1 % k;
    base %= k;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, k);
        base = mul_mod(base, base, k);
        exp >>= 1;
    }
    return result;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Largest v with p^v dividing x; requires x != 0 and p >= 2.
inline unsigned valuation(std::uint64_t x, std::uint64_t p) {
    unsigned v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

struct EgcdResult {
    std::uint64_t gcd;
    std::uint64_t coeff; // canonical in [0, k), with coeff * a == gcd (mod k)
};

// Extended Euclid on (a, k) for 0 <= a < k, 2 <= k.
inline EgcdResult egcd_mod(std::uint64_t a, std::uint64_t k) {
    i128 old_r = a, r = k;
    i128 old_s = 1, s = 0;
    while (r != 0) {
        i128 q = old_r / r;
        i128 tr = old_r - q * r;
        old_r = r;
        r = tr;
        i128 ts = old_s - q * s;
        old_s = s;
        s = ts;
    }
    i128 coeff = old_s % static_cast<i128>(k);
    if (coeff < 0) coeff += static_cast<i128>(k);
    return {static_cast<std::uint64_t>(old_r), static_cast<std::uint64_t>(coeff)};
}

// Inverse of a unit; callers must guarantee gcd(a, k) == 1.
inline std::uint64_t inv_unit(std::uint64_t a, std::uint64_t k) {
    return egcd_mod(a % k, k).coeff;
}

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace detail
} // namespace modlin
