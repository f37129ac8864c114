#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "base.hpp"
#include "residue.hpp"

namespace modlin {

class MatModK;

/// Thrown when a matrix inverse is requested but the determinant is not a
/// unit. Carries the determinant as a witness.
class not_invertible : public std::domain_error {
public:
    explicit not_invertible(Residue det)
        : std::domain_error("matrix is not invertible modulo " + std::to_string(det.modulus) +
                            " (determinant " + std::to_string(det.value) + ")"),
          det_(det) {}

    const Residue& determinant() const noexcept { return det_; }

private:
    Residue det_;
};

/// Dense vector over Z/kZ; every entry is canonical in [0, k).
class VecModK {
public:
    VecModK(std::size_t dim, Modulus modulus)
        : modulus_(std::move(modulus)), entries_(dim, 0) {}

    static VecModK unit(std::size_t dim, std::size_t index, const Modulus& modulus) {
        VecModK v(dim, modulus);
        v.set(index, 1);
        return v;
    }

    std::size_t dim() const noexcept { return entries_.size(); }
    const Modulus& modulus() const noexcept { return modulus_; }
    const std::vector<std::uint64_t>& entries() const noexcept { return entries_; }

    std::uint64_t operator[](std::size_t i) const { return entries_.at(i); }

    void set(std::size_t i, std::uint64_t value) {
        entries_.at(i) = value % modulus_.value();
    }

    /// The same vector with entries reduced into a divisor modulus q | k.
    VecModK reduced_mod(const Modulus& q) const {
        if (modulus_.value() % q.value() != 0) {
            throw std::invalid_argument("target modulus must divide the source modulus");
        }
        VecModK out(dim(), q);
        for (std::size_t i = 0; i < dim(); ++i) out.set(i, entries_[i] % q.value());
        return out;
    }

    friend bool operator==(const VecModK&, const VecModK&) = default;

private:
    Modulus modulus_;
    std::vector<std::uint64_t> entries_;
};

/// Dense row-major matrix over Z/kZ; every entry is canonical in [0, k).
class MatModK {
public:
    MatModK(std::size_t rows, std::size_t cols, Modulus modulus)
        : rows_(rows), cols_(cols), modulus_(std::move(modulus)), entries_(rows * cols, 0) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
    }

    static MatModK identity(std::size_t n, const Modulus& modulus) {
        MatModK m(n, n, modulus);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const Modulus& modulus() const noexcept { return modulus_; }

    std::uint64_t operator()(std::size_t r, std::size_t c) const {
        check_index(r, c);
        return entries_[r * cols_ + c];
    }

    void set(std::size_t r, std::size_t c, std::uint64_t value) {
        check_index(r, c);
        entries_[r * cols_ + c] = value % modulus_.value();
    }

    /// The same matrix with entries reduced into a divisor modulus q | k.
    MatModK reduced_mod(const Modulus& q) const {
        if (modulus_.value() % q.value() != 0) {
            throw std::invalid_argument("target modulus must divide the source modulus");
        }
        MatModK out(rows_, cols_, q);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, (*this)(r, c) % q.value());
        }
        return out;
    }

    friend bool operator==(const MatModK&, const MatModK&) = default;

private:
    void check_index(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    }

    std::size_t rows_;
    std::size_t cols_;
    Modulus modulus_;
    std::vector<std::uint64_t> entries_;
};

/// Build an m x n matrix from raw signed entries (row-major), reducing each
/// entry to its canonical representative.
inline MatModK reduce_entries(std::size_t rows, std::size_t cols,
                              std::span<const std::int64_t> raw, const Modulus& k) {
    if (raw.size() != rows * cols) {
        throw std::invalid_argument("entry count does not match matrix dimensions");
    }
    MatModK m(rows, cols, k);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m.set(r, c, detail::canonical(raw[r * cols + c], k.value()));
        }
    }
    return m;
}

/// Vector variant of reduce_entries.
inline VecModK reduce_entries(std::span<const std::int64_t> raw, const Modulus& k) {
    VecModK v(raw.size(), k);
    for (std::size_t i = 0; i < raw.size(); ++i) v.set(i, detail::canonical(raw[i], k.value()));
    return v;
}

/// Embed a (possibly rectangular) system A x = y into a square one of side
/// s = max(rows, cols) by appending zero rows or zero columns. Appended
/// zero columns add ignorable variables; appended zero rows add vacuous
/// constraints (their right-hand side is zero). Solution sets correspond
/// by truncating or zero-extending coordinates.
inline std::pair<MatModK, VecModK> pad_square(const MatModK& a, const VecModK& y) {
    if (a.rows() != y.dim()) throw std::invalid_argument("right-hand side length must equal row count");
    if (a.modulus() != y.modulus()) throw std::invalid_argument("operands must share a modulus");
    const std::size_t s = a.rows() > a.cols() ? a.rows() : a.cols();
    MatModK sq(s, s, a.modulus());
    VecModK rhs(s, a.modulus());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) sq.set(r, c, a(r, c));
        rhs.set(r, y[r]);
    }
    return {std::move(sq), std::move(rhs)};
}

inline MatModK mat_mul(const MatModK& a, const MatModK& b) {
    if (a.modulus() != b.modulus()) throw std::invalid_argument("operands must share a modulus");
    if (a.cols() != b.rows()) throw std::invalid_argument("inner dimensions must agree");
    const std::uint64_t k = a.modulus().value();
    MatModK out(a.rows(), b.cols(), a.modulus());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            std::uint64_t acc = 0;
            for (std::size_t t = 0; t < a.cols(); ++t) {
                acc = detail::add_mod(acc, detail::mul_mod(a(r, t), b(t, c), k), k);
            }
            out.set(r, c, acc);
        }
    }
    return out;
}

inline VecModK mat_vec_mul(const MatModK& a, const VecModK& v) {
    if (a.modulus() != v.modulus()) throw std::invalid_argument("operands must share a modulus");
    if (a.cols() != v.dim()) throw std::invalid_argument("inner dimensions must agree");
    const std::uint64_t k = a.modulus().value();
    VecModK out(a.rows(), a.modulus());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            acc = detail::add_mod(acc, detail::mul_mod(a(r, c), v[c], k), k);
        }
        out.set(r, acc);
    }
    return out;
}

namespace detail {

// Determinant over Z/qZ for q = p^e, by triangularization. Z/qZ is a local
// ring: every element is unit * p^v for a unique v <= e, so a pivot of
// minimal p-valuation divides everything below it exactly, and each
// elimination step is an exact ring operation (no fractions, no precision
// loss). Row swaps flip the sign.
inline std::uint64_t det_mod_prime_power(const MatModK& m, std::uint64_t p, std::uint64_t q) {
    const std::size_t n = m.rows();
    std::vector<std::uint64_t> a(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r * n + c] = m(r, c);
    }
    bool negate = false;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = n;
        unsigned best_val = 0;
        for (std::size_t row = col; row < n; ++row) {
            const std::uint64_t x = a[row * n + col];
            if (x == 0) continue;
            const unsigned v = valuation(x, p);
            if (best == n || v < best_val) {
                best = row;
                best_val = v;
            }
        }
        if (best == n) return 0; // column vanishes below the diagonal
        if (best != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(a[col * n + c], a[best * n + c]);
            negate = !negate;
        }
        std::uint64_t pv = 1;
        for (unsigned i = 0; i < best_val; ++i) pv *= p;
        const std::uint64_t unit_inv = inv_unit(a[col * n + col] / pv, q);
        for (std::size_t row = col + 1; row < n; ++row) {
            const std::uint64_t b = a[row * n + col];
            if (b == 0) continue;
            // b has valuation >= best_val, so pv divides it exactly and
            // f * pivot == b (mod q).
            const std::uint64_t f = mul_mod(b / pv, unit_inv, q);
            for (std::size_t c = col; c < n; ++c) {
                a[row * n + c] = sub_mod(a[row * n + c], mul_mod(f, a[col * n + c], q), q);
            }
        }
    }
    std::uint64_t det = 1 % q;
    for (std::size_t i = 0; i < n; ++i) det = mul_mod(det, a[i * n + i], q);
    return negate ? neg_mod(det, q) : det;
}

// Inverse over Z/qZ for q = p^e via Gauss-Jordan; requires that a unit
// pivot exists in every column (equivalently, the determinant is a unit).
// Returns false when that fails.
inline bool try_inverse_mod_prime_power(const MatModK& m, std::uint64_t p, std::uint64_t q,
                                        MatModK& out) {
    const std::size_t n = m.rows();
    std::vector<std::uint64_t> a(n * 2 * n, 0);
    const std::size_t w = 2 * n;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r * w + c] = m(r, c);
        a[r * w + n + r] = 1 % q;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t row = col; row < n; ++row) {
            if (a[row * w + col] % p != 0) {
                pivot = row;
                break;
            }
        }
        if (pivot == n) return false;
        if (pivot != col) {
            for (std::size_t c = 0; c < w; ++c) std::swap(a[col * w + c], a[pivot * w + c]);
        }
        const std::uint64_t inv = inv_unit(a[col * w + col], q);
        for (std::size_t c = 0; c < w; ++c) a[col * w + c] = mul_mod(a[col * w + c], inv, q);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col) continue;
            const std::uint64_t f = a[row * w + col];
            if (f == 0) continue;
            for (std::size_t c = 0; c < w; ++c) {
                a[row * w + c] = sub_mod(a[row * w + c], mul_mod(f, a[col * w + c], q), q);
            }
        }
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) out.set(r, c, a[r * w + n + c]);
    }
    return true;
}

} // namespace detail

/// Determinant of a square matrix mod k: computed per prime-power factor
/// and recombined.
inline Residue determinant_mod_k(const MatModK& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant requires a square matrix");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> parts;
    parts.reserve(a.modulus().factors().size());
    for (const auto& f : a.modulus().factors()) {
        const Modulus q = Modulus::prime_power(f.prime, f.exponent);
        parts.emplace_back(detail::det_mod_prime_power(a.reduced_mod(q), f.prime, f.value), f.value);
    }
    return crt_reconstruct(parts, a.modulus());
}

/// Inverse of a square matrix mod k, when the determinant is a unit;
/// throws not_invertible (with the determinant) otherwise.
inline MatModK inverse_mod_k(const MatModK& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse requires a square matrix");
    const std::size_t n = a.rows();
    std::vector<MatModK> parts;
    parts.reserve(a.modulus().factors().size());
    for (const auto& f : a.modulus().factors()) {
        const Modulus q = Modulus::prime_power(f.prime, f.exponent);
        MatModK inv_q(n, n, q);
        if (!detail::try_inverse_mod_prime_power(a.reduced_mod(q), f.prime, f.value, inv_q)) {
            throw not_invertible(determinant_mod_k(a));
        }
        parts.push_back(std::move(inv_q));
    }
    MatModK out(n, n, a.modulus());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> slots(parts.size());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t j = 0; j < parts.size(); ++j) {
                slots[j] = {parts[j](r, c), a.modulus().factors()[j].value};
            }
            out.set(r, c, crt_reconstruct(slots, a.modulus()).value);
        }
    }
    return out;
}

} // namespace modlin
