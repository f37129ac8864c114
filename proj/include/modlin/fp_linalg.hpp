#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "base.hpp"
#include "generating_set.hpp"
#include "matrix.hpp"

namespace modlin {

/// Outcome of row reduction over a prime field.
struct RrefResult {
    MatModK reduced;
    std::vector<std::size_t> pivot_columns; // ascending
    std::size_t rank;                       // == pivot_columns.size()
};

/// Reduced row echelon form over F_p. Pivot choice is the first nonzero
/// entry top-down in each column, so the result is deterministic.
inline RrefResult rref_mod_p(const MatModK& m) {
    if (!m.modulus().is_prime()) throw std::invalid_argument("row reduction requires a prime modulus");
    const std::uint64_t p = m.modulus().value();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::uint64_t> a(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = m(r, c);
    }
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        std::size_t found = rows;
        for (std::size_t row = pivot_row; row < rows; ++row) {
            if (a[row * cols + col] != 0) {
                found = row;
                break;
            }
        }
        if (found == rows) continue;
        if (found != pivot_row) {
            for (std::size_t c = 0; c < cols; ++c) std::swap(a[pivot_row * cols + c], a[found * cols + c]);
        }
        const std::uint64_t inv = detail::inv_unit(a[pivot_row * cols + col], p);
        for (std::size_t c = col; c < cols; ++c) {
            a[pivot_row * cols + c] = detail::mul_mod(a[pivot_row * cols + c], inv, p);
        }
        for (std::size_t row = 0; row < rows; ++row) {
            if (row == pivot_row) continue;
            const std::uint64_t f = a[row * cols + col];
            if (f == 0) continue;
            for (std::size_t c = col; c < cols; ++c) {
                a[row * cols + c] =
                    detail::sub_mod(a[row * cols + c], detail::mul_mod(f, a[pivot_row * cols + c], p), p);
            }
        }
        pivots.push_back(col);
        ++pivot_row;
    }
    MatModK reduced(rows, cols, m.modulus());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) reduced.set(r, c, a[r * cols + c]);
    }
    const std::size_t rank = pivots.size();
    return RrefResult{std::move(reduced), std::move(pivots), rank};
}

/// Basis of the right nullspace of m over F_p, one vector per free column,
/// free columns ascending. Each basis vector has a 1 in its free column,
/// the negated reduced-column entries in the pivot columns, and 0 in the
/// other free columns.
inline GeneratingSet nullspace_basis_mod_p(const MatModK& m) {
    const RrefResult rr = rref_mod_p(m);
    const std::uint64_t p = m.modulus().value();
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t pc : rr.pivot_columns) is_pivot[pc] = true;
    GeneratingSet basis(cols, m.modulus());
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        VecModK v(cols, m.modulus());
        v.set(free, 1);
        for (std::size_t i = 0; i < rr.pivot_columns.size(); ++i) {
            v.set(rr.pivot_columns[i], detail::neg_mod(rr.reduced(i, free), p));
        }
        basis.add(v);
    }
    return basis;
}

} // namespace modlin
