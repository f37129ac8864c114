#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "base.hpp"
#include "generating_set.hpp"
#include "matrix.hpp"
#include "residue.hpp"

namespace modlin {

/// Merge per-factor nullspace generating sets into one for the composite
/// modulus k of b. `per_factor[j]` must be (q_j, generators over Z/q_jZ)
/// in the order of b.modulus().factors().
///
/// Each generator X of the factor-q_j set contributes (k/q_j) * X, read
/// mod k: such a vector reduces to a multiple of X mod q_j and to zero
/// mod every other factor, so the combined collection generates exactly
/// the vectors that reduce into each factor's nullspace simultaneously.
/// Output order is factor-major, generator order within a factor; zeros
/// and duplicates are dropped.
inline GeneratingSet combine_nullspaces(
    const MatModK& b,
    const std::vector<std::pair<std::uint64_t, GeneratingSet>>& per_factor) {
    const auto& factors = b.modulus().factors();
    if (per_factor.size() != factors.size()) {
        throw std::invalid_argument("expected one generating set per prime-power factor");
    }
    const std::uint64_t k = b.modulus().value();
    GeneratingSet out(b.cols(), b.modulus());
    for (std::size_t j = 0; j < factors.size(); ++j) {
        const std::uint64_t q = factors[j].value;
        if (per_factor[j].first != q) {
            throw std::invalid_argument("factor " + std::to_string(per_factor[j].first) +
                                        " does not match modulus factor " + std::to_string(q));
        }
        const GeneratingSet& gens = per_factor[j].second;
        if (gens.modulus().value() != q) {
            throw std::invalid_argument("generating set modulus must equal its factor");
        }
        if (gens.ambient_dim() != b.cols()) {
            throw std::invalid_argument("generating set dimension must match the column count");
        }
        const std::uint64_t scale = k / q;
        for (const VecModK& x : gens) {
            VecModK w(b.cols(), b.modulus());
            for (std::size_t i = 0; i < b.cols(); ++i) {
                w.set(i, detail::mul_mod(scale, x[i], k));
            }
            out.add(w);
        }
    }
    return out;
}

} // namespace modlin
