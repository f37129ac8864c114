#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "base.hpp"
#include "matrix.hpp"
#include "residue.hpp"

namespace modlin {

/// A layered branching program on n states: T layers of n x n nonnegative
/// transition counts, layer t stored row-major in layers[t]. Entry (r, c)
/// of a layer is the number of parallel edges from state c on its right
/// side to state r on its left side; a path enters at layer T-1 (the last)
/// and exits at layer 0 (the first). The number of paths from entry state
/// j to exit state h is then the (h, j) entry of the ordinary matrix
/// product layers[0] * layers[1] * ... * layers[T-1].
struct LayeredProgram {
    std::size_t dim;
    std::vector<std::vector<std::int64_t>> layers;
};

namespace detail {

inline void validate_program(const LayeredProgram& prog, std::size_t entry, std::size_t exit) {
    if (prog.dim == 0) throw std::invalid_argument("program needs at least one state");
    for (const auto& layer : prog.layers) {
        if (layer.size() != prog.dim * prog.dim) {
            throw std::invalid_argument("each layer must hold dim * dim entries");
        }
        for (std::int64_t e : layer) {
            if (e < 0) throw std::invalid_argument("edge multiplicities must be nonnegative");
        }
    }
    if (entry >= prog.dim || exit >= prog.dim) {
        throw std::invalid_argument("entry and exit states must be below dim");
    }
}

} // namespace detail

/// Number of entry->exit paths, mod k, via the matrix-product view: start
/// with the entry indicator vector and push it through the layers from
/// last to first, reducing mod k at every step. Linear in the program
/// size; no path limit.
inline Residue count_paths_entry(const LayeredProgram& prog, std::size_t entry, std::size_t exit,
                                 const Modulus& k) {
    detail::validate_program(prog, entry, exit);
    const std::uint64_t kk = k.value();
    const std::size_t n = prog.dim;
    std::vector<std::uint64_t> v(n, 0);
    v[entry] = 1 % kk;
    for (std::size_t t = prog.layers.size(); t-- > 0;) {
        const auto& layer = prog.layers[t];
        std::vector<std::uint64_t> next(n, 0);
        for (std::size_t r = 0; r < n; ++r) {
            std::uint64_t acc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                const std::uint64_t e = detail::canonical(layer[r * n + c], kk);
                acc = detail::add_mod(acc, detail::mul_mod(e, v[c], kk), kk);
            }
            next[r] = acc;
        }
        v = std::move(next);
    }
    return Residue{v[exit], kk};
}

/// Number of entry->exit paths, mod k, by literally walking every path:
/// each positive multiplicity spawns that many recursive branches. Throws
/// size_guard_error once more than 10^7 complete paths (to any exit state)
/// have been enumerated. Exponentially slow by design — this is the
/// reference count_paths_entry is checked against.
inline Residue count_paths_explicit(const LayeredProgram& prog, std::size_t entry, std::size_t exit,
                                    const Modulus& k) {
    detail::validate_program(prog, entry, exit);
    constexpr std::uint64_t guard = 10'000'000;
    std::uint64_t completed = 0; // full paths, any exit state
    std::uint64_t steps = 0;     // edges traversed, so dead ends are budgeted too
    std::uint64_t hits = 0;

    // walk(t, state): state on the right side of layer t; t == size means
    // "before the last layer", t == 0 means all layers crossed.
    auto walk = [&](auto&& self, std::size_t t, std::size_t state) -> void {
        if (t == 0) {
            if (++completed > guard) {
                throw size_guard_error("explicit path enumeration exceeds the 10^7 guard");
            }
            if (state == exit) ++hits;
            return;
        }
        const auto& layer = prog.layers[t - 1];
        for (std::size_t r = 0; r < prog.dim; ++r) {
            const std::int64_t mult = layer[r * prog.dim + state];
            for (std::int64_t copy = 0; copy < mult; ++copy) {
                if (++steps > guard * 8) {
                    throw size_guard_error("explicit path enumeration exceeds the traversal budget");
                }
                self(self, t - 1, r);
            }
        }
    };
    walk(walk, prog.layers.size(), entry);
    return Residue{hits % k.value(), k.value()};
}

} // namespace modlin
