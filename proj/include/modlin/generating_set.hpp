#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "residue.hpp"

namespace modlin {

/// An ordered list of nonzero, pairwise-distinct vectors in (Z/kZ)^n,
/// read as generators of the subgroup of all their Z/kZ-linear
/// combinations. Insertion order is preserved; zero vectors and repeats
/// are silently dropped so construction order never affects membership.
class GeneratingSet {
public:
    GeneratingSet(std::size_t ambient_dim, Modulus modulus)
        : ambient_dim_(ambient_dim), modulus_(std::move(modulus)) {}

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    const Modulus& modulus() const noexcept { return modulus_; }

    std::size_t size() const noexcept { return vectors_.size(); }
    bool empty() const noexcept { return vectors_.empty(); }

    const VecModK& operator[](std::size_t i) const { return vectors_.at(i); }
    std::vector<VecModK>::const_iterator begin() const noexcept { return vectors_.begin(); }
    std::vector<VecModK>::const_iterator end() const noexcept { return vectors_.end(); }

    /// Append a generator; returns false if it was dropped as zero or as a
    /// duplicate of an earlier generator.
    bool add(const VecModK& v) {
        if (v.dim() != ambient_dim_) throw std::invalid_argument("generator has wrong dimension");
        if (v.modulus() != modulus_) throw std::invalid_argument("generator has wrong modulus");
        bool zero = true;
        for (std::size_t i = 0; i < v.dim(); ++i) {
            if (v[i] != 0) {
                zero = false;
                break;
            }
        }
        if (zero) return false;
        for (const auto& existing : vectors_) {
            if (existing.entries() == v.entries()) return false;
        }
        vectors_.push_back(v);
        return true;
    }

    friend bool operator==(const GeneratingSet&, const GeneratingSet&) = default;

private:
    std::size_t ambient_dim_;
    Modulus modulus_;
    std::vector<VecModK> vectors_;
};

} // namespace modlin
