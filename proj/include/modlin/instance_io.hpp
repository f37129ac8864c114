#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "residue.hpp"

namespace modlin {

/// Thrown on malformed instance text; the message names the offending line.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parsed problem instance: the coefficient matrix and, when the input
/// supplied one, the right-hand side.
struct Instance {
    MatModK a;
    std::optional<VecModK> rhs;

    friend bool operator==(const Instance&, const Instance&) = default;
};

namespace detail {

struct InstanceLine {
    std::size_t number; // 1-based, counting every physical line
    std::vector<std::string> tokens;
};

// Physical lines -> token lines, with '#' comments stripped and lines that
// end up empty skipped.
inline std::vector<InstanceLine> tokenize_instance(std::istream& in) {
    std::vector<InstanceLine> lines;
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream split(raw);
        InstanceLine line{number, {}};
        std::string tok;
        while (split >> tok) line.tokens.push_back(std::move(tok));
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

template <typename T>
inline T parse_integer(const std::string& tok, std::size_t line, const char* what) {
    try {
        std::size_t used = 0;
        T value;
        if constexpr (std::is_signed_v<T>) {
            value = static_cast<T>(std::stoll(tok, &used));
        } else {
            if (!tok.empty() && tok[0] == '-') throw std::invalid_argument("negative");
            value = static_cast<T>(std::stoull(tok, &used));
        }
        if (used != tok.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw parse_error("line " + std::to_string(line) + ": expected " + what + ", got '" + tok + "'");
    }
}

// Entry tokens are signed 64-bit integers; nonnegative ones may use the
// full unsigned 64-bit range so that canonical representatives of any
// modulus below 2^64 round-trip. Returns the canonical value mod k.
inline std::uint64_t parse_entry(const std::string& tok, std::size_t line, std::uint64_t k) {
    if (!tok.empty() && tok[0] == '-') {
        return canonical(parse_integer<std::int64_t>(tok, line, "an integer entry"), k);
    }
    return parse_integer<std::uint64_t>(tok, line, "an integer entry") % k;
}

} // namespace detail

/// Parse the text instance format:
///
///     m n k          header: rows, columns, modulus
///     a11 ... a1n    m rows of n signed integer entries
///     ...
///     y1 ... ym      optional right-hand side line
///
/// '#' starts a comment anywhere on a line; blank lines are ignored.
/// Entries may be any signed 64-bit integers and are reduced mod k. When
/// `modulus_override` is given it replaces the header's k (the header k
/// must still be a valid modulus).
inline Instance parse_instance(std::istream& in,
                               std::optional<std::uint64_t> modulus_override = std::nullopt) {
    const auto lines = detail::tokenize_instance(in);
    if (lines.empty()) throw parse_error("empty instance: expected an 'm n k' header line");

    const auto& header = lines[0];
    if (header.tokens.size() != 3) {
        throw parse_error("line " + std::to_string(header.number) +
                          ": header must be exactly 'm n k'");
    }
    const auto m = detail::parse_integer<std::uint64_t>(header.tokens[0], header.number, "a row count");
    const auto n = detail::parse_integer<std::uint64_t>(header.tokens[1], header.number, "a column count");
    auto k = detail::parse_integer<std::uint64_t>(header.tokens[2], header.number, "a modulus");
    if (m == 0 || n == 0) {
        throw parse_error("line " + std::to_string(header.number) + ": dimensions must be positive");
    }
    if (m > 4096 || n > 4096) {
        throw size_guard_error("instance dimensions exceed the 4096 x 4096 size guard");
    }
    if (k < 2) {
        throw parse_error("line " + std::to_string(header.number) + ": modulus must be at least 2");
    }
    if (modulus_override) k = *modulus_override;
    const Modulus modulus = Modulus::factorize(k);

    if (lines.size() < 1 + m) {
        throw parse_error("expected " + std::to_string(m) + " matrix rows, got " +
                          std::to_string(lines.size() - 1));
    }
    MatModK a(m, n, modulus);
    for (std::size_t r = 0; r < m; ++r) {
        const auto& line = lines[1 + r];
        if (line.tokens.size() != n) {
            throw parse_error("line " + std::to_string(line.number) + ": expected " +
                              std::to_string(n) + " entries, got " +
                              std::to_string(line.tokens.size()));
        }
        for (std::size_t c = 0; c < n; ++c) {
            a.set(r, c, detail::parse_entry(line.tokens[c], line.number, k));
        }
    }
    Instance inst{std::move(a), std::nullopt};

    if (lines.size() > 1 + m) {
        const auto& line = lines[1 + m];
        if (lines.size() > 2 + m) {
            throw parse_error("line " + std::to_string(lines[2 + m].number) +
                              ": unexpected content after the right-hand side");
        }
        if (line.tokens.size() != m) {
            throw parse_error("line " + std::to_string(line.number) +
                              ": right-hand side must have " + std::to_string(m) + " entries, got " +
                              std::to_string(line.tokens.size()));
        }
        VecModK y(m, modulus);
        for (std::size_t i = 0; i < m; ++i) {
            y.set(i, detail::parse_entry(line.tokens[i], line.number, k));
        }
        inst.rhs = std::move(y);
    }
    return inst;
}

/// parse_instance on a file; unreadable files raise parse_error.
inline Instance parse_instance_file(const std::string& path,
                                    std::optional<std::uint64_t> modulus_override = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open input file '" + path + "'");
    return parse_instance(in, modulus_override);
}

/// Serialize an instance in the same text format (canonical entries, no
/// comments). parse_instance(write_instance(x)) reproduces x.
inline void write_instance(std::ostream& out, const Instance& inst) {
    out << inst.a.rows() << ' ' << inst.a.cols() << ' ' << inst.a.modulus().value() << '\n';
    for (std::size_t r = 0; r < inst.a.rows(); ++r) {
        for (std::size_t c = 0; c < inst.a.cols(); ++c) {
            out << inst.a(r, c) << (c + 1 == inst.a.cols() ? '\n' : ' ');
        }
    }
    if (inst.rhs) {
        for (std::size_t i = 0; i < inst.rhs->dim(); ++i) {
            out << (*inst.rhs)[i] << (i + 1 == inst.rhs->dim() ? '\n' : ' ');
        }
    }
}

} // namespace modlin
