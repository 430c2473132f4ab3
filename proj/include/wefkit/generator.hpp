#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wefkit {

/// Binary polynomial over GF(2), bit j = coefficient of D^j (lowest degree first).
/// The all-zero polynomial is represented by an empty vector.
using BitPoly = std::vector<std::uint8_t>;

/// Degree of a binary polynomial, -1 for the zero polynomial.
inline int poly_degree(const BitPoly& p) {
    for (int j = static_cast<int>(p.size()) - 1; j >= 0; --j)
        if (p[static_cast<std::size_t>(j)]) return j;
    return -1;
}

/// Parses a generator polynomial given in octal notation.
///
/// The digit string is read as a base-8 integer whose binary expansion gives the
/// coefficients, least significant bit = coefficient of D^0. "7" -> 1+D+D^2,
/// "5" -> 1+D^2, "1" -> 1. Trailing zero coefficients are trimmed.
inline BitPoly parse_octal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_octal: empty string");
    unsigned long long value = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '7')
            throw std::invalid_argument("parse_octal: non-octal character '" + std::string(1, ch) +
                                        "' in \"" + text + "\"");
        if (value > (~0ULL >> 3)) throw std::invalid_argument("parse_octal: value too large");
        value = value * 8 + static_cast<unsigned long long>(ch - '0');
    }
    BitPoly bits;
    while (value != 0) {
        bits.push_back(static_cast<std::uint8_t>(value & 1));
        value >>= 1;
    }
    return bits;
}

enum class RateKind {
    kHalfSystematic,      ///< rate-1/2, one input stream
    kTwoThirdsSystematic  ///< rate-2/3, two input streams
};

/// Generator specification of a recursive systematic convolutional encoder with a
/// common feedback (denominator) polynomial shared by all parity numerators.
struct GeneratorSpec {
    RateKind rate_kind;
    std::vector<BitPoly> numerators;  ///< one parity numerator per input stream
    BitPoly denominator;              ///< feedback polynomial, constant term must be 1
    int memory = 0;                   ///< degree of the denominator

    int num_inputs() const { return rate_kind == RateKind::kHalfSystematic ? 1 : 2; }

    GeneratorSpec(RateKind kind, std::vector<BitPoly> nums, BitPoly den)
        : rate_kind(kind), numerators(std::move(nums)), denominator(std::move(den)) {
        if (denominator.empty() || denominator[0] != 1)
            throw std::invalid_argument("GeneratorSpec: denominator must have constant term 1");
        memory = poly_degree(denominator);
        if (memory < 1) throw std::invalid_argument("GeneratorSpec: memory must be >= 1");
        const auto expected = static_cast<std::size_t>(num_inputs());
        if (numerators.size() != expected)
            throw std::invalid_argument("GeneratorSpec: expected " + std::to_string(expected) +
                                        " numerator(s), got " + std::to_string(numerators.size()));
        for (const auto& num : numerators)
            if (poly_degree(num) > memory)
                throw std::invalid_argument("GeneratorSpec: numerator degree exceeds memory");
    }

    /// Parses the textual form used on the command line and in configuration files:
    /// rows separated by ';', entries by ','; each row carries the identity part of the
    /// systematic generator followed by one parity fraction "num/den" in octal.
    ///   "1,5/7"             rate-1/2
    ///   "1,0,1/7;0,1,5/7"   rate-2/3
    static GeneratorSpec from_text(const std::string& text);
};

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(strip(s.substr(start)));
            break;
        }
        out.push_back(strip(s.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

inline GeneratorSpec GeneratorSpec::from_text(const std::string& text) {
    const auto rows = detail::split(text, ';');
    if (rows.empty() || rows.size() > 2)
        throw std::invalid_argument("generator: expected 1 or 2 rows, got " +
                                    std::to_string(rows.size()));
    const std::size_t k = rows.size();
    std::vector<BitPoly> numerators;
    BitPoly denominator;
    for (std::size_t r = 0; r < k; ++r) {
        const auto entries = detail::split(rows[r], ',');
        if (entries.size() != k + 1)
            throw std::invalid_argument("generator: row " + std::to_string(r + 1) + " needs " +
                                        std::to_string(k + 1) + " entries");
        for (std::size_t j = 0; j < k; ++j) {
            const BitPoly e = parse_octal(entries[j]);
            const bool want_one = (j == r);
            const bool is_one = (e.size() == 1 && e[0] == 1);
            const bool is_zero = e.empty();
            if ((want_one && !is_one) || (!want_one && !is_zero))
                throw std::invalid_argument("generator: systematic part must be the identity");
        }
        const auto frac = detail::split(entries[k], '/');
        if (frac.size() != 2)
            throw std::invalid_argument("generator: parity entry must be of the form num/den");
        numerators.push_back(parse_octal(frac[0]));
        const BitPoly den = parse_octal(frac[1]);
        if (r == 0)
            denominator = den;
        else if (den != denominator)
            throw std::invalid_argument("generator: all rows must share the same denominator");
    }
    const RateKind kind = (k == 1) ? RateKind::kHalfSystematic : RateKind::kTwoThirdsSystematic;
    return GeneratorSpec(kind, std::move(numerators), std::move(denominator));
}

}  // namespace wefkit
