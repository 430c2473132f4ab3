#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

namespace wefkit {

/// Exponent tuple packed into a single ordered key, 21 bits per variable,
/// most significant field = first variable. Integer order == lexicographic order.
using ExpKey = std::uint64_t;

constexpr int kExpBits = 21;
constexpr std::uint64_t kExpMask = (1ull << kExpBits) - 1;

/// Truncation sentinel: keep every term regardless of total weight.
constexpr int kNoTruncation = std::numeric_limits<int>::max();

inline ExpKey pack_exponents(unsigned e0, unsigned e1, unsigned e2 = 0) {
    return (static_cast<std::uint64_t>(e0) << (2 * kExpBits)) |
           (static_cast<std::uint64_t>(e1) << kExpBits) | e2;
}

inline std::array<unsigned, 3> unpack_exponents(ExpKey key) {
    return {static_cast<unsigned>((key >> (2 * kExpBits)) & kExpMask),
            static_cast<unsigned>((key >> kExpBits) & kExpMask),
            static_cast<unsigned>(key & kExpMask)};
}

inline unsigned total_weight(ExpKey key) {
    const auto e = unpack_exponents(key);
    return e[0] + e[1] + e[2];
}

/// Sparse multivariate polynomial with exact integer coefficients, truncated so that
/// only terms with total exponent weight <= w_max are kept. Variables are (I, P) for
/// arity 2 and (I1, I2, P) for arity 3; arity-2 keys leave the third field at zero.
///
/// Exponents only ever add under multiplication, so truncation is exact: every
/// retained coefficient equals the coefficient of the untruncated product.
class WeightPolynomial {
  public:
    using TermMap = std::map<ExpKey, mpz_class>;

    WeightPolynomial(int arity, int w_max) : arity_(arity), w_max_(w_max) {
        if (arity != 2 && arity != 3)
            throw std::invalid_argument("WeightPolynomial: arity must be 2 or 3");
        if (w_max < 0) throw std::invalid_argument("WeightPolynomial: w_max must be >= 0");
    }

    static WeightPolynomial constant(int arity, int w_max, const mpz_class& value) {
        WeightPolynomial p(arity, w_max);
        p.add_term(0, value);
        return p;
    }

    static WeightPolynomial monomial(int arity, int w_max, unsigned e0, unsigned e1,
                                     unsigned e2 = 0, const mpz_class& coeff = 1) {
        WeightPolynomial p(arity, w_max);
        p.add_term(pack_exponents(e0, e1, e2), coeff);
        return p;
    }

    int arity() const { return arity_; }
    int w_max() const { return w_max_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Accumulates `coeff` on the given exponent tuple; drops the term if it falls
    /// outside the truncation band or the resulting coefficient is zero.
    void add_term(ExpKey key, const mpz_class& coeff) {
        if (coeff == 0) return;
        if (arity_ == 2 && (key & kExpMask) != 0)
            throw std::invalid_argument("WeightPolynomial: arity-2 term uses third variable");
        if (static_cast<int>(total_weight(key)) > w_max_) return;
        auto [it, inserted] = terms_.try_emplace(key, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const mpz_class& coefficient(ExpKey key) const {
        static const mpz_class zero = 0;
        auto it = terms_.find(key);
        return it == terms_.end() ? zero : it->second;
    }

    /// Copy with a different truncation bound; terms beyond the new bound are dropped.
    WeightPolynomial with_w_max(int w_max) const {
        WeightPolynomial out(arity_, w_max);
        for (const auto& [key, coeff] : terms_) out.add_term(key, coeff);
        return out;
    }

    /// Value at I = I1 = I2 = P = 1, i.e. the sum of all retained coefficients.
    mpz_class substitute_ones() const {
        mpz_class total = 0;
        for (const auto& [key, coeff] : terms_) total += coeff;
        return total;
    }

    WeightPolynomial& operator+=(const WeightPolynomial& rhs) {
        check_compatible(rhs, "poly_add");
        for (const auto& [key, coeff] : rhs.terms_) add_term(key, coeff);
        return *this;
    }

    friend WeightPolynomial operator+(WeightPolynomial lhs, const WeightPolynomial& rhs) {
        lhs += rhs;
        return lhs;
    }

    friend bool operator==(const WeightPolynomial& a, const WeightPolynomial& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    void check_compatible(const WeightPolynomial& rhs, const char* op) const {
        if (arity_ != rhs.arity_)
            throw std::invalid_argument(std::string(op) + ": arity mismatch");
        if (w_max_ != rhs.w_max_)
            throw std::invalid_argument(std::string(op) + ": w_max mismatch");
    }

  private:
    int arity_;
    int w_max_;
    TermMap terms_;
};

/// Exact truncated product: convolution of exponent tuples with unbounded-integer
/// coefficients; terms whose total weight exceeds w_max are discarded.
inline WeightPolynomial poly_mul(const WeightPolynomial& a, const WeightPolynomial& b) {
    a.check_compatible(b, "poly_mul");
    WeightPolynomial out(a.arity(), a.w_max());
    const auto budget = static_cast<unsigned>(
        a.w_max() == kNoTruncation ? kNoTruncation : a.w_max());
    mpz_class prod;
    for (const auto& [ka, ca] : a.terms()) {
        const unsigned wa = total_weight(ka);
        if (wa > budget) continue;
        for (const auto& [kb, cb] : b.terms()) {
            if (total_weight(kb) > budget - wa) continue;
            prod = ca * cb;
            out.add_term(ka + kb, prod);  // packed fields add without carry: each sum <= w_max
        }
    }
    return out;
}

inline WeightPolynomial poly_add(const WeightPolynomial& a, const WeightPolynomial& b) {
    return a + b;
}

}  // namespace wefkit
