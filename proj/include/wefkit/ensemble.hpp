#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

#include "wefkit/wef.hpp"

namespace wefkit {

/// C(n, k) as an exact integer; 0 outside 0 <= k <= n.
inline mpz_class binomial(unsigned long n, long k) {
    if (k < 0 || static_cast<unsigned long>(k) > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
    return r;
}

enum class EnsembleKind { kPcc, kBcc };

inline const char* ensemble_kind_name(EnsembleKind kind) {
    return kind == EnsembleKind::kPcc ? "pcc" : "bcc";
}

/// Uniform-permutation ensemble average of the input-parity weight enumerator.
/// Coefficients are exact rationals keyed by (information weight i, parity weight p).
/// Both ensembles here transmit one information and two parity symbols per section,
/// so k = 1, n = 3 and R = 1/3.
struct EnsembleWef {
    EnsembleKind kind = EnsembleKind::kPcc;
    int N = 0;       ///< permutation size
    int k = 1;       ///< information symbols per section
    int n = 3;       ///< code symbols per section
    int w_max = 0;
    std::map<ExpKey, mpq_class> coefficients;  ///< key = pack_exponents(i, p)
    mpz_class num_codes;                       ///< N! for PCC, (N!)^3 for BCC

    double rate() const { return static_cast<double>(k) / n; }

    const mpq_class& coefficient(unsigned i, unsigned p) const {
        static const mpq_class zero = 0;
        auto it = coefficients.find(pack_exponents(i, p));
        return it == coefficients.end() ? zero : it->second;
    }
};

inline mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Average IP-WEF of the parallel concatenated ensemble with one uniform permutation
/// on the lower encoder input:
///
///   A_{i,p} = sum_{p1} A^U_{i,p1} A^L_{i,p-p1} / C(N, i)
///
/// Component tables must be rate-1/2 enumerators over the same N.
inline EnsembleWef pcc_average(const WefTable& upper, const WefTable& lower, int N) {
    if (upper.arity != 2 || lower.arity != 2)
        throw std::invalid_argument("pcc_average: component tables must have arity 2");
    if (upper.block_sections != N || lower.block_sections != N)
        throw std::invalid_argument("pcc_average: component tables must use the same N");
    const int w_max = std::min(upper.w_max, lower.w_max);

    EnsembleWef e;
    e.kind = EnsembleKind::kPcc;
    e.N = N;
    e.w_max = w_max;
    e.num_codes = factorial(static_cast<unsigned long>(N));

    // Group the lower table by information weight, then convolve the parity profiles.
    std::map<unsigned, std::vector<std::pair<unsigned, const mpz_class*>>> lower_by_i;
    for (const auto& [kl, cl] : lower.coefficients) {
        const auto el = unpack_exponents(kl);
        lower_by_i[el[0]].emplace_back(el[1], &cl);
    }
    std::map<ExpKey, mpz_class> numerators;  // (i, p) -> exact integer numerator
    for (const auto& [ku, cu] : upper.coefficients) {
        const auto eu = unpack_exponents(ku);
        const unsigned i = eu[0], p1 = eu[1];
        auto group = lower_by_i.find(i);
        if (group == lower_by_i.end()) continue;
        for (const auto& [p2, cl] : group->second) {
            if (i + p1 + p2 > static_cast<unsigned>(w_max)) continue;
            numerators[pack_exponents(i, p1 + p2)] += cu * (*cl);
        }
    }
    for (const auto& [key, num] : numerators) {
        const auto ex = unpack_exponents(key);
        mpq_class v(num, binomial(static_cast<unsigned long>(N), static_cast<long>(ex[0])));
        v.canonicalize();
        e.coefficients.emplace(key, std::move(v));
    }
    return e;
}

/// Average IP-WEF of the uncoupled braided ensemble with three independent uniform
/// permutations (info into the lower trellis, each parity into the other trellis):
///
///   A_{i,p} = sum_{p1} A^U_{i,p1,p-p1} A^L_{i,p-p1,p1} / (C(N,i) C(N,p1) C(N,p-p1))
///
/// where a component index (i, x, y) counts trellis paths with first-input weight i,
/// second-input (fed-back parity) weight x and own parity weight y. Terms whose
/// binomial support vanishes contribute zero.
inline EnsembleWef bcc_average(const WefTable& upper, const WefTable& lower, int N) {
    if (upper.arity != 3 || lower.arity != 3)
        throw std::invalid_argument("bcc_average: component tables must have arity 3");
    if (upper.block_sections != N || lower.block_sections != N)
        throw std::invalid_argument("bcc_average: component tables must use the same N");
    const int w_max = std::min(upper.w_max, lower.w_max);
    const unsigned long un = static_cast<unsigned long>(N);

    std::vector<mpz_class> choose(static_cast<std::size_t>(w_max) + 1);
    for (int j = 0; j <= w_max; ++j) choose[static_cast<std::size_t>(j)] = binomial(un, j);

    EnsembleWef e;
    e.kind = EnsembleKind::kBcc;
    e.N = N;
    e.w_max = w_max;
    e.num_codes = factorial(un);
    e.num_codes = e.num_codes * e.num_codes * e.num_codes;

    mpq_class term;
    for (const auto& [ku, cu] : upper.coefficients) {
        const auto eu = unpack_exponents(ku);
        const unsigned i = eu[0], pl = eu[1], pu = eu[2];  // x = lower parity, y = upper parity
        if (i + pl + pu > static_cast<unsigned>(w_max)) continue;
        const mpz_class& cl = lower.coefficient(pack_exponents(i, pu, pl));
        if (cl == 0) continue;
        if (static_cast<int>(i) > N || static_cast<int>(pl) > N || static_cast<int>(pu) > N)
            continue;  // binomial vanishes outside support
        mpz_class den = choose[i] * choose[pl];
        den *= choose[pu];
        if (den == 0) continue;
        term = mpq_class(cu * cl, den);
        term.canonicalize();
        e.coefficients[pack_exponents(i, pl + pu)] += term;
    }
    // Drop exact zeros so sparsity invariants match the component tables.
    for (auto it = e.coefficients.begin(); it != e.coefficients.end();)
        it = (it->second == 0) ? e.coefficients.erase(it) : std::next(it);
    return e;
}

/// Total-weight spectrum of the ensemble: A_w = sum_{i+p=w} A_{i,p}.
inline std::map<int, mpq_class> ensemble_total_weight(const EnsembleWef& e) {
    std::map<int, mpq_class> out;
    for (const auto& [key, coeff] : e.coefficients)
        out[static_cast<int>(total_weight(key))] += coeff;
    return out;
}

}  // namespace wefkit
