#pragma once

#include <gmpxx.h>

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wefkit/ensemble.hpp"

namespace wefkit {

/// Q(x): upper-tail probability of a standard normal, via Q(x) = erfc(x / sqrt(2)) / 2.
inline double gaussian_tail(double x) { return 0.5 * std::erfc(x * M_SQRT1_2); }

/// log Q(x), stable far into the tail where Q underflows a double. For large x the
/// continued expansion  Q(x) = phi(x)/x * (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - ...)
/// is used; the series tail at the switch point is below 1e-13 relative.
inline double log_gaussian_tail(double x) {
    if (x < 26.0) return std::log(gaussian_tail(x));
    const double inv2 = 1.0 / (x * x);
    const double series = 1.0 + inv2 * (-1.0 + inv2 * (3.0 + inv2 * (-15.0 + inv2 * 105.0)));
    return -0.5 * x * x - 0.5 * std::log(2.0 * M_PI) - std::log(x) + std::log(series);
}

namespace detail {

/// Natural log of a positive exact rational.
inline double log_mpq(const mpq_class& q) {
    signed long en = 0, ed = 0;
    const double dn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    const double dd = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return std::log(dn) - std::log(dd) + (static_cast<double>(en) - ed) * M_LN2;
}

/// exp(log-sum-exp(logs)): numerically stable sum of terms given in the log domain.
inline double sum_from_logs(const std::vector<double>& logs) {
    if (logs.empty()) return 0.0;
    double m = logs.front();
    for (double l : logs) m = std::max(m, l);
    if (!std::isfinite(m)) return 0.0;
    double acc = 0.0;
    for (double l : logs) acc += std::exp(l - m);
    return std::exp(m + std::log(acc));
}

}  // namespace detail

/// Gilbert-Varshamov distance of a binary (n, k) code: the largest d such that
/// sum_{j=0}^{d-2} C(n-1, j) < 2^(n-k), evaluated in exact integer arithmetic.
inline int gv_distance(int n_bits, int k_bits) {
    if (k_bits <= 0 || k_bits >= n_bits)
        throw std::invalid_argument("gv_distance: need 0 < k_bits < n_bits");
    mpz_class threshold = 1;
    threshold <<= static_cast<unsigned>(n_bits - k_bits);
    mpz_class sum = 0;
    int best = 1;
    for (int d = 2; d <= n_bits + 1; ++d) {
        sum += binomial(static_cast<unsigned long>(n_bits - 1), d - 2);
        if (sum < threshold)
            best = d;
        else
            break;
    }
    return best;
}

/// Outcome of the minimum-distance bound: after excluding a fraction 1 - alpha of the
/// codes, the remaining codes have d_min >= d_hat. `lower_bound_only` marks the case
/// where the partial spectrum sum never reached 1 - alpha inside the truncation band,
/// so d_hat = truncation + 1 is only a lower bound on the achievable value.
struct ExpurgationResult {
    double alpha = 0.0;
    int d_hat = 0;
    mpq_class partial_sum;  ///< sum_{w=1}^{d_hat-1} A_w, exact
    bool lower_bound_only = false;
};

/// Largest d_hat with sum_{w=1}^{d_hat-1} A_w < 1 - alpha, exact rational arithmetic.
inline ExpurgationResult min_distance_bound(const std::map<int, mpq_class>& a_w, double alpha,
                                            int truncation_weight) {
    if (!(alpha >= 0.0) || alpha >= 1.0)
        throw std::invalid_argument("min_distance_bound: alpha must be in [0, 1)");
    mpq_class threshold(1);
    threshold -= mpq_class(alpha);  // double-to-rational conversion is exact

    ExpurgationResult res;
    res.alpha = alpha;
    mpq_class running = 0;
    mpq_class before = 0;
    for (int w = 1; w <= truncation_weight; ++w) {
        before = running;
        auto it = a_w.find(w);
        if (it != a_w.end()) running += it->second;
        if (running >= threshold) {
            res.d_hat = w;
            res.partial_sum = before;
            return res;
        }
    }
    res.d_hat = truncation_weight + 1;
    res.partial_sum = running;
    res.lower_bound_only = true;
    return res;
}

namespace detail {

inline void append_union_terms(std::vector<double>& logs, const EnsembleWef& e, double snr_db,
                               bool bit_weighted, int min_total_weight, double log_prefactor) {
    const double ebno = std::pow(10.0, snr_db / 10.0);
    const double rate = e.rate();
    const double log_n = std::log(static_cast<double>(e.N));
    for (const auto& [key, coeff] : e.coefficients) {
        const auto ex = unpack_exponents(key);
        const unsigned i = ex[0], p = ex[1];
        if (i < 1) continue;  // information-weight sum starts at i = 1
        const unsigned w = i + p;
        if (static_cast<int>(w) < min_total_weight) continue;
        double lt = detail::log_mpq(coeff) + log_prefactor +
                    log_gaussian_tail(std::sqrt(2.0 * w * rate * ebno));
        if (bit_weighted) lt += std::log(static_cast<double>(i)) - log_n;
        logs.push_back(lt);
    }
}

}  // namespace detail

/// Truncated union bound on the bit error rate under ML decoding, Eb/N0 given in dB:
/// P_b <= sum (i/N) A_{i,p} Q(sqrt(2 (i+p) R Eb/N0)). Terms with p = 0 and i >= 1 are
/// included when present, since dropping valid codewords would void the upper bound.
inline double ber_union_bound(const EnsembleWef& e, double snr_db) {
    std::vector<double> logs;
    detail::append_union_terms(logs, e, snr_db, /*bit_weighted=*/true, 1, 0.0);
    return detail::sum_from_logs(logs);
}

/// Truncated union bound on the frame error rate: same sum without the i/N factor.
inline double fer_union_bound(const EnsembleWef& e, double snr_db) {
    std::vector<double> logs;
    detail::append_union_terms(logs, e, snr_db, /*bit_weighted=*/false, 1, 0.0);
    return detail::sum_from_logs(logs);
}

/// Union bound on the BER of the expurgated ensemble: only codewords of total weight
/// >= d_hat remain and the retained code fraction alpha rescales the average.
inline double expurgated_ber_bound(const EnsembleWef& e, double alpha, int d_hat,
                                   double snr_db) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("expurgated_ber_bound: alpha must be in (0, 1]");
    std::vector<double> logs;
    detail::append_union_terms(logs, e, snr_db, /*bit_weighted=*/true, d_hat,
                               -std::log(alpha));
    return detail::sum_from_logs(logs);
}

/// Evaluated bound curves over an Eb/N0 grid plus the truncation/expurgation metadata
/// needed to reproduce them.
struct BoundCurve {
    std::vector<double> snr_grid_db;
    std::vector<double> ber;
    std::vector<double> fer;
    std::vector<double> expurgated_ber;  ///< empty unless expurgation was requested
    int truncation_weight = 0;
    int gv = 0;                      ///< GV distance of the (nN, kN) code
    bool below_gv_warning = false;   ///< truncation weight did not exceed the GV distance
    std::optional<ExpurgationResult> expurgation;
};

/// Evaluates BER and FER bounds on every grid point; with `alpha` set, also computes
/// d_hat from the total-weight spectrum and the expurgated BER bound.
inline BoundCurve sweep(const EnsembleWef& e, const std::vector<double>& snr_grid_db,
                        std::optional<double> alpha = std::nullopt) {
    if (snr_grid_db.empty()) throw std::invalid_argument("sweep: empty SNR grid");
    BoundCurve curve;
    curve.snr_grid_db = snr_grid_db;
    curve.truncation_weight = e.w_max;
    curve.gv = gv_distance(e.n * e.N, e.k * e.N);
    curve.below_gv_warning = !(e.w_max > curve.gv);
    if (alpha) {
        const auto a_w = ensemble_total_weight(e);
        curve.expurgation = min_distance_bound(a_w, *alpha, e.w_max);
    }
    for (double snr : snr_grid_db) {
        curve.ber.push_back(ber_union_bound(e, snr));
        curve.fer.push_back(fer_union_bound(e, snr));
        if (curve.expurgation)
            curve.expurgated_ber.push_back(
                expurgated_ber_bound(e, curve.expurgation->alpha, curve.expurgation->d_hat, snr));
    }
    return curve;
}

}  // namespace wefkit
