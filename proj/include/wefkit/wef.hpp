#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wefkit/transfer_matrix.hpp"
#include "wefkit/weight_poly.hpp"

namespace wefkit {

/// Input-parity weight enumerator of a terminated trellis code: exact path counts
/// keyed by exponent tuple, (i, p) for arity 2 and (i1, i2, p) for arity 3.
struct WefTable {
    int arity = 0;
    int block_sections = 0;  ///< N, the number of trellis sections
    int w_max = 0;
    std::map<ExpKey, mpz_class> coefficients;

    const mpz_class& coefficient(ExpKey key) const {
        static const mpz_class zero = 0;
        auto it = coefficients.find(key);
        return it == coefficients.end() ? zero : it->second;
    }
};

inline TransferMatrix mat_mul(const TransferMatrix& a, const TransferMatrix& b) {
    if (a.dimension != b.dimension || a.arity != b.arity)
        throw std::invalid_argument("mat_mul: dimension/arity mismatch");
    const int w_max = a.entries.front().w_max();
    TransferMatrix out(a.dimension, a.arity, w_max);
    for (int r = 0; r < a.dimension; ++r)
        for (int c = 0; c < a.dimension; ++c) {
            WeightPolynomial acc(a.arity, w_max);
            for (int k = 0; k < a.dimension; ++k) acc += poly_mul(a.at(r, k), b.at(k, c));
            out.at(r, c) = std::move(acc);
        }
    return out;
}

/// M^N over the truncated polynomial semiring by square-and-multiply. Entries are
/// re-truncated to the requested w_max before exponentiation.
inline TransferMatrix mat_pow(const TransferMatrix& m, long n, int w_max) {
    if (n < 1) throw std::invalid_argument("mat_pow: exponent must be >= 1");
    TransferMatrix base(m.dimension, m.arity, w_max);
    for (int r = 0; r < m.dimension; ++r)
        for (int c = 0; c < m.dimension; ++c) base.at(r, c) = m.at(r, c).with_w_max(w_max);
    TransferMatrix result(m.dimension, m.arity, w_max);
    for (int r = 0; r < m.dimension; ++r)
        result.at(r, r) = WeightPolynomial::constant(m.arity, w_max, 1);
    while (n > 0) {
        if (n & 1) result = mat_mul(result, base);
        n >>= 1;
        if (n > 0) base = mat_mul(base, base);
    }
    return result;
}

namespace detail {

/// Index arithmetic for the packed band { tuples with component sum <= W }.
/// Arity 3 stores tuples (a, b, c) lexicographically; arity 2 stores (a, b).
class Band {
  public:
    Band(int arity, int w) : arity_(arity), w_(static_cast<unsigned>(w)) {
        if (arity == 3) {
            off_.resize(w_ + 2);
            std::size_t acc = 0;
            for (unsigned a = 0; a <= w_; ++a) {
                off_[a] = acc;
                const std::size_t r = w_ - a;  // pairs (b, c) with b + c <= r
                acc += (r + 1) * (r + 2) / 2;
            }
            off_[w_ + 1] = acc;
            size_ = acc;
        } else {
            size_ = static_cast<std::size_t>(w_ + 1) * (w_ + 2) / 2;
        }
    }

    std::size_t size() const { return size_; }
    unsigned w() const { return w_; }

    std::size_t index3(unsigned a, unsigned b, unsigned c) const {
        return off_[a] + static_cast<std::size_t>(b) * (w_ - a + 1) -
               static_cast<std::size_t>(b) * (b - 1) / 2 + c;
    }
    std::size_t index2(unsigned a, unsigned b) const {
        return static_cast<std::size_t>(a) * (w_ + 1) -
               static_cast<std::size_t>(a) * (a - 1) / 2 + b;
    }

  private:
    int arity_;
    unsigned w_;
    std::size_t size_ = 0;
    std::vector<std::size_t> off_;
};

struct MonomialBranch {
    int from, to;
    unsigned d0, d1, d2;  // exponent shift of the branch monomial
    mpz_class coeff;
};

}  // namespace detail

/// IP-WEF of the trellis code terminated after N sections: the (1,1) element of M^N,
/// i.e. the enumerator of all zero-state-to-zero-state paths of length N (no tail).
///
/// Computed as e_1^T M^N e_1 by propagating a state-indexed vector of truncated
/// polynomials section by section; each matrix entry acts as a set of monomial
/// shifts, so one section costs O(branches * band size) big-integer additions.
/// The result is identical to mat_pow(m, n, w_max).at(0, 0).
inline WefTable terminated_wef(const TransferMatrix& m, long n, int w_max) {
    if (n < 1) throw std::invalid_argument("terminated_wef: N must be >= 1");
    if (w_max < 0) throw std::invalid_argument("terminated_wef: w_max must be >= 0");
    const int arity = m.arity;
    const int dim = m.dimension;
    const detail::Band band(arity, w_max);
    const unsigned w = band.w();

    std::vector<detail::MonomialBranch> branches;
    unsigned max_step[3] = {0, 0, 0};  // per-coordinate growth cap per section
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            for (const auto& [key, coeff] : m.at(r, c).terms()) {
                const auto e = unpack_exponents(key);
                branches.push_back({r, c, e[0], e[1], e[2], coeff});
                for (int v = 0; v < 3; ++v) max_step[v] = std::max(max_step[v], e[v]);
            }

    using StateVec = std::vector<mpz_class>;
    std::vector<StateVec> cur(static_cast<std::size_t>(dim), StateVec(band.size()));
    std::vector<StateVec> nxt(static_cast<std::size_t>(dim), StateVec(band.size()));
    cur[0][0] = 1;

    const auto cap = [&](unsigned steps, unsigned per_step) {
        const unsigned long grown = static_cast<unsigned long>(steps) * per_step;
        return static_cast<unsigned>(std::min<unsigned long>(grown, w));
    };

    for (long sec = 1; sec <= n; ++sec) {
        for (auto& vec : nxt)
            for (auto& x : vec) x = 0;
        const unsigned steps = static_cast<unsigned>(sec - 1);
        for (const auto& br : branches) {
            const StateVec& src = cur[static_cast<std::size_t>(br.from)];
            StateVec& dst = nxt[static_cast<std::size_t>(br.to)];
            const unsigned dw = br.d0 + br.d1 + br.d2;
            if (dw > w) continue;  // branch monomial alone exceeds the band
            const bool unit = (br.coeff == 1);
            if (arity == 3) {
                const unsigned a_hi = std::min(cap(steps, max_step[0]), w - dw);
                for (unsigned a = 0; a <= a_hi; ++a) {
                    const unsigned b_hi = std::min(cap(steps, max_step[1]), w - dw - a);
                    for (unsigned b = 0; b <= b_hi; ++b) {
                        const unsigned c_hi = std::min(cap(steps, max_step[2]), w - dw - a - b);
                        std::size_t si = band.index3(a, b, 0);
                        std::size_t di = band.index3(a + br.d0, b + br.d1, br.d2);
                        for (unsigned c = 0; c <= c_hi; ++c, ++si, ++di) {
                            const mpz_class& s = src[si];
                            if (mpz_sgn(s.get_mpz_t()) == 0) continue;
                            mpz_class& d = dst[di];
                            if (unit)
                                mpz_add(d.get_mpz_t(), d.get_mpz_t(), s.get_mpz_t());
                            else
                                mpz_addmul(d.get_mpz_t(), br.coeff.get_mpz_t(), s.get_mpz_t());
                        }
                    }
                }
            } else {
                const unsigned a_hi = std::min(cap(steps, max_step[0]), w - dw);
                for (unsigned a = 0; a <= a_hi; ++a) {
                    const unsigned b_hi = std::min(cap(steps, max_step[1]), w - dw - a);
                    std::size_t si = band.index2(a, 0);
                    std::size_t di = band.index2(a + br.d0, br.d1);
                    for (unsigned b = 0; b <= b_hi; ++b, ++si, ++di) {
                        const mpz_class& s = src[si];
                        if (mpz_sgn(s.get_mpz_t()) == 0) continue;
                        mpz_class& d = dst[di];
                        if (unit)
                            mpz_add(d.get_mpz_t(), d.get_mpz_t(), s.get_mpz_t());
                        else
                            mpz_addmul(d.get_mpz_t(), br.coeff.get_mpz_t(), s.get_mpz_t());
                    }
                }
            }
        }
        cur.swap(nxt);
    }

    WefTable table;
    table.arity = arity;
    table.block_sections = static_cast<int>(n);
    table.w_max = w_max;
    const StateVec& final_vec = cur[0];
    if (arity == 3) {
        for (unsigned a = 0; a <= w; ++a)
            for (unsigned b = 0; a + b <= w; ++b)
                for (unsigned c = 0; a + b + c <= w; ++c) {
                    const mpz_class& v = final_vec[band.index3(a, b, c)];
                    if (v != 0) table.coefficients.emplace(pack_exponents(a, b, c), v);
                }
    } else {
        for (unsigned a = 0; a <= w; ++a)
            for (unsigned b = 0; a + b <= w; ++b) {
                const mpz_class& v = final_vec[band.index2(a, b)];
                if (v != 0) table.coefficients.emplace(pack_exponents(a, b), v);
            }
    }
    if (table.coefficient(0) != 1)
        throw std::logic_error("terminated_wef: all-zero path count must be 1");
    return table;
}

/// Projects an input-parity table onto total weight: A_w = sum of coefficients whose
/// exponent tuple sums to w.
inline std::map<int, mpz_class> project_total_weight(const WefTable& table) {
    std::map<int, mpz_class> out;
    for (const auto& [key, coeff] : table.coefficients)
        out[static_cast<int>(total_weight(key))] += coeff;
    return out;
}

}  // namespace wefkit
