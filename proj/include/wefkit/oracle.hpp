#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wefkit/ensemble.hpp"
#include "wefkit/gf2.hpp"
#include "wefkit/trellis.hpp"

namespace wefkit {

/// Permutation as an index map applied by gathering: (v * P)[pos] = v[perm[pos]].
using Permutation = std::vector<int>;

inline Permutation identity_permutation(int n) {
    Permutation p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline Permutation inverse_permutation(const Permutation& p) {
    Permutation inv(p.size());
    for (std::size_t pos = 0; pos < p.size(); ++pos) inv[static_cast<std::size_t>(p[pos])] = static_cast<int>(pos);
    return inv;
}

/// The three permutations of the braided structure: info into the lower trellis, and
/// each trellis's second input taken from the other trellis's reordered parity.
struct BccPermutations {
    Permutation pi;       ///< reorders u for the lower trellis
    Permutation pi_upper; ///< reorders v^L into the upper trellis
    Permutation pi_lower; ///< reorders v^U into the lower trellis
};

/// Codeword of the uncoupled braided code: information plus the two parity blocks.
struct CodewordTriple {
    BitVec u, v_upper, v_lower;
    int weight() const { return u.weight() + v_upper.weight() + v_lower.weight(); }
    friend bool operator==(const CodewordTriple& a, const CodewordTriple& b) {
        return a.u == b.u && a.v_upper == b.v_upper && a.v_lower == b.v_lower;
    }
    friend bool operator<(const CodewordTriple& a, const CodewordTriple& b) {
        if (!(a.u == b.u)) return a.u < b.u;
        if (!(a.v_upper == b.v_upper)) return a.v_upper < b.v_upper;
        return a.v_lower < b.v_lower;
    }
};

/// Code sequence of the coupled chain, one triple per time instant t = 1..L.
/// Boundary convention: v_t = 0 for t < 1 and t > L.
struct CoupledChain {
    int block_length = 0;  ///< N
    int coupling_length = 0;  ///< L
    std::vector<CodewordTriple> sections;
    int weight() const {
        int w = 0;
        for (const auto& s : sections) w += s.weight();
        return w;
    }
};

/// True iff a zero-state-to-zero-state path of length N produces exactly the given
/// input and parity labels. Checked by walking the trellis, independently of any
/// enumerator arithmetic.
inline bool trellis_membership(const TrellisMachine& t, const std::vector<std::uint8_t>& input1,
                               const std::vector<std::uint8_t>* input2,
                               const std::vector<std::uint8_t>& parity) {
    const std::size_t n = input1.size();
    if (parity.size() != n || (input2 && input2->size() != n))
        throw std::invalid_argument("trellis_membership: sequence length mismatch");
    if ((input2 != nullptr) != (t.num_inputs == 2))
        throw std::invalid_argument("trellis_membership: input count does not match trellis");
    std::uint32_t state = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
        std::uint8_t in = input1[pos] ? 1 : 0;
        if (input2 && (*input2)[pos]) in |= 2;
        const TrellisBranch& b = t.branch(state, in);
        if (b.parity_bit != (parity[pos] ? 1 : 0)) return false;
        state = b.to_state;
    }
    return state == 0;
}

namespace detail {

/// Linear responses of the length-N terminated trellis: per input stream and input
/// position, the parity output block and the final encoder state of the unit input.
struct TrellisResponses {
    int N = 0;
    int memory = 0;
    std::vector<std::vector<BitVec>> parity;       // [stream][pos]
    std::vector<std::vector<std::uint32_t>> state; // [stream][pos]
};

inline TrellisResponses trellis_responses(const TrellisMachine& t, int N) {
    TrellisResponses r;
    r.N = N;
    r.memory = t.memory;
    r.parity.assign(static_cast<std::size_t>(t.num_inputs), {});
    r.state.assign(static_cast<std::size_t>(t.num_inputs), {});
    for (int stream = 0; stream < t.num_inputs; ++stream) {
        for (int pos = 0; pos < N; ++pos) {
            std::vector<std::vector<std::uint8_t>> in(
                static_cast<std::size_t>(t.num_inputs),
                std::vector<std::uint8_t>(static_cast<std::size_t>(N), 0));
            in[static_cast<std::size_t>(stream)][static_cast<std::size_t>(pos)] = 1;
            auto [parity, final_state] = run_encoder(t, in);
            BitVec pv(N);
            for (int q = 0; q < N; ++q)
                if (parity[static_cast<std::size_t>(q)]) pv.set(q, true);
            r.parity[static_cast<std::size_t>(stream)].push_back(std::move(pv));
            r.state[static_cast<std::size_t>(stream)].push_back(final_state);
        }
    }
    return r;
}

/// Adds the parity-match and termination rows of one trellis constraint
///   ( first_cols -> stream 0, second_cols -> stream 1, parity_cols identity )
/// to the system. A column index of -1 means the corresponding sequence is pinned to
/// zero (chain boundary), so it contributes no variables.
inline void add_trellis_rows(std::vector<BitVec>& rows, int total_cols,
                             const TrellisResponses& resp,
                             const std::vector<int>& first_cols,
                             const std::vector<int>& second_cols,
                             const std::vector<int>& parity_cols) {
    const int N = resp.N;
    const std::size_t base = rows.size();
    for (int q = 0; q < N + resp.memory; ++q) rows.emplace_back(total_cols);

    auto wire_stream = [&](int stream, const std::vector<int>& cols) {
        if (cols.empty()) return;
        for (int pos = 0; pos < N; ++pos) {
            const int col = cols[static_cast<std::size_t>(pos)];
            if (col < 0) continue;
            const BitVec& pv = resp.parity[static_cast<std::size_t>(stream)][static_cast<std::size_t>(pos)];
            for (int q = 0; q < N; ++q)
                if (pv.get(q)) rows[base + static_cast<std::size_t>(q)].flip(col);
            const std::uint32_t st = resp.state[static_cast<std::size_t>(stream)][static_cast<std::size_t>(pos)];
            for (int b = 0; b < resp.memory; ++b)
                if ((st >> b) & 1) rows[base + static_cast<std::size_t>(N + b)].flip(col);
        }
    };
    wire_stream(0, first_cols);
    if (resp.parity.size() > 1) wire_stream(1, second_cols);
    for (int q = 0; q < N; ++q) {
        const int col = parity_cols[static_cast<std::size_t>(q)];
        if (col >= 0) rows[base + static_cast<std::size_t>(q)].flip(col);
    }
}

/// Column indices of a reordered block: variable block starts at `base` and feeds the
/// constraint through (v * P)[pos] = v[perm[pos]].
inline std::vector<int> permuted_cols(int base, const Permutation& perm) {
    std::vector<int> cols(perm.size());
    for (std::size_t pos = 0; pos < perm.size(); ++pos)
        cols[pos] = base + perm[pos];
    return cols;
}

inline std::vector<int> direct_cols(int base, int n) {
    std::vector<int> cols(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] = base + j;
    return cols;
}

inline std::vector<int> zero_cols(int n) { return std::vector<int>(static_cast<std::size_t>(n), -1); }

inline BitVec slice(const BitVec& v, int begin, int n) {
    BitVec out(n);
    for (int j = 0; j < n; ++j)
        if (v.get(begin + j)) out.set(j, true);
    return out;
}

}  // namespace detail

/// All codewords (u, v^U, v^L) of the uncoupled braided code with the given
/// permutations: (u, v^L P^U, v^U) must lie in the upper terminated-trellis code and
/// (u P, v^U P^L, v^L) in the lower one. Solved as a GF(2) linear system over the 3N
/// sequence bits; the full nullspace is enumerated.
inline std::vector<CodewordTriple> enumerate_uncoupled_bcc(const GeneratorSpec& upper,
                                                           const GeneratorSpec& lower,
                                                           const BccPermutations& perms, int N) {
    if (N > 12) throw std::invalid_argument("enumerate_uncoupled_bcc: exhaustive mode needs N <= 12");
    if (upper.num_inputs() != 2 || lower.num_inputs() != 2)
        throw std::invalid_argument("enumerate_uncoupled_bcc: component encoders must be rate-2/3");
    const auto tu = build_trellis(upper);
    const auto tl = build_trellis(lower);
    const auto ru = detail::trellis_responses(tu, N);
    const auto rl = detail::trellis_responses(tl, N);

    const int cols = 3 * N;  // [u | v^U | v^L]
    std::vector<BitVec> rows;
    detail::add_trellis_rows(rows, cols, ru, detail::direct_cols(0, N),
                             detail::permuted_cols(2 * N, perms.pi_upper),
                             detail::direct_cols(N, N));
    detail::add_trellis_rows(rows, cols, rl, detail::permuted_cols(0, perms.pi),
                             detail::permuted_cols(N, perms.pi_lower),
                             detail::direct_cols(2 * N, N));

    std::vector<CodewordTriple> out;
    const auto basis = gf2_nullspace(std::move(rows), cols);
    gf2_enumerate_span(basis, cols, [&](const BitVec& x) {
        out.push_back(CodewordTriple{detail::slice(x, 0, N), detail::slice(x, N, N),
                                     detail::slice(x, 2 * N, N)});
    });
    return out;
}

/// All code sequences of the coupled chain with time-invariant permutations and zero
/// boundary (v_t = 0 outside 1..L). The local two-trellis constraints are imposed for
/// t = 1..L+1; the constraint at t = L+1 is the chain termination implied by the zero
/// boundary, with no information or parity variables of its own.
inline std::vector<CoupledChain> enumerate_coupled_bcc(const GeneratorSpec& upper,
                                                       const GeneratorSpec& lower,
                                                       const BccPermutations& perms, int N,
                                                       int L) {
    if (L < 1) throw std::invalid_argument("enumerate_coupled_bcc: L must be >= 1");
    if (N * L > 24)
        throw std::invalid_argument("enumerate_coupled_bcc: exhaustive mode needs N*L <= 24");
    const auto tu = build_trellis(upper);
    const auto tl = build_trellis(lower);
    const auto ru = detail::trellis_responses(tu, N);
    const auto rl = detail::trellis_responses(tl, N);

    const int cols = 3 * N * L;  // per time t: [u_t | v^U_t | v^L_t]
    const auto u_base = [&](int t) { return 3 * N * (t - 1); };
    const auto vu_base = [&](int t) { return 3 * N * (t - 1) + N; };
    const auto vl_base = [&](int t) { return 3 * N * (t - 1) + 2 * N; };

    std::vector<BitVec> rows;
    for (int t = 1; t <= L + 1; ++t) {
        const auto u_cols = t <= L ? detail::direct_cols(u_base(t), N) : detail::zero_cols(N);
        const auto u_perm_cols =
            t <= L ? detail::permuted_cols(u_base(t), perms.pi) : detail::zero_cols(N);
        const auto prev_vl = t > 1 ? detail::permuted_cols(vl_base(t - 1), perms.pi_upper)
                                   : detail::zero_cols(N);
        const auto prev_vu = t > 1 ? detail::permuted_cols(vu_base(t - 1), perms.pi_lower)
                                   : detail::zero_cols(N);
        const auto vu_cols = t <= L ? detail::direct_cols(vu_base(t), N) : detail::zero_cols(N);
        const auto vl_cols = t <= L ? detail::direct_cols(vl_base(t), N) : detail::zero_cols(N);
        detail::add_trellis_rows(rows, cols, ru, u_cols, prev_vl, vu_cols);
        detail::add_trellis_rows(rows, cols, rl, u_perm_cols, prev_vu, vl_cols);
    }

    std::vector<CoupledChain> out;
    const auto basis = gf2_nullspace(std::move(rows), cols);
    gf2_enumerate_span(basis, cols, [&](const BitVec& x) {
        CoupledChain chain;
        chain.block_length = N;
        chain.coupling_length = L;
        for (int t = 1; t <= L; ++t)
            chain.sections.push_back(CodewordTriple{detail::slice(x, u_base(t), N),
                                                    detail::slice(x, vu_base(t), N),
                                                    detail::slice(x, vl_base(t), N)});
        out.push_back(std::move(chain));
    });
    return out;
}

/// Superposition of the chain onto a single block: component-wise GF(2) sum over t.
inline CodewordTriple fold_chain(const CoupledChain& chain) {
    const int N = chain.block_length;
    CodewordTriple folded{BitVec(N), BitVec(N), BitVec(N)};
    for (const auto& s : chain.sections) {
        folded.u ^= s.u;
        folded.v_upper ^= s.v_upper;
        folded.v_lower ^= s.v_lower;
    }
    return folded;
}

/// Minimum Hamming weight over the nonzero members; nullopt when the set contains
/// only the zero codeword (minimum distance undefined / infinite).
template <typename Word>
std::optional<int> min_distance(const std::vector<Word>& codewords) {
    std::optional<int> best;
    for (const auto& c : codewords) {
        const int w = c.weight();
        if (w == 0) continue;
        if (!best || w < *best) best = w;
    }
    return best;
}

/// Exact ensemble average computed the hard way: every permutation (PCC) or
/// permutation triple (BCC) is enumerated and the per-code weight profiles are
/// averaged with exact rational arithmetic.
inline EnsembleWef exhaustive_ensemble_average(EnsembleKind kind, const GeneratorSpec& upper,
                                               const GeneratorSpec& lower, int N) {
    std::map<ExpKey, mpz_class> counts;
    mpz_class total_codes;

    if (kind == EnsembleKind::kPcc) {
        if (N > 5)
            throw std::invalid_argument(
                "exhaustive_ensemble_average: PCC exhaustive mode needs N <= 5 (N! codes)");
        if (upper.num_inputs() != 1 || lower.num_inputs() != 1)
            throw std::invalid_argument("exhaustive_ensemble_average: PCC components must be rate-1/2");
        const auto tu = build_trellis(upper);
        const auto tl = build_trellis(lower);
        const std::uint32_t words = 1u << N;
        // Per input word: does the path terminate, and with which parity weight.
        std::vector<std::pair<bool, int>> up(words), lo(words);
        for (std::uint32_t v = 0; v < words; ++v) {
            std::vector<std::uint8_t> bits(static_cast<std::size_t>(N));
            for (int j = 0; j < N; ++j) bits[static_cast<std::size_t>(j)] = (v >> j) & 1;
            auto [pu, su] = run_encoder(tu, {bits});
            auto [pl, sl] = run_encoder(tl, {bits});
            const auto pw = [](const std::vector<std::uint8_t>& p) {
                int w = 0;
                for (auto b : p) w += b;
                return w;
            };
            up[v] = {su == 0, pw(pu)};
            lo[v] = {sl == 0, pw(pl)};
        }
        Permutation perm = identity_permutation(N);
        do {
            for (std::uint32_t v = 0; v < words; ++v) {
                if (!up[v].first) continue;
                std::uint32_t permuted = 0;  // (u * P)[pos] = u[perm[pos]]
                for (int pos = 0; pos < N; ++pos)
                    if ((v >> perm[static_cast<std::size_t>(pos)]) & 1) permuted |= 1u << pos;
                if (!lo[permuted].first) continue;
                const unsigned i = static_cast<unsigned>(std::popcount(v));
                const unsigned p = static_cast<unsigned>(up[v].second + lo[permuted].second);
                counts[pack_exponents(i, p)] += 1;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        total_codes = factorial(static_cast<unsigned long>(N));
    } else {
        if (N > 4)
            throw std::invalid_argument(
                "exhaustive_ensemble_average: BCC exhaustive mode needs N <= 4 ((N!)^3 codes)");
        Permutation pi = identity_permutation(N);
        do {
            Permutation pi_u = identity_permutation(N);
            do {
                Permutation pi_l = identity_permutation(N);
                do {
                    const auto words =
                        enumerate_uncoupled_bcc(upper, lower, {pi, pi_u, pi_l}, N);
                    for (const auto& cw : words) {
                        const unsigned i = static_cast<unsigned>(cw.u.weight());
                        const unsigned p =
                            static_cast<unsigned>(cw.v_upper.weight() + cw.v_lower.weight());
                        counts[pack_exponents(i, p)] += 1;
                    }
                } while (std::next_permutation(pi_l.begin(), pi_l.end()));
            } while (std::next_permutation(pi_u.begin(), pi_u.end()));
        } while (std::next_permutation(pi.begin(), pi.end()));
        total_codes = factorial(static_cast<unsigned long>(N));
        total_codes = total_codes * total_codes * total_codes;
    }

    EnsembleWef e;
    e.kind = kind;
    e.N = N;
    e.w_max = 3 * N;
    e.num_codes = total_codes;
    for (const auto& [key, c] : counts) {
        mpq_class v(c, total_codes);
        v.canonicalize();
        e.coefficients.emplace(key, std::move(v));
    }
    return e;
}

}  // namespace wefkit
