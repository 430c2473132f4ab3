#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wefkit/generator.hpp"

namespace wefkit {

/// One trellis branch. `input_bits` packs the input labels (bit j = input stream j),
/// `parity_bit` is the parity output of the section.
struct TrellisBranch {
    std::uint32_t from_state;
    std::uint32_t to_state;
    std::uint8_t input_bits;
    std::uint8_t parity_bit;
};

/// Finite-state machine of a recursive systematic convolutional encoder.
///
/// States are the contents of the shared feedback register r_1..r_m packed
/// little-endian (r_1 = bit 0). Branches are ordered by (from_state, input_bits),
/// so branch index = from_state * 2^num_inputs + input_bits.
struct TrellisMachine {
    int num_inputs = 0;
    int memory = 0;
    std::uint32_t num_states = 0;
    std::vector<TrellisBranch> branches;

    const TrellisBranch& branch(std::uint32_t state, std::uint8_t inputs) const {
        return branches[(static_cast<std::size_t>(state) << num_inputs) + inputs];
    }
};

namespace detail {

inline std::uint32_t poly_to_word(const BitPoly& p) {
    std::uint32_t w = 0;
    for (std::size_t j = 0; j < p.size(); ++j)
        if (p[j]) w |= (1u << j);
    return w;
}

}  // namespace detail

/// Builds the encoder state machine in observer-canonical form over the shared
/// feedback register. One step from register state s with inputs u_1..u_k:
///
///   y    = r_1 + sum_j b0_j u_j                      (parity output)
///   r_i' = r_{i+1} + sum_j bi_j u_j + q_i y          (i = 1..m, r_{m+1} = 0)
///
/// where b_j is the numerator of input j and q the denominator. Word form:
/// next = ((s >> 1) ^ xor_j u_j (b_j >> 1) ^ y (q >> 1)) masked to m bits.
/// This realization together with the little-endian state indexing fixes the
/// state numbering used by the transfer matrix.
inline TrellisMachine build_trellis(const GeneratorSpec& spec) {
    const int k = spec.num_inputs();
    const int m = spec.memory;
    const std::uint32_t num_states = 1u << m;
    const std::uint32_t state_mask = num_states - 1;
    const std::uint32_t q = detail::poly_to_word(spec.denominator);
    std::uint32_t nums[2] = {0, 0};
    for (int j = 0; j < k; ++j) nums[j] = detail::poly_to_word(spec.numerators[static_cast<std::size_t>(j)]);

    TrellisMachine t;
    t.num_inputs = k;
    t.memory = m;
    t.num_states = num_states;
    t.branches.reserve(static_cast<std::size_t>(num_states) << k);
    for (std::uint32_t s = 0; s < num_states; ++s) {
        for (std::uint8_t in = 0; in < (1u << k); ++in) {
            std::uint32_t acc = s;  // bit 0 tracks the parity, upper bits the register taps
            std::uint32_t shift = s >> 1;
            for (int j = 0; j < k; ++j) {
                if (in & (1u << j)) {
                    acc ^= nums[j];
                    shift ^= nums[j] >> 1;
                }
            }
            const std::uint8_t y = static_cast<std::uint8_t>(acc & 1);
            if (y) shift ^= q >> 1;
            t.branches.push_back(TrellisBranch{s, shift & state_mask, in, y});
        }
    }
    return t;
}

/// Runs the encoder over an input block from the zero state. Returns the parity
/// bits and the final state. Inputs are given per stream; all must have equal length.
inline std::pair<std::vector<std::uint8_t>, std::uint32_t> run_encoder(
    const TrellisMachine& t, const std::vector<std::vector<std::uint8_t>>& inputs) {
    const std::size_t n = inputs.empty() ? 0 : inputs[0].size();
    for (const auto& in : inputs)
        if (in.size() != n) throw std::invalid_argument("run_encoder: input length mismatch");
    std::vector<std::uint8_t> parity(n);
    std::uint32_t state = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
        std::uint8_t in = 0;
        for (std::size_t j = 0; j < inputs.size(); ++j)
            if (inputs[j][pos]) in |= static_cast<std::uint8_t>(1u << j);
        const TrellisBranch& b = t.branch(state, in);
        parity[pos] = b.parity_bit;
        state = b.to_state;
    }
    return {std::move(parity), state};
}

}  // namespace wefkit
