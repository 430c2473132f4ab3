#pragma once

#include <vector>

#include "wefkit/trellis.hpp"
#include "wefkit/weight_poly.hpp"

namespace wefkit {

/// Square matrix of weight polynomials over the trellis states. Entry (r, c) is the
/// sum of the weight monomials of all branches from state r to state c.
struct TransferMatrix {
    int dimension = 0;
    int arity = 0;  ///< 2 for (I, P), 3 for (I1, I2, P)
    std::vector<WeightPolynomial> entries;

    TransferMatrix(int dim, int ar, int w_max)
        : dimension(dim), arity(ar), entries(static_cast<std::size_t>(dim) * dim,
                                             WeightPolynomial(ar, w_max)) {}

    WeightPolynomial& at(int r, int c) {
        return entries[static_cast<std::size_t>(r) * dimension + c];
    }
    const WeightPolynomial& at(int r, int c) const {
        return entries[static_cast<std::size_t>(r) * dimension + c];
    }
};

/// Single-section transfer matrix of a trellis machine. The monomial of a branch with
/// input bits u_1..u_k and parity y is I1^{u_1} I2^{u_2} P^y (I^u P^y for one input).
/// Entries carry w_max = arity, the largest possible branch weight.
inline TransferMatrix build_transfer_matrix(const TrellisMachine& t) {
    const int arity = t.num_inputs + 1;
    TransferMatrix m(static_cast<int>(t.num_states), arity, arity);
    for (const TrellisBranch& b : t.branches) {
        unsigned e[3] = {0, 0, 0};
        for (int j = 0; j < t.num_inputs; ++j) e[j] = (b.input_bits >> j) & 1;
        e[t.num_inputs] = b.parity_bit;
        m.at(static_cast<int>(b.from_state), static_cast<int>(b.to_state))
            .add_term(pack_exponents(e[0], e[1], e[2]), 1);
    }
    return m;
}

}  // namespace wefkit
