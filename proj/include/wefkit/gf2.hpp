#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace wefkit {

/// Fixed-length bit vector over GF(2) backed by 64-bit words.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64, 0) {}

    int size() const { return n_; }
    bool get(int i) const { return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v) {
        const std::uint64_t mask = 1ull << (i & 63);
        auto& w = words_[static_cast<std::size_t>(i) >> 6];
        w = v ? (w | mask) : (w & ~mask);
    }
    void flip(int i) { words_[static_cast<std::size_t>(i) >> 6] ^= 1ull << (i & 63); }

    BitVec& operator^=(const BitVec& rhs) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= rhs.words_[w];
        return *this;
    }
    friend BitVec operator^(BitVec lhs, const BitVec& rhs) {
        lhs ^= rhs;
        return lhs;
    }

    int weight() const {
        int w = 0;
        for (std::uint64_t word : words_) w += std::popcount(word);
        return w;
    }
    bool is_zero() const {
        for (std::uint64_t word : words_)
            if (word) return false;
        return true;
    }
    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }
    friend bool operator<(const BitVec& a, const BitVec& b) { return a.words_ < b.words_; }

  private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Basis of the right nullspace { x : Ax = 0 } of a GF(2) matrix given as rows over
/// `cols` variables. Deterministic: Gaussian elimination with first-nonzero pivoting,
/// free variables in ascending column order.
inline std::vector<BitVec> gf2_nullspace(std::vector<BitVec> rows, int cols) {
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (int c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot].get(c)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<BitVec> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        BitVec v(cols);
        v.set(free, true);
        for (std::size_t r = 0; r < rank; ++r)
            if (rows[r].get(free)) v.set(pivot_col[r], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Enumerates the span of a GF(2) basis (2^dim elements, zero first) in Gray-code
/// order so each step is a single basis XOR. Throws if the span is too large.
template <typename Visitor>
void gf2_enumerate_span(const std::vector<BitVec>& basis, int cols, Visitor&& visit) {
    const std::size_t dim = basis.size();
    if (dim > 26) throw std::invalid_argument("gf2_enumerate_span: span too large (dim > 26)");
    BitVec current(cols);
    visit(current);
    for (std::uint64_t g = 1; g < (1ull << dim); ++g) {
        const int bit = std::countr_zero(g);
        current ^= basis[static_cast<std::size_t>(bit)];
        visit(current);
    }
}

}  // namespace wefkit
