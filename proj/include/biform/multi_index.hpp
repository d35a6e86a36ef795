#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace biform {

// Index sets live in [1..dim] with dim <= 62 so a set fits in one word.
// Bit (i-1) of the mask is set when index i is a member; sortedness of the
// basis index list is therefore structural.
class MultiIndex {
public:
    static constexpr int max_dim = 62;

    MultiIndex() = default;

    MultiIndex(std::vector<int> indices, int dim) : dim_(check_dim(dim)) {
        int prev = 0;
        for (int i : indices) {
            if (i < 1 || i > dim_)
                throw std::invalid_argument("MultiIndex: index " + std::to_string(i) +
                                            " out of range [1.." + std::to_string(dim_) + "]");
            if (i <= prev)
                throw std::invalid_argument("MultiIndex: indices must be strictly increasing");
            prev = i;
            bits_ |= bit(i);
        }
    }

    static MultiIndex from_bits(std::uint64_t bits, int dim) {
        check_dim(dim);
        if (dim < 64 && (bits >> dim) != 0)
            throw std::invalid_argument("MultiIndex: bits exceed dimension");
        MultiIndex m;
        m.bits_ = bits;
        m.dim_ = dim;
        return m;
    }

    static MultiIndex empty(int dim) { return from_bits(0, dim); }
    static MultiIndex full(int dim) { return from_bits(full_mask(dim), dim); }

    int dim() const { return dim_; }
    int degree() const { return std::popcount(bits_); }
    std::uint64_t bits() const { return bits_; }
    bool contains(int i) const { return i >= 1 && i <= dim_ && (bits_ & bit(i)) != 0; }

    std::vector<int> indices() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(degree()));
        for (std::uint64_t b = bits_; b != 0; b &= b - 1)
            out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    std::string to_string() const {
        std::string s = "[";
        bool first = true;
        for (int i : indices()) {
            if (!first) s += ",";
            s += std::to_string(i);
            first = false;
        }
        return s + "]";
    }

    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

    static std::uint64_t full_mask(int dim) {
        return dim == 0 ? 0 : (~std::uint64_t{0} >> (64 - dim));
    }

private:
    static constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << (i - 1); }
    static int check_dim(int dim) {
        if (dim < 0 || dim > max_dim)
            throw std::invalid_argument("MultiIndex: dimension must be in [0.." +
                                        std::to_string(max_dim) + "]");
        return dim;
    }

    std::uint64_t bits_ = 0;
    int dim_ = 0;
};

// Sign 0 marks a degenerate (repeated-index) result; the index is then empty.
struct SignedIndex {
    MultiIndex index;
    int sign = 0;

    SignedIndex() = default;
    SignedIndex(MultiIndex i, int s) : index(std::move(i)), sign(s) {}
    static SignedIndex degenerate(int dim) { return {MultiIndex::empty(dim), 0}; }
};

namespace detail {

// Parity of the number of (a,b) pairs with a in A, b in B, b < a; the sign of
// the shuffle that merges the two sorted blocks (A,B) into one sorted list.
inline int merge_sign(std::uint64_t a, std::uint64_t b) {
    int inversions = 0;
    for (std::uint64_t rest = a; rest != 0; rest &= rest - 1) {
        std::uint64_t below = (rest & -rest) - 1;
        inversions += std::popcount(b & below);
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace detail

/// Sorts a raw index tuple, returning the sorted set with the sign of the
/// sorting permutation; sign 0 (empty set) when an index repeats.
inline SignedIndex canonicalize(const std::vector<int>& raw, int dim) {
    MultiIndex::from_bits(0, dim);  // validates dim
    std::uint64_t mask = 0;
    int inversions = 0;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        int i = raw[k];
        if (i < 1 || i > dim)
            throw std::invalid_argument("canonicalize: index " + std::to_string(i) +
                                        " out of range [1.." + std::to_string(dim) + "]");
        std::uint64_t b = std::uint64_t{1} << (i - 1);
        if (mask & b) return SignedIndex::degenerate(dim);
        for (std::size_t l = 0; l < k; ++l)
            if (raw[l] > i) ++inversions;
        mask |= b;
    }
    return {MultiIndex::from_bits(mask, dim), (inversions % 2 == 0) ? 1 : -1};
}

/// Complementary index set I' with the sign of the permutation (I, I') of
/// [1..n]; the combinatorial core of the star operator.
inline SignedIndex complement(const MultiIndex& I) {
    std::uint64_t comp = MultiIndex::full_mask(I.dim()) & ~I.bits();
    return {MultiIndex::from_bits(comp, I.dim()), detail::merge_sign(I.bits(), comp)};
}

/// Basis wedge e_I ^ e_J: the merged set with the shuffle sign, or the
/// degenerate marker when the sets intersect.
inline SignedIndex wedge_basis(const MultiIndex& I, const MultiIndex& J) {
    if (I.dim() != J.dim())
        throw std::invalid_argument("wedge_basis: ambient dimension mismatch");
    if (I.bits() & J.bits()) return SignedIndex::degenerate(I.dim());
    return {MultiIndex::from_bits(I.bits() | J.bits(), I.dim()),
            detail::merge_sign(I.bits(), J.bits())};
}

/// Visits every degree-k subset of [1..dim] in lexicographic mask order.
template <typename F>
void for_each_subset(int dim, int k, F&& fn) {
    if (k < 0 || k > dim) return;
    std::uint64_t mask = (k == 0) ? 0 : MultiIndex::full_mask(k);
    std::uint64_t limit = MultiIndex::full_mask(dim);
    while (true) {
        fn(MultiIndex::from_bits(mask, dim));
        if (k == 0) return;
        // Gosper's hack: next mask with the same popcount.
        std::uint64_t c = mask & -mask;
        std::uint64_t r = mask + c;
        if ((r & ~limit) != 0 || r == 0) return;
        mask = (((r ^ mask) >> 2) / c) | r;
        if ((mask & ~limit) != 0) return;
    }
}

}  // namespace biform
