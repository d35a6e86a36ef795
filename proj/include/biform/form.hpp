#pragma once

#include <biform/multi_index.hpp>
#include <biform/rational.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace biform {

enum class Side { first, second, both };
enum class Polarity { plus, minus, none };

// Sparse element of Lambda^r V (x) Lambda^s W over an orthonormal pair of
// oriented spaces. Keys are canonical (strictly increasing) index pairs; zero
// coefficients are never stored. The stored coefficient on (I, J) equals the
// evaluation on the corresponding basis vectors (determinant convention).
class BiForm {
public:
    using Key = std::pair<MultiIndex, MultiIndex>;
    using EntryMap = std::map<Key, Rational>;

    BiForm(int deg_first, int deg_second, int dim_first, int dim_second)
        : deg_v_(deg_first), deg_w_(deg_second), dim_v_(dim_first), dim_w_(dim_second) {
        if (dim_v_ < 0 || dim_w_ < 0 || dim_v_ > MultiIndex::max_dim || dim_w_ > MultiIndex::max_dim)
            throw std::invalid_argument("BiForm: dimension out of range");
        if (deg_v_ < 0 || deg_v_ > dim_v_ || deg_w_ < 0 || deg_w_ > dim_w_)
            throw std::invalid_argument("BiForm: degree out of range for dimension");
    }

    int deg_first() const { return deg_v_; }
    int deg_second() const { return deg_w_; }
    int dim_first() const { return dim_v_; }
    int dim_second() const { return dim_w_; }

    bool same_shape(const BiForm& o) const {
        return deg_v_ == o.deg_v_ && deg_w_ == o.deg_w_ && dim_v_ == o.dim_v_ && dim_w_ == o.dim_w_;
    }

    const EntryMap& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    /// Coefficient on a canonical key; zero when absent.
    const Rational& coefficient(const MultiIndex& I, const MultiIndex& J) const {
        static const Rational zero{0};
        auto it = entries_.find({I, J});
        return it == entries_.end() ? zero : it->second;
    }

    void add(const MultiIndex& I, const MultiIndex& J, const Rational& value) {
        check_key(I, J);
        if (value == 0) return;
        auto [it, inserted] = entries_.try_emplace({I, J}, value);
        if (!inserted) {
            it->second += value;
            if (it->second == 0) entries_.erase(it);
        }
    }

    void set(const MultiIndex& I, const MultiIndex& J, const Rational& value) {
        check_key(I, J);
        if (value == 0)
            entries_.erase({I, J});
        else
            entries_[{I, J}] = value;
    }

    /// Evaluation on basis tuples: canonicalizes both argument lists and folds
    /// the permutation signs into the stored coefficient.
    Rational component(const std::vector<int>& first_args, const std::vector<int>& second_args) const {
        if (static_cast<int>(first_args.size()) != deg_v_ ||
            static_cast<int>(second_args.size()) != deg_w_)
            throw std::invalid_argument("BiForm::component: argument count does not match bidegree");
        SignedIndex a = canonicalize(first_args, dim_v_);
        if (a.sign == 0) return 0;
        SignedIndex b = canonicalize(second_args, dim_w_);
        if (b.sign == 0) return 0;
        return Rational(a.sign * b.sign) * coefficient(a.index, b.index);
    }

    BiForm& operator+=(const BiForm& o) {
        check_same_shape(o, "operator+=");
        for (const auto& [key, value] : o.entries_) add(key.first, key.second, value);
        return *this;
    }
    BiForm& operator-=(const BiForm& o) {
        check_same_shape(o, "operator-=");
        for (const auto& [key, value] : o.entries_) add(key.first, key.second, -value);
        return *this;
    }
    BiForm& operator*=(const Rational& c) {
        if (c == 0) {
            entries_.clear();
        } else {
            for (auto& [key, value] : entries_) value *= c;
        }
        return *this;
    }

    friend BiForm operator+(BiForm a, const BiForm& b) { return a += b; }
    friend BiForm operator-(BiForm a, const BiForm& b) { return a -= b; }
    friend BiForm operator-(BiForm a) {
        for (auto& [key, value] : a.entries_) value = -value;
        return a;
    }
    friend BiForm operator*(BiForm a, const Rational& c) { return a *= c; }
    friend BiForm operator*(const Rational& c, BiForm a) { return a *= c; }
    friend BiForm operator/(BiForm a, const Rational& c) {
        if (c == 0) throw std::invalid_argument("BiForm: division by zero");
        return a *= Rational(denominator(c), numerator(c));
    }

    friend bool operator==(const BiForm& a, const BiForm& b) {
        return a.same_shape(b) && a.entries_ == b.entries_;
    }

private:
    void check_key(const MultiIndex& I, const MultiIndex& J) const {
        if (I.dim() != dim_v_ || J.dim() != dim_w_)
            throw std::invalid_argument("BiForm: key dimension mismatch");
        if (I.degree() != deg_v_ || J.degree() != deg_w_)
            throw std::invalid_argument("BiForm: key degree mismatch");
    }
    void check_same_shape(const BiForm& o, const char* op) const {
        if (!same_shape(o))
            throw std::invalid_argument(std::string("BiForm: shape mismatch in ") + op);
    }

    int deg_v_, deg_w_, dim_v_, dim_w_;
    EntryMap entries_;
};

/// Convenience constructor from (index list, index list, value) triples.
inline BiForm biform_from_entries(
    int deg_first, int deg_second, int dim_first, int dim_second,
    const std::vector<std::tuple<std::vector<int>, std::vector<int>, Rational>>& items) {
    BiForm out(deg_first, deg_second, dim_first, dim_second);
    for (const auto& [is, js, value] : items)
        out.add(MultiIndex(is, dim_first), MultiIndex(js, dim_second), value);
    return out;
}

/// Bi-graded wedge: (a (x) b) ^ (c (x) d) = (a ^ c) (x) (b ^ d).
inline BiForm wedge(const BiForm& A, const BiForm& B) {
    if (A.dim_first() != B.dim_first() || A.dim_second() != B.dim_second())
        throw std::invalid_argument("wedge: dimension mismatch");
    int rv = A.deg_first() + B.deg_first();
    int rw = A.deg_second() + B.deg_second();
    if (rv > A.dim_first() || rw > A.dim_second())
        throw std::invalid_argument("wedge: degree overflow");
    BiForm out(rv, rw, A.dim_first(), A.dim_second());
    for (const auto& [ka, ca] : A.entries()) {
        for (const auto& [kb, cb] : B.entries()) {
            SignedIndex sv = wedge_basis(ka.first, kb.first);
            if (sv.sign == 0) continue;
            SignedIndex sw = wedge_basis(ka.second, kb.second);
            if (sw.sign == 0) continue;
            out.add(sv.index, sw.index, Rational(sv.sign * sw.sign) * ca * cb);
        }
    }
    return out;
}

inline BiForm operator*(const BiForm& A, const BiForm& B) { return wedge(A, B); }

/// Hodge star on the chosen tensor factor(s); each basis key goes to its
/// signed complement. Single-sided stars depend on the orientation (fixed
/// here by the standard ordered basis); the two-sided star does not, since
/// reversing an orientation flips both complement signs.
inline BiForm star(const BiForm& T, Side side) {
    bool do_v = (side == Side::first || side == Side::both);
    bool do_w = (side == Side::second || side == Side::both);
    int rv = do_v ? T.dim_first() - T.deg_first() : T.deg_first();
    int rw = do_w ? T.dim_second() - T.deg_second() : T.deg_second();
    BiForm out(rv, rw, T.dim_first(), T.dim_second());
    for (const auto& [key, value] : T.entries()) {
        int sign = 1;
        MultiIndex I = key.first;
        MultiIndex J = key.second;
        if (do_v) {
            SignedIndex s = complement(I);
            I = s.index;
            sign *= s.sign;
        }
        if (do_w) {
            SignedIndex s = complement(J);
            J = s.index;
            sign *= s.sign;
        }
        out.add(I, J, Rational(sign) * value);
    }
    return out;
}

/// Interchange of the two tensor factors: (T^t)^{JI} = T^{IJ}. Defined for any
/// bidegree over a single ambient space.
inline BiForm transpose(const BiForm& T) {
    if (T.dim_first() != T.dim_second())
        throw std::invalid_argument("transpose: requires equal ambient dimensions");
    BiForm out(T.deg_second(), T.deg_first(), T.dim_second(), T.dim_first());
    for (const auto& [key, value] : T.entries()) out.add(key.second, key.first, value);
    return out;
}

/// Membership test for the symmetric subspace C^r (curvature structures).
inline bool is_symmetric(const BiForm& T) {
    return T.dim_first() == T.dim_second() && T.deg_first() == T.deg_second() &&
           transpose(T) == T;
}

/// Inner product extending orthonormality of the basis keys.
inline Rational inner(const BiForm& A, const BiForm& B) {
    if (!A.same_shape(B)) throw std::invalid_argument("inner: shape mismatch");
    const BiForm& small = A.size() <= B.size() ? A : B;
    const BiForm& large = A.size() <= B.size() ? B : A;
    Rational acc = 0;
    for (const auto& [key, value] : small.entries())
        acc += value * large.coefficient(key.first, key.second);
    return acc;
}

inline Rational norm_sq(const BiForm& T) { return inner(T, T); }

namespace detail {
inline void check_projectable(int deg, int dim, const char* which) {
    if (dim % 4 != 0 || deg * 2 != dim)
        throw std::invalid_argument(
            std::string("project: ") + which +
            " side needs degree n/2 with n divisible by 4 (got degree " + std::to_string(deg) +
            " in dimension " + std::to_string(dim) + ")");
}
}  // namespace detail

/// Self-dual / anti-self-dual projection on either or both sides:
/// (1 +- *)/2 per projected side. Projected sides must sit in middle degree
/// of a dimension divisible by four, where the star is an involution.
inline BiForm project(const BiForm& T, Polarity side_first, Polarity side_second) {
    BiForm out = T;
    if (side_first != Polarity::none) {
        detail::check_projectable(T.deg_first(), T.dim_first(), "first");
        BiForm starred = star(out, Side::first);
        out = (side_first == Polarity::plus) ? out + starred : out - starred;
        out *= Rational(1, 2);
    }
    if (side_second != Polarity::none) {
        detail::check_projectable(T.deg_second(), T.dim_second(), "second");
        BiForm starred = star(out, Side::second);
        out = (side_second == Polarity::plus) ? out + starred : out - starred;
        out *= Rational(1, 2);
    }
    return out;
}

/// Complete antisymmetrization over all p+q slots, averaged: the (p+q, 0)
/// double form with coefficient T_{[K]} on each canonical K. Since T is
/// already alternating within each factor, only entries with disjoint key
/// pairs contribute, each with its shuffle sign, divided by C(p+q, p).
inline BiForm alt(const BiForm& T) {
    if (T.dim_first() != T.dim_second())
        throw std::invalid_argument("alt: requires equal ambient dimensions");
    int n = T.dim_first();
    int total = T.deg_first() + T.deg_second();
    if (total > n) throw std::invalid_argument("alt: total degree exceeds dimension");
    BiForm out(total, 0, n, n);
    Rational scale(1, binomial(total, T.deg_first()));
    MultiIndex none = MultiIndex::empty(n);
    for (const auto& [key, value] : T.entries()) {
        SignedIndex merged = wedge_basis(key.first, key.second);
        if (merged.sign == 0) continue;
        out.add(merged.index, none, Rational(merged.sign) * value * scale);
    }
    return out;
}

/// Bianchi operator b: D^{p,q} -> D^{p+1,q-1}, by its action on basis
/// elements: b(e^I (x) e^J) = sum_l (-1)^l e^{j_l I} (x) e^{J \ j_l}.
inline BiForm bianchi(const BiForm& T) {
    if (T.dim_first() != T.dim_second())
        throw std::invalid_argument("bianchi: requires equal ambient dimensions");
    if (T.deg_second() < 1) throw std::invalid_argument("bianchi: second degree must be >= 1");
    int n = T.dim_first();
    if (T.deg_first() + 1 > n)
        throw std::invalid_argument("bianchi: first degree would exceed dimension");
    BiForm out(T.deg_first() + 1, T.deg_second() - 1, n, n);
    for (const auto& [key, value] : T.entries()) {
        const std::uint64_t ibits = key.first.bits();
        int l = 0;
        for (std::uint64_t jb = key.second.bits(); jb != 0; jb &= jb - 1) {
            ++l;  // 1-based position of j_l within J
            std::uint64_t low = jb & -jb;
            if (ibits & low) continue;  // repeated index: e^{j_l I} vanishes
            // Prepending j_l and sorting into place passes the smaller
            // elements of I; combined with (-1)^l this is the whole sign.
            int passes = std::popcount(ibits & (low - 1));
            int sign = ((l + passes) % 2 == 0) ? 1 : -1;
            out.add(MultiIndex::from_bits(ibits | low, n),
                    MultiIndex::from_bits(key.second.bits() & ~low, n), Rational(sign) * value);
        }
    }
    return out;
}

// Top-degree forms: bidegree (n_V, n_W) or (n_V, 0); at most one basis
// element exists, so the form is its coefficient relative to the volume
// element(s).
class TopForm {
public:
    static TopForm from(const BiForm& T) {
        if (T.deg_first() != T.dim_first() || (T.deg_second() != T.dim_second() && T.deg_second() != 0))
            throw std::invalid_argument("TopForm: bidegree is not top");
        TopForm out;
        if (!T.is_zero()) out.coefficient_ = T.entries().begin()->second;
        return out;
    }

    const Rational& coefficient() const { return coefficient_; }

private:
    Rational coefficient_ = 0;
};

/// Coefficient of a top-degree form relative to the volume element(s).
inline Rational top_coefficient(const BiForm& T) { return TopForm::from(T).coefficient(); }

}  // namespace biform
