#pragma once

#include <biform/curvature.hpp>
#include <biform/form.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace biform {

struct FailureWitness {
    MultiIndex first;
    MultiIndex second;
    Rational lhs;
    Rational rhs;
};

// Outcome of one identity check. A witness (key plus the two differing
// values) is present exactly when the identity failed.
struct IdentityVerdict {
    std::string name;
    bool holds = false;
    std::optional<FailureWitness> witness;
};

namespace detail {

inline int tuple_sign(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

inline IdentityVerdict compare_forms(std::string name, const BiForm& lhs, const BiForm& rhs) {
    if (!lhs.same_shape(rhs)) throw std::logic_error("compare_forms: shape mismatch");
    IdentityVerdict v{std::move(name), true, std::nullopt};
    if (lhs == rhs) return v;
    v.holds = false;
    // locate the first differing key for the witness
    for (const auto& [key, value] : lhs.entries()) {
        const Rational& other = rhs.coefficient(key.first, key.second);
        if (other != value) {
            v.witness = FailureWitness{key.first, key.second, value, other};
            return v;
        }
    }
    for (const auto& [key, value] : rhs.entries()) {
        const Rational& mine = lhs.coefficient(key.first, key.second);
        if (mine != value) {
            v.witness = FailureWitness{key.first, key.second, mine, value};
            return v;
        }
    }
    return v;
}

}  // namespace detail

/// Averaged antisymmetrization over the first m argument slots of a (p,q)
/// double form (p <= m <= p+q), by the literal m!-term sum. Deliberately
/// brute force: this is the reference side of every identity below.
inline BiForm antisymmetrize_leading(const BiForm& T, int m) {
    if (T.dim_first() != T.dim_second())
        throw std::invalid_argument("antisymmetrize_leading: requires equal ambient dimensions");
    const int n = T.dim_first();
    const int p = T.deg_first();
    const int total = p + T.deg_second();
    if (m < p || m > total)
        throw std::invalid_argument("antisymmetrize_leading: slot count out of range");
    if (m > n) throw std::invalid_argument("antisymmetrize_leading: slot count exceeds dimension");

    BiForm out(m, total - m, n, n);
    Rational scale(1, factorial(m));
    std::vector<int> perm(m);
    for_each_subset(n, m, [&](const MultiIndex& K) {
        std::vector<int> base = K.indices();
        for_each_subset(n, total - m, [&](const MultiIndex& L) {
            std::vector<int> tail = L.indices();
            Rational acc = 0;
            std::iota(perm.begin(), perm.end(), 0);
            do {
                std::vector<int> first(p), second;
                second.reserve(total - p);
                for (int i = 0; i < p; ++i) first[i] = base[perm[i]];
                for (int i = p; i < m; ++i) second.push_back(base[perm[i]]);
                second.insert(second.end(), tail.begin(), tail.end());
                Rational c = T.component(first, second);
                if (c != 0) acc += Rational(detail::tuple_sign(perm)) * c;
            } while (std::next_permutation(perm.begin(), perm.end()));
            out.add(K, L, acc * scale);
        });
    });
    return out;
}

/// A fully antisymmetric (N,0) form reshaped as an (N-1,1) bi-form by
/// splitting off the last slot: B(x_1..x_{N-1}; y) = F(x_1..x_{N-1}, y).
inline BiForm split_last_slot(const BiForm& F) {
    if (F.deg_second() != 0) throw std::invalid_argument("split_last_slot: expects a (N,0) form");
    const int n = F.dim_first();
    const int N = F.deg_first();
    if (N < 1) throw std::invalid_argument("split_last_slot: degree must be positive");
    BiForm out(N - 1, 1, n, n);
    for (const auto& [key, value] : F.entries()) {
        std::vector<int> m = key.first.indices();
        for (int t = 0; t < N; ++t) {
            // move the t-th index (0-based) past the N-1-t entries after it
            int sign = ((N - 1 - t) % 2 == 0) ? 1 : -1;
            std::vector<int> rest;
            rest.reserve(N - 1);
            for (int u = 0; u < N; ++u)
                if (u != t) rest.push_back(m[u]);
            out.add(MultiIndex(rest, n), MultiIndex({m[t]}, n), Rational(sign) * value);
        }
    }
    return out;
}

/// Checks that the averaged antisymmetrization over the first p+1 slots
/// equals the Bianchi operator up to the factor (-1)^{p+1} (p+1); the left
/// side is brute-forced, the right side uses the basis-element formula.
inline IdentityVerdict verify_lemma_identity(const BiForm& T, std::string name = "bianchi_vs_leading_alt") {
    const int p = T.deg_first();
    BiForm lhs = antisymmetrize_leading(T, p + 1);
    int sign = (p + 1) % 2 == 0 ? 1 : -1;
    BiForm rhs = bianchi(T) * Rational(sign, p + 1);
    return detail::compare_forms(std::move(name), lhs, rhs);
}

/// The deliberate inequivalence exhibit: the symmetric (4,4) counterexample
/// tensor has vanishing complete antisymmetrization while its Bianchi image
/// survives. holds = true means the exhibit behaves as claimed.
inline IdentityVerdict verify_forward_failure(int n, std::string name = "alt_zero_bianchi_nonzero") {
    BiForm T = thorpe_counterexample(n);
    IdentityVerdict v{std::move(name), false, std::nullopt};
    BiForm a = alt(T);
    if (!a.is_zero()) {
        const auto& [key, value] = *a.entries().begin();
        v.witness = FailureWitness{key.first, key.second, value, 0};
        return v;
    }
    BiForm b = bianchi(T);
    if (b.is_zero()) {
        v.witness = FailureWitness{MultiIndex::empty(n), MultiIndex::empty(n), 0, 0};
        return v;
    }
    // the surviving component the construction promises
    if (b.coefficient(MultiIndex({1, 2, 3, 4, 5}, n), MultiIndex({6, 7, 8}, n)) == 0) {
        v.witness = FailureWitness{MultiIndex({1, 2, 3, 4, 5}, n), MultiIndex({6, 7, 8}, n), 0, 0};
        return v;
    }
    v.holds = true;
    return v;
}

/// For symmetric (2p,2p) double forms, full antisymmetrization equals
/// antisymmetrization over the first 4p-1 slots. Both sides brute-forced.
inline IdentityVerdict verify_altalt(const BiForm& T, std::string name = "alt_vs_leading_alt") {
    if (!is_symmetric(T)) throw std::invalid_argument("verify_altalt: input must be symmetric");
    if (T.deg_first() % 2 != 0)
        throw std::invalid_argument("verify_altalt: bidegree must be (2p,2p)");
    const int total = T.deg_first() + T.deg_second();
    BiForm full = antisymmetrize_leading(T, total);
    BiForm lead = antisymmetrize_leading(T, total - 1);
    return detail::compare_forms(std::move(name), split_last_slot(full), lead);
}

/// The sign rule relating the two composites of transpose, star, and the
/// Bianchi operator: t*b = (-1)^{p+q-1} b*t on D^{p,q}.
inline IdentityVerdict verify_bianchi_star(const BiForm& T, std::string name = "star_transpose_bianchi") {
    if (T.dim_first() != T.dim_second())
        throw std::invalid_argument("verify_bianchi_star: requires equal ambient dimensions");
    const int p = T.deg_first();
    const int q = T.deg_second();
    if (q < 1 || p + 1 > T.dim_first())
        throw std::invalid_argument("verify_bianchi_star: inadmissible bidegree");
    BiForm lhs = transpose(star(bianchi(T), Side::both));
    BiForm rhs = bianchi(star(transpose(T), Side::both));
    int sign = (p + q - 1) % 2 == 0 ? 1 : -1;
    return detail::compare_forms(std::move(name), lhs, rhs * Rational(sign));
}

/// Corollary of the sign rule: the two-sided star of R^k keeps satisfying the
/// Bianchi identity when R is pair-symmetric and first-Bianchi.
inline IdentityVerdict verify_corollary_star_bianchi(const CurvatureTensor& R, int k,
                                                     std::string name = "star_power_bianchi") {
    if (!R.pair_symmetric || !R.first_bianchi)
        throw std::invalid_argument(
            "verify_corollary_star_bianchi: curvature must be pair-symmetric and first-Bianchi");
    if (R.dim() != 4 * k)
        throw std::invalid_argument("verify_corollary_star_bianchi: dimension must equal 4k");
    BiForm starred = star(power(R.bundle, k), Side::both);
    BiForm image = bianchi(starred);
    IdentityVerdict v{std::move(name), image.is_zero(), std::nullopt};
    if (!v.holds) {
        const auto& [key, value] = *image.entries().begin();
        v.witness = FailureWitness{key.first, key.second, value, 0};
    }
    return v;
}

}  // namespace biform
