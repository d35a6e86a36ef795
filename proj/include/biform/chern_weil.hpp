#pragma once

#include <biform/curvature.hpp>
#include <biform/form.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace biform {

// A characteristic-form density: the exact rational multiple of the base
// volume element, with the transcendental normalization (2*pi)^{-pi_power}
// carried symbolically.
struct Density {
    Rational coefficient;
    int pi_power = 0;

    friend bool operator==(const Density&, const Density&) = default;
};

namespace detail {

template <typename Ring>
void check_antisymmetric(const std::vector<std::vector<Ring>>& A) {
    const std::size_t size = A.size();
    if (size == 0 || size % 2 != 0)
        throw std::invalid_argument("pfaffian: matrix size must be even and positive");
    for (const auto& row : A)
        if (row.size() != size) throw std::invalid_argument("pfaffian: matrix must be square");
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i; j < size; ++j)
            if (!(A[i][j] == -A[j][i]))
                throw std::invalid_argument("pfaffian: matrix is not antisymmetric");
}

// Perfect-matching expansion along the first free row: equal to the
// (1/(2^m m!))-normalized alternating sum over S_{2m}.
template <typename Ring>
Ring pfaffian_matchings(const std::vector<std::vector<Ring>>& A, std::vector<int>& free_rows) {
    const int i0 = free_rows[0];
    if (free_rows.size() == 2) return A[i0][free_rows[1]];
    Ring acc = A[0][0];  // placeholder; overwritten by the first term
    std::vector<int> rest(free_rows.begin() + 1, free_rows.end());
    for (std::size_t t = 0; t < rest.size(); ++t) {
        const int j = rest[t];
        std::vector<int> remaining;
        remaining.reserve(rest.size() - 1);
        for (std::size_t u = 0; u < rest.size(); ++u)
            if (u != t) remaining.push_back(rest[u]);
        Ring term = A[i0][j] * pfaffian_matchings(A, remaining);
        if (t % 2 == 1) term = -term;
        if (t == 0)
            acc = std::move(term);
        else
            acc = acc + term;
    }
    return acc;
}

template <typename Ring>
Ring pfaffian_impl(const std::vector<std::vector<Ring>>& A) {
    check_antisymmetric(A);
    std::vector<int> rows(A.size());
    std::iota(rows.begin(), rows.end(), 0);
    return pfaffian_matchings(A, rows);
}

}  // namespace detail

/// Pfaffian of an antisymmetric matrix of rationals.
inline Rational pfaffian(const std::vector<std::vector<Rational>>& A) {
    return detail::pfaffian_impl(A);
}

/// Pfaffian of an antisymmetric matrix of even-degree forms (the entries then
/// commute under the wedge product).
inline BiForm pfaffian(const std::vector<std::vector<BiForm>>& A) {
    for (const auto& row : A)
        for (const BiForm& e : row)
            if ((e.deg_first() + e.deg_second()) % 2 != 0)
                throw std::invalid_argument("pfaffian: entries must have even total degree");
    return detail::pfaffian_impl(A);
}

/// The local curvature matrix: base 2-forms A[a][b] = R(.,.,s_a,s_b), indexed
/// from zero, as (2,0) bi-forms over (base, fiber).
inline std::vector<std::vector<BiForm>> curvature_matrix(const BundleCurvature& R) {
    const int l = R.fiber_rank;
    std::vector<std::vector<BiForm>> A(
        static_cast<std::size_t>(l),
        std::vector<BiForm>(static_cast<std::size_t>(l), BiForm(2, 0, R.base_dim, R.fiber_rank)));
    MultiIndex none = MultiIndex::empty(R.fiber_rank);
    for (const auto& [key, value] : R.form.entries()) {
        auto ab = key.second.indices();  // a < b
        A[ab[0] - 1][ab[1] - 1].add(key.first, none, value);
        A[ab[1] - 1][ab[0] - 1].add(key.first, none, -value);
    }
    return A;
}

namespace detail {

// Leibniz determinant of the submatrix of A picked out by rows/cols in `sel`.
inline BiForm submatrix_det(const std::vector<std::vector<BiForm>>& A, const std::vector<int>& sel,
                            int base_dim, int fiber_rank) {
    const int m = static_cast<int>(sel.size());
    BiForm acc(2 * m, 0, base_dim, fiber_rank);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inversions = 0;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                if (perm[a] > perm[b]) ++inversions;
        BiForm prod = A[sel[0]][sel[perm[0]]];
        for (int i = 1; i < m; ++i) prod = wedge(prod, A[sel[i]][sel[perm[i]]]);
        if (inversions % 2 == 0)
            acc += prod;
        else
            acc -= prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

template <typename F>
void for_each_combination(int l, int m, F&& fn) {
    std::vector<int> sel(m);
    std::iota(sel.begin(), sel.end(), 0);
    while (true) {
        fn(sel);
        int i = m - 1;
        while (i >= 0 && sel[i] == l - m + i) --i;
        if (i < 0) return;
        ++sel[i];
        for (int j = i + 1; j < m; ++j) sel[j] = sel[j - 1] + 1;
    }
}

}  // namespace detail

/// Pontryagin density by the elementary-symmetric-polynomial expression: the
/// signed sum over ordered fiber index sets a_1<...<a_{2k} and permutations of
/// wedge products of the curvature 2-forms.
inline Density pontryagin_density_sym(const BundleCurvature& R) {
    const int k = R.k;
    auto A = curvature_matrix(R);
    BiForm acc(4 * k, 0, R.base_dim, R.fiber_rank);
    detail::for_each_combination(R.fiber_rank, 2 * k, [&](const std::vector<int>& sel) {
        acc += detail::submatrix_det(A, sel, R.base_dim, R.fiber_rank);
    });
    return {top_coefficient(acc), 2 * k};
}

/// The four squared norms of the duality components of a middle-bidegree
/// double form over (4k, 4k).
struct FourNorms {
    Rational plus_plus, plus_minus, minus_plus, minus_minus;
};

inline FourNorms four_norms(const BiForm& T) {
    return {norm_sq(project(T, Polarity::plus, Polarity::plus)),
            norm_sq(project(T, Polarity::plus, Polarity::minus)),
            norm_sq(project(T, Polarity::minus, Polarity::plus)),
            norm_sq(project(T, Polarity::minus, Polarity::minus))};
}

namespace detail {

inline Density pontryagin_norm_from_power(const BiForm& Rk, int k) {
    Rational plus = norm_sq(project(Rk, Polarity::plus, Polarity::none));
    Rational minus = norm_sq(project(Rk, Polarity::minus, Polarity::none));
    Rational kfact(factorial(k));
    return {(plus - minus) / (kfact * kfact), 2 * k};
}

inline Density euler_norm_from_power(const BiForm& Rk, int k) {
    FourNorms n = four_norms(Rk);
    return {(n.plus_plus - n.plus_minus - n.minus_plus + n.minus_minus) / Rational(factorial(2 * k)),
            2 * k};
}

}  // namespace detail

/// Pontryagin density from the base-side duality split of R^k:
/// (|(R^k)^+|^2 - |(R^k)^-|^2) / (k!)^2, times (2 pi)^{-2k}.
inline Density pontryagin_density_norm(const BundleCurvature& R) {
    return detail::pontryagin_norm_from_power(power(R, R.k), R.k);
}

/// Euler density as the Pfaffian of the curvature matrix (rank must be 4k).
inline Density euler_density_pfaffian(const BundleCurvature& R) {
    if (R.fiber_rank != 4 * R.k)
        throw std::invalid_argument("euler_density_pfaffian: fiber rank must equal 4k");
    return {top_coefficient(pfaffian(curvature_matrix(R))), 2 * R.k};
}

/// Euler density from the four-way duality split of R^k:
/// (|++|^2 - |+-|^2 - |-+|^2 + |--|^2) / (2k)!, times (2 pi)^{-2k}.
inline Density euler_density_norm(const BundleCurvature& R) {
    if (R.fiber_rank != 4 * R.k)
        throw std::invalid_argument("euler_density_norm: fiber rank must equal 4k");
    return detail::euler_norm_from_power(power(R, R.k), R.k);
}

// Everything the generalized Thorpe inequalities talk about, for one
// curvature: the four norms of R^k, both densities, the two norm
// combinations, the vanishing hypotheses, and the inequality verdicts
// (unconditional signs; the hypotheses are reported separately).
struct ThorpeReport {
    int k = 0;
    FourNorms norms;
    Density euler;
    Density pontryagin;
    Density combo_plus;   // binom(2k,k) e + p_k
    Density combo_minus;  // binom(2k,k) e - p_k
    bool vanish_minus_plus = false;
    bool vanish_plus_minus = false;
    bool ineq_plus_holds = false;
    bool ineq_minus_holds = false;
    bool ineq_abs_holds = false;
};

/// Computes the report with every identity cross-checked internally: both
/// Euler routes, both Pontryagin routes, and the two combination identities
/// against their norm expressions.
inline ThorpeReport thorpe_report(const BundleCurvature& R) {
    if (R.fiber_rank != 4 * R.k)
        throw std::invalid_argument("thorpe_report: fiber rank must equal 4k");
    const int k = R.k;
    BiForm Rk = power(R, k);

    ThorpeReport rep;
    rep.k = k;
    rep.norms = four_norms(Rk);
    rep.euler = detail::euler_norm_from_power(Rk, k);
    rep.pontryagin = detail::pontryagin_norm_from_power(Rk, k);

    if (euler_density_pfaffian(R) != rep.euler)
        throw std::logic_error("thorpe_report: Euler density routes disagree");
    if (pontryagin_density_sym(R) != rep.pontryagin)
        throw std::logic_error("thorpe_report: Pontryagin density routes disagree");

    Rational binom = Rational(binomial(2 * k, k));
    Rational kfact(factorial(k));
    rep.combo_plus = {binom * rep.euler.coefficient + rep.pontryagin.coefficient, 2 * k};
    rep.combo_minus = {binom * rep.euler.coefficient - rep.pontryagin.coefficient, 2 * k};

    Rational two_over_kfact2 = Rational(2) / (kfact * kfact);
    if (rep.combo_plus.coefficient != two_over_kfact2 * (rep.norms.plus_plus - rep.norms.minus_plus))
        throw std::logic_error("thorpe_report: combo_plus norm identity failed");
    if (rep.combo_minus.coefficient !=
        two_over_kfact2 * (rep.norms.minus_minus - rep.norms.plus_minus))
        throw std::logic_error("thorpe_report: combo_minus norm identity failed");

    rep.vanish_minus_plus = rep.norms.minus_plus == 0;
    rep.vanish_plus_minus = rep.norms.plus_minus == 0;
    rep.ineq_plus_holds = rep.combo_plus.coefficient >= 0;
    rep.ineq_minus_holds = rep.combo_minus.coefficient >= 0;
    rep.ineq_abs_holds = binom * rep.euler.coefficient >= abs(rep.pontryagin.coefficient);
    return rep;
}

}  // namespace biform
