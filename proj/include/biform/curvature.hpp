#pragma once

#include <biform/form.hpp>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace biform {

// Curvature of a metric connection on an oriented rank-l bundle over a
// 4k-dimensional base, as algebraic data in orthonormal frames: a (2,2)
// bi-form over (base_dim, fiber_rank). Skewness in each index pair is
// structural.
struct BundleCurvature {
    int base_dim = 0;
    int fiber_rank = 0;
    int k = 0;
    BiForm form;

    BundleCurvature(int base_dim_, int fiber_rank_, int k_, BiForm form_)
        : base_dim(base_dim_), fiber_rank(fiber_rank_), k(k_), form(std::move(form_)) {
        if (k < 1) throw std::invalid_argument("BundleCurvature: k must be positive");
        if (base_dim != 4 * k)
            throw std::invalid_argument("BundleCurvature: base dimension must equal 4k");
        if (fiber_rank < 2 * k)
            throw std::invalid_argument("BundleCurvature: fiber rank must be at least 2k");
        if (form.deg_first() != 2 || form.deg_second() != 2 || form.dim_first() != base_dim ||
            form.dim_second() != fiber_rank)
            throw std::invalid_argument("BundleCurvature: form must be (2,2) over (base, fiber)");
    }

    static BundleCurvature zero(int base_dim, int fiber_rank, int k) {
        return {base_dim, fiber_rank, k, BiForm(2, 2, base_dim, fiber_rank)};
    }
};

struct ComponentEntry {
    int i, j, a, b;
    Rational value;
};

/// Builds a bundle curvature from components R_{ijab}. Entries are folded to
/// canonical keys through the skew symmetries; the same canonical key given
/// two different values is rejected.
inline BundleCurvature from_components(const std::vector<ComponentEntry>& entries, int base_dim,
                                       int fiber_rank, int k) {
    std::map<BiForm::Key, Rational> folded;
    for (const auto& e : entries) {
        SignedIndex si = canonicalize({e.i, e.j}, base_dim);
        SignedIndex sj = canonicalize({e.a, e.b}, fiber_rank);
        if (si.sign == 0 || sj.sign == 0) {
            if (e.value != 0)
                throw std::invalid_argument(
                    "from_components: repeated index forces a zero component, got nonzero value");
            continue;
        }
        Rational value = Rational(si.sign * sj.sign) * e.value;
        auto [it, inserted] = folded.try_emplace({si.index, sj.index}, value);
        if (!inserted && it->second != value)
            throw std::invalid_argument("from_components: inconsistent duplicate for key " +
                                        si.index.to_string() + sj.index.to_string());
    }
    BiForm form(2, 2, base_dim, fiber_rank);
    for (const auto& [key, value] : folded) form.set(key.first, key.second, value);
    return {base_dim, fiber_rank, k, std::move(form)};
}

// Tangent-bundle-type curvature: fiber equals base, with the pair-interchange
// and first-Bianchi properties recorded as flags that are always re-derived
// from the form, never assumed.
struct CurvatureTensor {
    BundleCurvature bundle;
    bool pair_symmetric = false;
    bool first_bianchi = false;

    explicit CurvatureTensor(BundleCurvature b)
        : bundle(std::move(b)),
          pair_symmetric(is_symmetric(bundle.form)),
          first_bianchi(bianchi(bundle.form).is_zero()) {
        if (bundle.fiber_rank != bundle.base_dim)
            throw std::invalid_argument("CurvatureTensor: fiber rank must equal base dimension");
    }

    const BiForm& form() const { return bundle.form; }
    int dim() const { return bundle.base_dim; }
};

/// The metric (1,1) double form g = sum_i e^i (x) e^i.
inline BiForm metric_double_form(int n) {
    BiForm g(1, 1, n, n);
    for (int i = 1; i <= n; ++i) g.add(MultiIndex({i}, n), MultiIndex({i}, n), 1);
    return g;
}

/// Kulkarni-Nomizu-type product: the bi-form wedge of two symmetric (1,1)
/// double forms, a curvature tensor satisfying the first Bianchi identity.
inline CurvatureTensor kulkarni_nomizu(const BiForm& h1, const BiForm& h2) {
    auto check = [](const BiForm& h, const char* name) {
        if (h.deg_first() != 1 || h.deg_second() != 1)
            throw std::invalid_argument(std::string("kulkarni_nomizu: ") + name +
                                        " must have bidegree (1,1)");
        if (!is_symmetric(h))
            throw std::invalid_argument(std::string("kulkarni_nomizu: ") + name +
                                        " must be symmetric");
    };
    check(h1, "h1");
    check(h2, "h2");
    if (h1.dim_first() != h2.dim_first())
        throw std::invalid_argument("kulkarni_nomizu: dimension mismatch");
    int n = h1.dim_first();
    if (n % 4 != 0) throw std::invalid_argument("kulkarni_nomizu: dimension must be a multiple of 4");
    return CurvatureTensor(BundleCurvature(n, n, n / 4, wedge(h1, h2)));
}

/// Constant-curvature model tensor: R_{ijij} = kappa for i < j, realized as
/// (kappa/2) g ^ g.
inline CurvatureTensor constant_curvature(int n, const Rational& kappa) {
    if (n % 4 != 0)
        throw std::invalid_argument("constant_curvature: dimension must be a multiple of 4");
    BiForm g = metric_double_form(n);
    return CurvatureTensor(BundleCurvature(n, n, n / 4, wedge(g, g) * (kappa / 2)));
}

namespace detail {

// Raw-engine draws, so generated data is identical across standard libraries.
inline Rational draw_rational(std::mt19937_64& rng) {
    long long num = static_cast<long long>(rng() % 13) - 6;
    long long den = 1 + static_cast<long long>(rng() % 4);
    return Rational(num, den);
}

inline Rational draw_nonzero_rational(std::mt19937_64& rng) {
    Rational r = draw_rational(rng);
    while (r == 0) r = draw_rational(rng);
    return r;
}

inline BiForm draw_symmetric_pairing(std::mt19937_64& rng, int n) {
    BiForm s(1, 1, n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            s.add(MultiIndex({i}, n), MultiIndex({j}, n), draw_rational(rng));
    return s + transpose(s);
}

}  // namespace detail

/// Deterministic sparse form with small rational coefficients; roughly one
/// key in `thin` is populated.
inline BiForm random_biform(std::mt19937_64& rng, int deg_first, int deg_second, int dim_first,
                            int dim_second, int thin = 3) {
    if (thin < 1) throw std::invalid_argument("random_biform: thin must be positive");
    BiForm out(deg_first, deg_second, dim_first, dim_second);
    for_each_subset(dim_first, deg_first, [&](const MultiIndex& I) {
        for_each_subset(dim_second, deg_second, [&](const MultiIndex& J) {
            if (rng() % static_cast<unsigned>(thin) == 0) out.add(I, J, detail::draw_rational(rng));
        });
    });
    return out;
}

/// Deterministic curvature generator. With want_bianchi the result is a
/// random rational combination of Kulkarni-Nomizu products (fiber must equal
/// base); with want_pair_symmetry alone the draw is symmetrized as T + T^t.
/// Flags of the result are for the caller to re-derive, never implied.
inline BundleCurvature random_curvature(std::uint64_t seed, int n, int l, int k,
                                        bool want_pair_symmetry, bool want_bianchi) {
    std::mt19937_64 rng(seed);
    if (want_bianchi && l != n)
        throw std::invalid_argument("random_curvature: first-Bianchi draws need fiber rank = base dim");
    if (want_pair_symmetry && l != n)
        throw std::invalid_argument("random_curvature: symmetrization needs fiber rank = base dim");
    if (want_bianchi) {
        BiForm acc(2, 2, n, n);
        for (int term = 0; term < 3; ++term) {
            BiForm h1 = detail::draw_symmetric_pairing(rng, n);
            BiForm h2 = detail::draw_symmetric_pairing(rng, n);
            acc += wedge(h1, h2) * detail::draw_nonzero_rational(rng);
        }
        return {n, l, k, std::move(acc)};
    }
    BiForm form = random_biform(rng, 2, 2, n, l);
    if (want_pair_symmetry) form += transpose(form);
    return {n, l, k, std::move(form)};
}

/// Repeated bi-form wedge R^p.
inline BiForm power(const BundleCurvature& R, int p) {
    if (p < 0) throw std::invalid_argument("power: exponent must be nonnegative");
    if (2 * p > R.base_dim || 2 * p > R.fiber_rank)
        throw std::invalid_argument("power: degree overflow");
    BiForm acc(0, 0, R.base_dim, R.fiber_rank);
    acc.add(MultiIndex::empty(R.base_dim), MultiIndex::empty(R.fiber_rank), 1);
    for (int i = 0; i < p; ++i) acc = wedge(acc, R.form);
    return acc;
}

/// The symmetric (4,4) double form with vanishing complete antisymmetrization
/// whose leading-slot antisymmetrization survives: generator components
/// T_{12345678} = T_{12374568} = 1 plus their transposes, all else zero.
inline BiForm thorpe_counterexample(int n) {
    if (n < 8) throw std::invalid_argument("thorpe_counterexample: dimension must be at least 8");
    BiForm T(4, 4, n, n);
    auto put = [&](std::vector<int> is, std::vector<int> js) {
        MultiIndex I(is, n), J(js, n);
        T.add(I, J, 1);
        T.add(J, I, 1);
    };
    put({1, 2, 3, 4}, {5, 6, 7, 8});
    put({1, 2, 3, 7}, {4, 5, 6, 8});
    return T;
}

}  // namespace biform
