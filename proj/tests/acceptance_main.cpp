// Acceptance suite: end-to-end checks of the library against its contract,
// one pass/fail line per criterion, everything bit-exact. Returns nonzero if
// any criterion fails.

#include <biform/chern_weil.hpp>
#include <biform/curvature.hpp>
#include <biform/form.hpp>
#include <biform/io.hpp>
#include <biform/verify.hpp>

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace biform;

namespace {

struct Failure {
    std::string message;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw Failure{message};
}

std::vector<BundleCurvature> criterion1_inputs() {
    std::vector<BundleCurvature> inputs;
    for (std::uint64_t seed = 1; seed <= 50; ++seed)
        inputs.push_back(random_curvature(seed, 4, 4, 1, seed % 2 == 0, false));
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
        inputs.push_back(random_curvature(seed, 8, 8, 2, seed % 2 == 0, false));
    return inputs;
}

// 1. Both Pontryagin routes and both Euler routes agree bit-exactly on 50
//    random (4,4,1) curvatures and 10 random (8,8,2) curvatures.
void criterion_cross_route() {
    for (const BundleCurvature& R : criterion1_inputs()) {
        std::ostringstream at;
        at << "(n=" << R.base_dim << ", k=" << R.k << ")";
        require(pontryagin_density_sym(R) == pontryagin_density_norm(R),
                "pontryagin routes disagree " + at.str());
        require(euler_density_pfaffian(R) == euler_density_norm(R),
                "euler routes disagree " + at.str());
    }
}

// 2. The two combination identities hold bit-exactly on every criterion-1
//    input, and the transpose exchanges the mixed projections of R^k for
//    pair-symmetric inputs.
void criterion_theorem_identities() {
    for (const BundleCurvature& R : criterion1_inputs()) {
        const int k = R.k;
        ThorpeReport rep = thorpe_report(R);  // both routes re-checked inside
        Rational scale = Rational(2) / Rational(factorial(k) * factorial(k));
        require(rep.combo_plus.coefficient ==
                    scale * (rep.norms.plus_plus - rep.norms.minus_plus),
                "combination identity (+) failed");
        require(rep.combo_minus.coefficient ==
                    scale * (rep.norms.minus_minus - rep.norms.plus_minus),
                "combination identity (-) failed");
        if (is_symmetric(R.form)) {
            BiForm Rk = power(R, k);
            require(transpose(project(Rk, Polarity::plus, Polarity::minus)) ==
                        project(Rk, Polarity::minus, Polarity::plus),
                    "transpose does not exchange the mixed projections");
        }
    }
}

// 3. Round-sphere model: Euler density 3 at pi_power 2 via the Pfaffian route
//    first, Pontryagin exactly zero via the symmetric-polynomial route first,
//    the norm routes agree, and integrating against 8/3 pi^2 gives 2.
void criterion_gauss_bonnet() {
    auto C = constant_curvature(4, 1);
    Density e = euler_density_pfaffian(C.bundle);
    require(e.coefficient == 3 && e.pi_power == 2, "euler density of the round sphere is not 3");
    Density p = pontryagin_density_sym(C.bundle);
    require(p.coefficient == 0 && p.pi_power == 2, "pontryagin density of the round sphere is not 0");
    require(euler_density_norm(C.bundle) == e, "euler norm route disagrees on the round sphere");
    require(pontryagin_density_norm(C.bundle) == p,
            "pontryagin norm route disagrees on the round sphere");
    PiValue chi = integrate_density(e, parse_pi_volume("8/3*pi^2"));
    require(chi.factor == 2 && chi.pi_exponent == 0, "integrated euler density is not 2");
}

// 4. The counterexample tensor: complete antisymmetrization vanishes (both
//    the library route and the literal 8!-term oracle), while the averaged
//    antisymmetrization over the first five slots is exactly 1/5 at
//    ([1,2,3,4,5],[6,7,8]) and the Bianchi image is -5 times it.
void criterion_counterexample() {
    BiForm T = thorpe_counterexample(8);
    require(is_symmetric(T), "counterexample is not transpose-fixed");
    require(alt(T).is_zero(), "alt of the counterexample is not zero");
    require(oracle::alt_perm(T).is_zero(), "8!-term oracle alt is not zero");

    BiForm lead_oracle = oracle::leading_alt_perm(T, 5);
    MultiIndex I({1, 2, 3, 4, 5}, 8), J({6, 7, 8}, 8);
    require(lead_oracle.coefficient(I, J) == Rational(1, 5),
            "surviving component is not exactly 1/5");
    require(antisymmetrize_leading(T, 5) == lead_oracle,
            "leading antisymmetrization disagrees with the oracle");
    require(bianchi(T) == lead_oracle * Rational(-5),
            "bianchi image is not -5 times the leading antisymmetrization");
    require(verify_forward_failure(8).holds, "forward-failure exhibit did not hold");
}

// 5. The bianchi-star sign rule on every basis element for n <= 4 and on 100
//    random sparse tensors per (n,p,q) for n in 5..8, p+q <= 6; the corollary
//    for 10 first-Bianchi curvatures at k=1 and 3 at k=2.
void criterion_bianchi_star() {
    for (int n = 1; n <= 4; ++n)
        for (int p = 0; p + 1 <= n; ++p)
            for (int q = 1; q <= n; ++q)
                for_each_subset(n, p, [&](const MultiIndex& I) {
                    for_each_subset(n, q, [&](const MultiIndex& J) {
                        BiForm T(p, q, n, n);
                        T.add(I, J, 1);
                        require(verify_bianchi_star(T).holds,
                                "sign rule failed on a basis element (n=" + std::to_string(n) +
                                    ",p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")");
                    });
                });
    std::mt19937_64 rng(505);
    for (int n = 5; n <= 8; ++n)
        for (int p = 0; p <= 5; ++p)
            for (int q = 1; p + q <= 6; ++q) {
                if (p + 1 > n || q > n) continue;
                for (int i = 0; i < 100; ++i) {
                    BiForm T = random_biform(rng, p, q, n, n, 8);
                    require(verify_bianchi_star(T).holds,
                            "sign rule failed (n=" + std::to_string(n) + ",p=" +
                                std::to_string(p) + ",q=" + std::to_string(q) + ")");
                }
            }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        CurvatureTensor R(random_curvature(seed, 4, 4, 1, false, true));
        require(verify_corollary_star_bianchi(R, 1).holds, "corollary failed at k=1");
    }
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        CurvatureTensor R(random_curvature(seed, 8, 8, 2, false, true));
        require(verify_corollary_star_bianchi(R, 2).holds, "corollary failed at k=2");
    }
}

// 6. The leading-antisymmetrization identity on exhaustive small bases and
//    random tensors; the symmetric-tensor identity for 25 random p=1 and 5
//    random p=2 inputs; vanishing of alt and bianchi on every generated
//    first-Bianchi curvature and its admissible powers.
void criterion_lemma_suite() {
    for (int n = 1; n <= 4; ++n)
        for (int p = 0; p + 1 <= n; ++p)
            for (int q = 1; p + q <= 4 && q <= n; ++q)
                for_each_subset(n, p, [&](const MultiIndex& I) {
                    for_each_subset(n, q, [&](const MultiIndex& J) {
                        BiForm T(p, q, n, n);
                        T.add(I, J, 1);
                        require(verify_lemma_identity(T).holds,
                                "leading-antisymmetrization identity failed on a basis element");
                    });
                });
    std::mt19937_64 rng(606);
    for (int i = 0; i < 25; ++i) {
        BiForm T = random_biform(rng, 2, 2, 4, 4);
        require(verify_lemma_identity(T).holds, "identity failed on a random (2,2) tensor");
    }
    for (int i = 0; i < 5; ++i) {
        BiForm T = random_biform(rng, 2, 3, 6, 6, 6);
        require(verify_lemma_identity(T).holds, "identity failed on a random (2,3) tensor");
    }

    for (int i = 0; i < 25; ++i) {
        BiForm S = random_biform(rng, 2, 2, 4, 4);
        require(verify_altalt(S + transpose(S)).holds, "symmetric identity failed at p=1");
    }
    for (int i = 0; i < 5; ++i) {
        BiForm S = random_biform(rng, 4, 4, 8, 8, 12);
        require(verify_altalt(S + transpose(S)).holds, "symmetric identity failed at p=2");
    }

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto R = random_curvature(seed, 4, 4, 1, false, true);
        require(bianchi(R.form).is_zero(), "generated curvature is not first-Bianchi (n=4)");
        require(alt(R.form).is_zero(), "alt of a first-Bianchi curvature is nonzero (n=4)");
    }
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto R = random_curvature(seed, 8, 8, 2, false, true);
        require(bianchi(R.form).is_zero(), "generated curvature is not first-Bianchi (n=8)");
        require(alt(R.form).is_zero(), "alt of a first-Bianchi curvature is nonzero (n=8)");
        BiForm R2 = power(R, 2);
        require(bianchi(R2).is_zero(), "bianchi of R^2 is nonzero");
        require(alt(R2).is_zero(), "alt of R^2 is nonzero");
    }
}

// 7. One-sided inequalities: killing the base-anti-self-dual part forces
//    combo_plus >= 0; imposing the two-sided star symmetry forces
//    binom(2,1) e >= |p_1|. Exact sign checks on 25 random curvatures each.
void criterion_inequalities() {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto R = random_curvature(seed, 4, 4, 1, false, false);
        BundleCurvature Rp(4, 4, 1, project(R.form, Polarity::plus, Polarity::none));
        ThorpeReport rep = thorpe_report(Rp);
        require(rep.vanish_minus_plus, "projection did not kill the (-,+) component");
        require(rep.combo_plus.coefficient >= 0, "one-sided inequality (+) failed");
    }
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto R = random_curvature(seed, 4, 4, 1, true, false);
        BiForm fixed = (R.form + star(R.form, Side::both)) * Rational(1, 2);
        BundleCurvature B(4, 4, 1, fixed);
        ThorpeReport rep = thorpe_report(B);
        require(rep.vanish_minus_plus && rep.vanish_plus_minus,
                "star-fixed curvature has mixed components");
        require(Rational(2) * rep.euler.coefficient >= abs(rep.pontryagin.coefficient),
                "two-sided inequality failed");
        require(rep.ineq_abs_holds, "report verdict disagrees with the two-sided inequality");
    }
}

// 8. The explicit permutation-sum formula for R^p agrees with the repeated
//    wedge on 20 random curvatures, p in {1,2}, via the dense brute-force
//    oracle.
void criterion_explicit_power_formula() {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto R = random_curvature(seed, 4, 4, 1, seed % 2 == 0, false);
        oracle::DenseCurvature dense(R.form);
        BiForm R1 = power(R, 1);
        BiForm R2 = power(R, 2);
        for_each_subset(4, 2, [&](const MultiIndex& I) {
            for_each_subset(4, 2, [&](const MultiIndex& J) {
                require(R1.coefficient(I, J) ==
                            oracle::power_component_explicit(dense, 1, I.indices(), J.indices()),
                        "explicit formula mismatch at p=1");
            });
        });
        for_each_subset(4, 4, [&](const MultiIndex& I) {
            for_each_subset(4, 4, [&](const MultiIndex& J) {
                require(R2.coefficient(I, J) ==
                            oracle::power_component_explicit(dense, 2, I.indices(), J.indices()),
                        "explicit formula mismatch at p=2");
            });
        });
        ++checked;
    }
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto R = random_curvature(seed, 4, 6, 1, false, false);
        oracle::DenseCurvature dense(R.form);
        BiForm R1 = power(R, 1);
        for_each_subset(4, 2, [&](const MultiIndex& I) {
            for_each_subset(6, 2, [&](const MultiIndex& J) {
                require(R1.coefficient(I, J) ==
                            oracle::power_component_explicit(dense, 1, I.indices(), J.indices()),
                        "explicit formula mismatch at p=1, rank 6");
            });
        });
        ++checked;
    }
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto R = random_curvature(seed, 8, 8, 2, false, false);
        oracle::DenseCurvature dense(R.form);
        BiForm R2 = power(R, 2);
        for_each_subset(8, 4, [&](const MultiIndex& I) {
            std::vector<int> is = I.indices();
            for_each_subset(8, 4, [&](const MultiIndex& J) {
                require(R2.coefficient(I, J) ==
                            oracle::power_component_explicit(dense, 2, is, J.indices()),
                        "explicit formula mismatch at p=2, n=8");
            });
        });
        ++checked;
    }
    require(checked == 20, "expected 20 curvatures in this criterion");
}

struct Criterion {
    int id;
    std::string label;
    std::function<void()> body;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "cross-route equality of both density computations", criterion_cross_route},
        {2, "combination identities and mixed-projection transpose", criterion_theorem_identities},
        {3, "round-sphere Euler density and Gauss-Bonnet value", criterion_gauss_bonnet},
        {4, "counterexample tensor: alt vanishes, 1/5 component survives", criterion_counterexample},
        {5, "bianchi-star sign rule and its corollary", criterion_bianchi_star},
        {6, "antisymmetrization identities and curvature-power kernels", criterion_lemma_suite},
        {7, "one-sided and two-sided inequalities", criterion_inequalities},
        {8, "explicit permutation-sum formula for curvature powers", criterion_explicit_power_formula},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string note;
        try {
            c.body();
        } catch (const Failure& f) {
            verdict = "FAIL";
            note = f.message;
            ++failures;
        } catch (const std::exception& e) {
            verdict = "FAIL";
            note = std::string("exception: ") + e.what();
            ++failures;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  criterion %d: %s (%.2fs)%s%s\n", verdict.c_str(), c.id, c.label.c_str(),
                    secs, note.empty() ? "" : " -- ", note.c_str());
        std::fflush(stdout);
    }
    if (failures == 0) {
        std::printf("all %zu criteria passed\n", criteria.size());
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}
