// Command-line front end: identity-suite runner, Thorpe report emitter,
// counterexample exporter, and micro-benchmarks. Exit codes: 0 success,
// 1 verification failure, 2 usage or input error.

#include <biform/chern_weil.hpp>
#include <biform/curvature.hpp>
#include <biform/form.hpp>
#include <biform/io.hpp>
#include <biform/verify.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace biform;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

struct CheckResult {
    std::string name;
    std::string status;  // "pass", "fail", "skip"
    std::string reason;  // for skips and failures
    json detail = json::object();
};

class SuiteRunner {
public:
    SuiteRunner(std::uint64_t seed, int count) : seed_(seed), count_(count) {}

    void record(const std::string& name, const IdentityVerdict& v, const std::string& context = "") {
        CheckResult r{name, v.holds ? "pass" : "fail", "", json::object()};
        if (!v.holds) {
            r.reason = context.empty() ? "identity failed" : context;
            if (v.witness) r.detail["witness"] = witness_json(*v.witness);
        }
        results_.push_back(std::move(r));
    }

    void pass(const std::string& name, json detail = json::object()) {
        results_.push_back({name, "pass", "", std::move(detail)});
    }

    void fail(const std::string& name, const std::string& reason, json detail = json::object()) {
        results_.push_back({name, "fail", reason, std::move(detail)});
    }

    void skip(const std::string& name, const std::string& reason) {
        results_.push_back({name, "skip", reason, json::object()});
    }

    std::uint64_t seed() const { return seed_; }
    int count() const { return count_; }

    json report(const std::string& suite, int dim) const {
        auto sorted = results_;
        std::sort(sorted.begin(), sorted.end(),
                  [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
        json checks = json::array();
        int passed = 0, failed = 0, skipped = 0;
        for (const auto& r : sorted) {
            json c = {{"name", r.name}, {"status", r.status}};
            if (!r.reason.empty()) c["reason"] = r.reason;
            if (!r.detail.empty()) c["detail"] = r.detail;
            checks.push_back(std::move(c));
            if (r.status == "pass") ++passed;
            if (r.status == "fail") ++failed;
            if (r.status == "skip") ++skipped;
        }
        return {{"kind", "verify"},
                {"suite", suite},
                {"dim", dim},
                {"seed", seed_},
                {"count", count_},
                {"checks", checks},
                {"summary",
                 {{"total", static_cast<int>(sorted.size())},
                  {"passed", passed},
                  {"failed", failed},
                  {"skipped", skipped}}}};
    }

    bool all_green() const {
        return std::none_of(results_.begin(), results_.end(),
                            [](const CheckResult& r) { return r.status == "fail"; });
    }

private:
    std::uint64_t seed_;
    int count_;
    std::vector<CheckResult> results_;
};

std::string tag(const std::string& base, std::initializer_list<std::pair<const char*, int>> params) {
    std::string s = base + "[";
    bool first = true;
    for (const auto& [key, value] : params) {
        if (!first) s += ",";
        s += std::string(key) + "=" + std::to_string(value);
        first = false;
    }
    return s + "]";
}

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

void run_lemma_suite(SuiteRunner& run, int n) {
    if (n <= 4) {
        bool ok = true;
        IdentityVerdict first_bad;
        for (int p = 0; ok && p + 1 <= n; ++p)
            for (int q = 1; ok && p + q <= 4 && q <= n; ++q)
                for_each_subset(n, p, [&](const MultiIndex& I) {
                    for_each_subset(n, q, [&](const MultiIndex& J) {
                        if (!ok) return;
                        BiForm T(p, q, n, n);
                        T.add(I, J, 1);
                        IdentityVerdict v = verify_lemma_identity(T);
                        if (!v.holds) {
                            ok = false;
                            first_bad = v;
                        }
                    });
                });
        run.record(tag("lemma/exhaustive-basis", {{"n", n}}),
                   IdentityVerdict{"", ok, first_bad.witness});
    } else {
        run.skip(tag("lemma/exhaustive-basis", {{"n", n}}),
                 "exhaustive basis checks are bounded at dimension 4");
    }

    std::mt19937_64 rng(run.seed());
    for (auto [p, q] : {std::pair{1, 1}, {1, 2}, {2, 2}, {2, 3}}) {
        std::string name = tag("lemma/random", {{"n", n}, {"p", p}, {"q", q}});
        if (p + q > n || p + 1 > n) {
            run.skip(name, "bidegree does not fit in this dimension");
            continue;
        }
        bool ok = true;
        IdentityVerdict bad;
        for (int i = 0; ok && i < run.count(); ++i) {
            BiForm T = random_biform(rng, p, q, n, n);
            IdentityVerdict v = verify_lemma_identity(T);
            if (!v.holds) {
                ok = false;
                bad = v;
            }
        }
        run.record(name, IdentityVerdict{"", ok, bad.witness});
    }
}

void run_bianchi_star_suite(SuiteRunner& run, int n) {
    if (n <= 4) {
        bool ok = true;
        IdentityVerdict bad;
        for (int p = 0; ok && p + 1 <= n; ++p)
            for (int q = 1; ok && q <= n; ++q)
                for_each_subset(n, p, [&](const MultiIndex& I) {
                    for_each_subset(n, q, [&](const MultiIndex& J) {
                        if (!ok) return;
                        BiForm T(p, q, n, n);
                        T.add(I, J, 1);
                        IdentityVerdict v = verify_bianchi_star(T);
                        if (!v.holds) {
                            ok = false;
                            bad = v;
                        }
                    });
                });
        run.record(tag("bianchi-star/exhaustive-basis", {{"n", n}}),
                   IdentityVerdict{"", ok, bad.witness});
    } else {
        run.skip(tag("bianchi-star/exhaustive-basis", {{"n", n}}),
                 "exhaustive basis checks are bounded at dimension 4");
    }

    std::mt19937_64 rng(run.seed() + 1);
    for (int p = 0; p <= 5; ++p) {
        for (int q = 1; p + q <= 6; ++q) {
            std::string name = tag("bianchi-star/random", {{"n", n}, {"p", p}, {"q", q}});
            if (p + 1 > n || q > n || p > n) {
                run.skip(name, "bidegree does not fit in this dimension");
                continue;
            }
            bool ok = true;
            IdentityVerdict bad;
            for (int i = 0; ok && i < run.count(); ++i) {
                BiForm T = random_biform(rng, p, q, n, n, 6);
                IdentityVerdict v = verify_bianchi_star(T);
                if (!v.holds) {
                    ok = false;
                    bad = v;
                }
            }
            run.record(name, IdentityVerdict{"", ok, bad.witness});
        }
    }

    // corollary: star of a curvature power stays in the Bianchi kernel
    if (n == 4 || n == 8) {
        int k = n / 4;
        int cases = std::min(run.count(), k == 1 ? 10 : 3);
        std::string name = tag("bianchi-star/corollary", {{"n", n}, {"k", k}});
        bool ok = true;
        IdentityVerdict bad;
        for (int i = 0; ok && i < cases; ++i) {
            CurvatureTensor R(random_curvature(run.seed() + 100 + i, n, n, k, false, true));
            IdentityVerdict v = verify_corollary_star_bianchi(R, k);
            if (!v.holds) {
                ok = false;
                bad = v;
            }
        }
        run.record(name, IdentityVerdict{"", ok, bad.witness});
    } else {
        run.skip(tag("bianchi-star/corollary", {{"n", n}}),
                 "curvature powers need dimension 4 or 8 here");
    }
}

void run_altalt_suite(SuiteRunner& run, int n) {
    std::mt19937_64 rng(run.seed() + 2);
    {
        std::string name = tag("altalt/random-symmetric", {{"n", n}, {"p", 1}});
        if (n < 4) {
            run.skip(name, "needs dimension at least 4");
        } else {
            bool ok = true;
            IdentityVerdict bad;
            for (int i = 0; ok && i < run.count(); ++i) {
                BiForm S = random_biform(rng, 2, 2, n, n);
                IdentityVerdict v = verify_altalt(S + transpose(S));
                if (!v.holds) {
                    ok = false;
                    bad = v;
                }
            }
            run.record(name, IdentityVerdict{"", ok, bad.witness});
        }
    }
    {
        std::string name = tag("altalt/random-symmetric", {{"n", n}, {"p", 2}});
        if (n < 8) {
            run.skip(name, "needs dimension at least 8");
        } else {
            bool ok = true;
            IdentityVerdict bad;
            int cases = std::min(run.count(), 5);
            for (int i = 0; ok && i < cases; ++i) {
                BiForm S = random_biform(rng, 4, 4, n, n, 12);
                IdentityVerdict v = verify_altalt(S + transpose(S));
                if (!v.holds) {
                    ok = false;
                    bad = v;
                }
            }
            run.record(name, IdentityVerdict{"", ok, bad.witness});
        }
    }
    {
        std::string name = tag("altalt/counterexample-tensor", {{"n", n}});
        if (n < 8)
            run.skip(name, "counterexample tensor needs dimension at least 8");
        else
            run.record(name, verify_altalt(thorpe_counterexample(n)));
    }
    {
        std::string name = tag("altalt/curvature-power", {{"n", n}});
        if (n == 4) {
            CurvatureTensor R(random_curvature(run.seed() + 3, 4, 4, 1, false, true));
            run.record(name, verify_altalt(R.form()));
        } else if (n == 8) {
            auto R = random_curvature(run.seed() + 3, 8, 8, 2, false, true);
            run.record(name, verify_altalt(power(R, 2)));
        } else {
            run.skip(name, "curvature powers need dimension 4 or 8 here");
        }
    }
}

void run_counterexample_suite(SuiteRunner& run, int n) {
    std::string name = tag("counterexample/exhibit", {{"n", n}});
    if (n < 8) {
        run.skip(name, "needs dimension at least 8");
        return;
    }
    IdentityVerdict v = verify_forward_failure(n);
    json detail;
    if (v.holds) {
        BiForm T = thorpe_counterexample(n);
        BiForm lead = antisymmetrize_leading(T, 5);
        Rational surv = lead.coefficient(MultiIndex({1, 2, 3, 4, 5}, n), MultiIndex({6, 7, 8}, n));
        bool exact = (surv == Rational(1, 5)) && (bianchi(T) == lead * Rational(-5));
        if (!exact) {
            run.fail(name, "surviving component does not match the expected 1/5");
            return;
        }
        detail = {{"exhibit", "alt=0, bianchi!=0"},
                  {"surviving_component", rational_string(surv)}};
    }
    run.record(name, v);
    if (v.holds && !detail.empty()) {
        // attach the exhibit detail to the recorded pass
        run.pass(tag("counterexample/surviving-component", {{"n", n}}), detail);
    }
}

void run_chern_weil_suite(SuiteRunner& run, int n) {
    std::string base = "chern-weil/";
    if (n % 4 != 0 || n / 4 > 2) {
        run.skip(base + "cross-routes[n=" + std::to_string(n) + "]",
                 "needs dimension 4 or 8");
        return;
    }
    int k = n / 4;
    int cases = std::max(1, k == 1 ? run.count() : std::min(run.count(), 10));
    {
        std::string name = tag(base + "cross-routes", {{"n", n}, {"k", k}});
        bool ok = true;
        std::string why;
        for (int i = 0; ok && i < cases; ++i) {
            auto R = random_curvature(run.seed() + 200 + i, n, n, k, i % 2 == 0, false);
            if (pontryagin_density_sym(R) != pontryagin_density_norm(R)) {
                ok = false;
                why = "pontryagin routes disagree at case " + std::to_string(i);
            } else if (euler_density_pfaffian(R) != euler_density_norm(R)) {
                ok = false;
                why = "euler routes disagree at case " + std::to_string(i);
            }
        }
        if (ok)
            run.pass(name, {{"cases", cases}});
        else
            run.fail(name, why);
    }
    {
        std::string name = tag(base + "theorem-identities", {{"n", n}, {"k", k}});
        bool ok = true;
        std::string why;
        for (int i = 0; ok && i < cases; ++i) {
            auto R = random_curvature(run.seed() + 300 + i, n, n, k, true, false);
            try {
                ThorpeReport rep = thorpe_report(R);  // cross-checks internally
                if (rep.vanish_minus_plus != rep.vanish_plus_minus) {
                    ok = false;
                    why = "vanishing hypotheses differ for a symmetric curvature";
                }
            } catch (const std::logic_error& e) {
                ok = false;
                why = e.what();
            }
            BiForm Rk = power(R, k);
            if (ok && transpose(project(Rk, Polarity::plus, Polarity::minus)) !=
                          project(Rk, Polarity::minus, Polarity::plus)) {
                ok = false;
                why = "transpose does not exchange the mixed projections";
            }
        }
        if (ok)
            run.pass(name, {{"cases", cases}});
        else
            run.fail(name, why);
    }
    if (n == 4) {
        std::string name = base + "gauss-bonnet[n=4]";
        auto C = constant_curvature(4, 1);
        Density e = euler_density_pfaffian(C.bundle);
        Density p = pontryagin_density_sym(C.bundle);
        PiValue chi = integrate_density(e, parse_pi_volume("8/3*pi^2"));
        if (e.coefficient == 3 && e.pi_power == 2 && p.coefficient == 0 && chi.factor == 2 &&
            chi.pi_exponent == 0)
            run.pass(name, {{"euler", density_json(e)}, {"integrated", pi_value_json(chi)}});
        else
            run.fail(name, "round-sphere model values are off",
                     {{"euler", density_json(e)}, {"pontryagin", density_json(p)}});
    }
}

int run_verify(const std::string& suite, int dim, std::uint64_t seed, int count, int max_dim,
               const std::string& out_path) {
    if (dim < 1 || dim > max_dim) {
        std::cerr << "verify: dimension " << dim << " outside [1.." << max_dim
                  << "] (see --max-dim)\n";
        return kExitUsage;
    }
    if (count < 1) {
        std::cerr << "verify: --count must be positive\n";
        return kExitUsage;
    }
    if (suite == "counterexample" && dim < 8) {
        std::cerr << "verify: the counterexample suite needs --dim >= 8\n";
        return kExitUsage;
    }
    SuiteRunner run(seed, count);
    if (suite == "lemma" || suite == "all") run_lemma_suite(run, dim);
    if (suite == "bianchi-star" || suite == "all") run_bianchi_star_suite(run, dim);
    if (suite == "altalt" || suite == "all") run_altalt_suite(run, dim);
    if (suite == "counterexample" || suite == "all") run_counterexample_suite(run, dim);
    if (suite == "chern-weil-cross" || suite == "all") run_chern_weil_suite(run, dim);

    json rep = run.report(suite, dim);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "verify: cannot write " << out_path << "\n";
            return kExitUsage;
        }
        out << rep.dump(2) << "\n";
        std::cout << "wrote " << out_path << "; " << rep["summary"].dump() << "\n";
    } else {
        std::cout << rep.dump(2) << "\n";
    }
    return run.all_green() ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------------------
// thorpe
// ---------------------------------------------------------------------------

int run_thorpe(const std::string& input, int k_flag, const std::string& volume,
               const std::string& out_path) {
    TensorFile f = load_tensor_file(input);
    BundleCurvature R = f.as_curvature();
    if (k_flag != 0 && k_flag != R.k)
        throw std::invalid_argument("thorpe: --k disagrees with the file's base dimension");
    ThorpeReport rep = thorpe_report(R);
    json j = {{"kind", "thorpe"}, {"input", input}, {"report", thorpe_report_json(rep)}};
    if (!volume.empty()) {
        PiValue vol = parse_pi_volume(volume);
        j["volume"] = pi_value_json(vol);
        j["integrated"] = {{"euler", pi_value_json(integrate_density(rep.euler, vol))},
                           {"pontryagin", pi_value_json(integrate_density(rep.pontryagin, vol))},
                           {"combo_plus", pi_value_json(integrate_density(rep.combo_plus, vol))},
                           {"combo_minus", pi_value_json(integrate_density(rep.combo_minus, vol))}};
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("thorpe: cannot write " + out_path);
        out << j.dump(2) << "\n";
        std::cout << "wrote " << out_path << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// counterexample
// ---------------------------------------------------------------------------

int run_counterexample(int dim, const std::string& out_path) {
    BiForm T = thorpe_counterexample(dim);
    save_tensor_file(out_path, T, "biform");
    TensorFile f = load_tensor_file(out_path);
    if (!(f.form == T)) throw std::logic_error("counterexample: round-trip mismatch");
    std::cout << "wrote " << out_path << " (" << T.size() << " entries, round-trip verified)\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

int run_bench(int k, int trials, std::uint64_t seed) {
    if (k != 1 && k != 2) {
        std::cerr << "bench: --k must be 1 or 2\n";
        return kExitUsage;
    }
    if (trials < 1) {
        std::cerr << "bench: --count must be positive\n";
        return kExitUsage;
    }
    const int n = 4 * k;
    using clock = std::chrono::steady_clock;
    auto ms = [](clock::duration d) {
        return std::chrono::duration<double, std::milli>(d).count();
    };

    double t_power = 0, t_pont_sym = 0, t_pont_norm = 0, t_euler_pf = 0, t_euler_norm = 0;
    double t_bianchi_star = 0;
    Rational digest = 0;
    for (int i = 0; i < trials; ++i) {
        auto R = random_curvature(seed + i, n, n, k, true, false);
        auto t0 = clock::now();
        BiForm Rk = power(R, k);
        auto t1 = clock::now();
        Density ps = pontryagin_density_sym(R);
        auto t2 = clock::now();
        Density pn = pontryagin_density_norm(R);
        auto t3 = clock::now();
        Density ep = euler_density_pfaffian(R);
        auto t4 = clock::now();
        Density en = euler_density_norm(R);
        auto t5 = clock::now();
        t_power += ms(t1 - t0);
        t_pont_sym += ms(t2 - t1);
        t_pont_norm += ms(t3 - t2);
        t_euler_pf += ms(t4 - t3);
        t_euler_norm += ms(t5 - t4);
        if (ps != pn || ep != en) {
            std::cerr << "bench: cross-route mismatch\n";
            return kExitVerificationFailed;
        }
        digest += ep.coefficient + ps.coefficient;
        if (k == 2) {
            CurvatureTensor B(random_curvature(seed + 1000 + i, n, n, k, false, true));
            auto b0 = clock::now();
            IdentityVerdict v = verify_corollary_star_bianchi(B, k);
            auto b1 = clock::now();
            t_bianchi_star += ms(b1 - b0);
            if (!v.holds) {
                std::cerr << "bench: corollary check failed\n";
                return kExitVerificationFailed;
            }
        }
    }
    json j = {{"kind", "bench"},
              {"k", k},
              {"trials", trials},
              {"seed", seed},
              {"digest", rational_string(digest)},
              {"total_ms",
               {{"power", t_power},
                {"pontryagin_sym", t_pont_sym},
                {"pontryagin_norm", t_pont_norm},
                {"euler_pfaffian", t_euler_pf},
                {"euler_norm", t_euler_norm}}}};
    if (k == 2) j["total_ms"]["bianchi_star_check"] = t_bianchi_star;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact bi-form algebra: identity suites, characteristic densities, reports"};
    app.require_subcommand(1);

    std::string suite = "all";
    int dim = 4;
    std::uint64_t seed = 1;
    int count = 25;
    int max_dim = 8;
    std::string out_path;

    auto* verify = app.add_subcommand("verify", "run an identity-verification suite");
    verify->add_option("suite", suite, "one of: lemma, bianchi-star, altalt, counterexample, chern-weil-cross, all")
        ->check(CLI::IsMember({"lemma", "bianchi-star", "altalt", "counterexample",
                               "chern-weil-cross", "all"}));
    verify->add_option("--dim", dim, "ambient dimension")->capture_default_str();
    verify->add_option("--seed", seed, "generator seed")->capture_default_str();
    verify->add_option("--count", count, "random tensors per check")->capture_default_str();
    verify->add_option("--max-dim", max_dim, "dimension cap")->capture_default_str();
    verify->add_option("--out", out_path, "write the report to this file");

    std::string input;
    int k_flag = 0;
    std::string volume;
    auto* thorpe = app.add_subcommand("thorpe", "emit a Thorpe report for a curvature file");
    thorpe->add_option("input", input, "curvature tensor file")->required();
    thorpe->add_option("--k", k_flag, "expected k (validated against the file)");
    thorpe->add_option("--volume", volume, "constant volume, e.g. '8/3*pi^2': also emit integrals");
    thorpe->add_option("--out", out_path, "write the report to this file");

    int ce_dim = 8;
    std::string ce_out;
    auto* counter = app.add_subcommand("counterexample", "write the symmetric counterexample tensor");
    counter->add_option("--dim", ce_dim, "ambient dimension (>= 8)")->capture_default_str();
    counter->add_option("--out", ce_out, "output tensor file")->required();

    int bench_k = 1;
    int bench_trials = 0;
    auto* bench = app.add_subcommand("bench", "time curvature powers and density routes");
    bench->add_option("--k", bench_k, "power (1 or 2)")->capture_default_str();
    bench->add_option("--count", bench_trials, "trials (default 100 for k=1, 5 for k=2)");
    bench->add_option("--seed", seed, "generator seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify->parsed()) return run_verify(suite, dim, seed, count, max_dim, out_path);
        if (thorpe->parsed()) return run_thorpe(input, k_flag, volume, out_path);
        if (counter->parsed()) return run_counterexample(ce_dim, ce_out);
        if (bench->parsed())
            return run_bench(bench_k, bench_trials > 0 ? bench_trials : (bench_k == 1 ? 100 : 5),
                             seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
    return kExitUsage;
}
