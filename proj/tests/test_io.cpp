#include <biform/io.hpp>

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <random>

using namespace biform;

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("12") == Rational(12));
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(rational_string(Rational(-3, 2)) == "-3/2");
    CHECK(rational_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("decimal rendering has 15 significant digits") {
    CHECK(decimal_string(Rational(2)) == "2");
    CHECK(decimal_string(Rational(1, 3)) == "0.333333333333333");
    // euler density of the round sphere: 3/(2 pi)^2
    std::string d = pi_value_decimal(Rational(3, 4), -2);
    CHECK(d.substr(0, 10) == "0.07599088");
    CHECK(pi_value_decimal(Rational(2), 0) == "2");
}

TEST_CASE("tensor files round-trip through canonicalization") {
    json j = {{"kind", "biform"},
              {"bidegree", {2, 2}},
              {"dims", {4, 4}},
              {"entries",
               {{{"I", {2, 1}}, {"J", {1, 2}}, {"value", "1/2"}},
                {{"I", {3, 4}}, {"J", {4, 3}}, {"value", -2}}}}};
    TensorFile f = tensor_file_from_json(j);
    CHECK(f.form.coefficient(MultiIndex({1, 2}, 4), MultiIndex({1, 2}, 4)) == Rational(-1, 2));
    CHECK(f.form.coefficient(MultiIndex({3, 4}, 4), MultiIndex({3, 4}, 4)) == 2);

    json back = tensor_file_to_json(f.form, "biform");
    TensorFile again = tensor_file_from_json(back);
    CHECK(again.form == f.form);
}

TEST_CASE("tensor file loader rejects bad input") {
    json missing = {{"kind", "biform"}, {"bidegree", {1, 1}}, {"dims", {4, 4}}};
    CHECK_THROWS_AS(tensor_file_from_json(missing), std::invalid_argument);

    json inconsistent = {{"kind", "biform"},
                         {"bidegree", {1, 1}},
                         {"dims", {4, 4}},
                         {"entries",
                          {{{"I", {1}}, {"J", {2}}, {"value", "1"}},
                           {{"I", {1}}, {"J", {2}}, {"value", "2"}}}}};
    CHECK_THROWS_AS(tensor_file_from_json(inconsistent), std::invalid_argument);

    // consistent duplicates fold silently
    json folded = {{"kind", "biform"},
                   {"bidegree", {2, 2}},
                   {"dims", {4, 4}},
                   {"entries",
                    {{{"I", {1, 2}}, {"J", {1, 2}}, {"value", "1"}},
                     {{"I", {2, 1}}, {"J", {2, 1}}, {"value", "1"}}}}};
    CHECK(tensor_file_from_json(folded).form.size() == 1);

    json repeated = {{"kind", "biform"},
                     {"bidegree", {2, 2}},
                     {"dims", {4, 4}},
                     {"entries", {{{"I", {1, 1}}, {"J", {1, 2}}, {"value", "1"}}}}};
    CHECK_THROWS_AS(tensor_file_from_json(repeated), std::invalid_argument);

    json degree_mismatch = {{"kind", "biform"},
                            {"bidegree", {2, 2}},
                            {"dims", {4, 4}},
                            {"entries", {{{"I", {1}}, {"J", {1, 2}}, {"value", "1"}}}}};
    CHECK_THROWS_AS(tensor_file_from_json(degree_mismatch), std::invalid_argument);

    json bad_kind = {{"kind", "spinor"}, {"bidegree", {1, 1}}, {"dims", {4, 4}}, {"entries", json::array()}};
    CHECK_THROWS_AS(tensor_file_from_json(bad_kind), std::invalid_argument);

    json bad_curv = {{"kind", "curvature"}, {"bidegree", {1, 1}}, {"dims", {4, 4}}, {"entries", json::array()}};
    CHECK_THROWS_AS(tensor_file_from_json(bad_curv), std::invalid_argument);
}

TEST_CASE("curvature files expose k and convert to bundle curvature") {
    json j = {{"kind", "curvature"},
              {"bidegree", {2, 2}},
              {"dims", {4, 4}},
              {"entries", {{{"I", {1, 2}}, {"J", {1, 2}}, {"value", "1"}}}}};
    TensorFile f = tensor_file_from_json(j);
    CHECK(f.k == 1);
    BundleCurvature R = f.as_curvature();
    CHECK(R.base_dim == 4);
    CHECK(R.fiber_rank == 4);

    json biform_kind = {{"kind", "biform"},
                        {"bidegree", {2, 2}},
                        {"dims", {4, 4}},
                        {"entries", json::array()}};
    CHECK_THROWS_AS(tensor_file_from_json(biform_kind).as_curvature(), std::invalid_argument);
}

TEST_CASE("file save/load round-trip on disk") {
    std::mt19937_64 rng(55);
    BiForm T = oracle::random_biform(rng, 2, 2, 4, 4);
    std::string path = (std::filesystem::temp_directory_path() / "biform_io_test.json").string();
    save_tensor_file(path, T, "biform");
    TensorFile f = load_tensor_file(path);
    CHECK(f.form == T);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_tensor_file("/nonexistent/nowhere.json"), std::invalid_argument);
}

TEST_CASE("loading a scrambled file equals canonicalizing it") {
    std::mt19937_64 rng(56);
    for (int trial = 0; trial < 10; ++trial) {
        BiForm T = oracle::random_biform(rng, 2, 2, 5, 5);
        // write the same form with every index pair randomly permuted and the
        // value sign-adjusted to compensate
        json entries = json::array();
        for (const auto& [key, value] : T.entries()) {
            std::vector<int> is = key.first.indices();
            std::vector<int> js = key.second.indices();
            Rational v = value;
            if (rng() % 2 == 0) {
                std::swap(is[0], is[1]);
                v = -v;
            }
            if (rng() % 2 == 0) {
                std::swap(js[0], js[1]);
                v = -v;
            }
            entries.push_back({{"I", is}, {"J", js}, {"value", rational_string(v)}});
        }
        json j = {{"kind", "biform"}, {"bidegree", {2, 2}}, {"dims", {5, 5}}, {"entries", entries}};
        TensorFile f = tensor_file_from_json(j);
        REQUIRE(f.form == T);
        // save(load(file)) is stable from then on
        json saved = tensor_file_to_json(f.form, "biform");
        REQUIRE(tensor_file_from_json(saved).form == f.form);
        REQUIRE(tensor_file_to_json(tensor_file_from_json(saved).form, "biform") == saved);
    }
}

TEST_CASE("decimal renderings agree with the exact rationals to 15 digits") {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 50; ++trial) {
        Rational r = oracle::random_rational(rng);
        while (r == 0) r = oracle::random_rational(rng);
        r += Rational(1, 1 + static_cast<long long>(rng() % 97));
        for (int pi_power : {0, 2, 4}) {
            Density d{r, pi_power};
            json j = density_json(d);
            double rendered = std::stod(j.at("decimal").get<std::string>());
            double expected = static_cast<double>(r) / std::pow(2 * std::acos(-1.0), pi_power);
            REQUIRE(rendered == Catch::Approx(expected).epsilon(1e-13));
        }
    }
}

TEST_CASE("volume strings parse as rational times a pi power") {
    PiValue v = parse_pi_volume("8/3*pi^2");
    CHECK(v.factor == Rational(8, 3));
    CHECK(v.pi_exponent == 2);
    CHECK(parse_pi_volume("2*pi").pi_exponent == 1);
    CHECK(parse_pi_volume("5").pi_exponent == 0);
    CHECK(parse_pi_volume("pi^4").factor == 1);
    CHECK(parse_pi_volume(" 8/3 * pi^2 ").factor == Rational(8, 3));
    CHECK_THROWS_AS(parse_pi_volume("8/3*tau"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pi_volume(""), std::invalid_argument);
}

TEST_CASE("integration cancels the normalization for the round sphere") {
    auto C = constant_curvature(4, 1);
    Density e = euler_density_pfaffian(C.bundle);
    PiValue chi = integrate_density(e, parse_pi_volume("8/3*pi^2"));
    CHECK(chi.factor == 2);
    CHECK(chi.pi_exponent == 0);
    CHECK(pi_value_decimal(chi.factor, chi.pi_exponent) == "2");

    Density p = pontryagin_density_sym(C.bundle);
    PiValue pv = integrate_density(p, parse_pi_volume("8/3*pi^2"));
    CHECK(pv.factor == 0);
}

TEST_CASE("thorpe report serializes with exact and decimal fields") {
    auto C = constant_curvature(4, 1);
    json j = thorpe_report_json(thorpe_report(C.bundle));
    CHECK(j.at("euler").at("coefficient") == "3");
    CHECK(j.at("euler").at("pi_power") == 2);
    CHECK(j.at("pontryagin").at("coefficient") == "0");
    CHECK(j.at("vanish_minus_plus") == true);
    CHECK(j.at("ineq_abs_holds") == true);
    std::string dec = j.at("euler").at("decimal").get<std::string>();
    CHECK(dec.substr(0, 6) == "0.0759");
}
