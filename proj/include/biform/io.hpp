#pragma once

#include <biform/chern_weil.hpp>
#include <biform/curvature.hpp>
#include <biform/form.hpp>
#include <biform/verify.hpp>

#include <json.hpp>

#include <boost/math/constants/constants.hpp>

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace biform {

using json = nlohmann::json;

// In-memory image of a tensor file. For kind "curvature" the form is (2,2)
// and k is pinned by the base dimension.
struct TensorFile {
    std::string kind;  // "biform" or "curvature"
    BiForm form;
    int k = 0;

    BundleCurvature as_curvature() const {
        if (kind != "curvature")
            throw std::invalid_argument("TensorFile: not a curvature file");
        return {form.dim_first(), form.dim_second(), k, form};
    }
};

namespace detail {

inline Rational entry_value(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw std::invalid_argument("tensor file: entry value must be a rational string or integer");
}

inline std::vector<int> int_list(const json& v, const char* what) {
    if (!v.is_array()) throw std::invalid_argument(std::string("tensor file: ") + what + " must be a list");
    std::vector<int> out;
    for (const auto& e : v) {
        if (!e.is_number_integer())
            throw std::invalid_argument(std::string("tensor file: ") + what + " entries must be integers");
        out.push_back(e.get<int>());
    }
    return out;
}

}  // namespace detail

/// Parses a tensor file. Entries need not be canonical: index lists are
/// sorted with their permutation signs folded into the values, repeated
/// indices force the component to zero, and duplicates must agree exactly.
inline TensorFile tensor_file_from_json(const json& j) {
    for (const char* field : {"kind", "bidegree", "dims", "entries"})
        if (!j.contains(field))
            throw std::invalid_argument(std::string("tensor file: missing field '") + field + "'");
    TensorFile out{j.at("kind").get<std::string>(), BiForm(0, 0, 0, 0), 0};
    if (out.kind != "biform" && out.kind != "curvature")
        throw std::invalid_argument("tensor file: kind must be 'biform' or 'curvature'");
    std::vector<int> bidegree = detail::int_list(j.at("bidegree"), "bidegree");
    std::vector<int> dims = detail::int_list(j.at("dims"), "dims");
    if (bidegree.size() != 2 || dims.size() != 2)
        throw std::invalid_argument("tensor file: bidegree and dims must have two entries");

    std::map<BiForm::Key, Rational> folded;
    for (const auto& e : j.at("entries")) {
        std::vector<int> raw_i = detail::int_list(e.at("I"), "I");
        std::vector<int> raw_j = detail::int_list(e.at("J"), "J");
        if (static_cast<int>(raw_i.size()) != bidegree[0] ||
            static_cast<int>(raw_j.size()) != bidegree[1])
            throw std::invalid_argument("tensor file: entry index length does not match bidegree");
        SignedIndex I = canonicalize(raw_i, dims[0]);
        SignedIndex J = canonicalize(raw_j, dims[1]);
        Rational value = detail::entry_value(e.at("value"));
        if (I.sign == 0 || J.sign == 0) {
            if (value != 0)
                throw std::invalid_argument(
                    "tensor file: repeated index forces a zero component, got nonzero value");
            continue;
        }
        Rational v = Rational(I.sign * J.sign) * value;
        auto [it, inserted] = folded.try_emplace({I.index, J.index}, v);
        if (!inserted && it->second != v)
            throw std::invalid_argument("tensor file: inconsistent duplicate entry for key " +
                                        I.index.to_string() + J.index.to_string());
    }
    BiForm form(bidegree[0], bidegree[1], dims[0], dims[1]);
    for (const auto& [key, value] : folded) form.set(key.first, key.second, value);

    if (out.kind == "curvature") {
        if (bidegree[0] != 2 || bidegree[1] != 2)
            throw std::invalid_argument("tensor file: curvature files must have bidegree [2,2]");
        if (dims[0] % 4 != 0)
            throw std::invalid_argument("tensor file: curvature base dimension must be a multiple of 4");
        out.k = dims[0] / 4;
    }
    out.form = std::move(form);
    return out;
}

inline json tensor_file_to_json(const BiForm& form, const std::string& kind) {
    json entries = json::array();
    for (const auto& [key, value] : form.entries())
        entries.push_back({{"I", key.first.indices()},
                           {"J", key.second.indices()},
                           {"value", rational_string(value)}});
    return {{"kind", kind},
            {"bidegree", {form.deg_first(), form.deg_second()}},
            {"dims", {form.dim_first(), form.dim_second()}},
            {"entries", entries}};
}

inline TensorFile load_tensor_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open tensor file: " + path);
    json j;
    try {
        in >> j;
        return tensor_file_from_json(j);
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed tensor file " + path + ": " + e.what());
    }
}

inline void save_tensor_file(const std::string& path, const BiForm& form, const std::string& kind) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write tensor file: " + path);
    out << tensor_file_to_json(form, kind).dump(2) << "\n";
    if (!out) throw std::invalid_argument("write failed: " + path);
}

// A volume of the form rational * pi^m, e.g. "8/3*pi^2".
struct PiValue {
    Rational factor;
    int pi_exponent = 0;
};

inline PiValue parse_pi_volume(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("volume: empty string");
    PiValue out{1, 0};
    std::size_t star = s.find('*');
    std::string head = (star == std::string::npos) ? s : s.substr(0, star);
    std::string tail = (star == std::string::npos) ? "" : s.substr(star + 1);
    if (head.rfind("pi", 0) == 0 && tail.empty()) {
        tail = head;
        head = "1";
    }
    out.factor = parse_rational(head);
    if (!tail.empty()) {
        if (tail.rfind("pi", 0) != 0) throw std::invalid_argument("volume: expected pi factor in '" + text + "'");
        std::string exp = tail.substr(2);
        if (exp.empty()) {
            out.pi_exponent = 1;
        } else {
            if (exp[0] != '^') throw std::invalid_argument("volume: expected '^' in '" + text + "'");
            out.pi_exponent = static_cast<int>(parse_rational(exp.substr(1)).convert_to<long long>());
        }
    }
    return out;
}

/// Decimal value of rational * pi^e with the given significant digits.
inline std::string pi_value_decimal(const Rational& factor, int pi_exponent,
                                    int significant_digits = 15) {
    using detail::DecimalFloat;
    DecimalFloat v = detail::to_float(factor);
    DecimalFloat pi = boost::math::constants::pi<DecimalFloat>();
    for (int i = 0; i < pi_exponent; ++i) v *= pi;
    for (int i = 0; i > pi_exponent; --i) v /= pi;
    return detail::format_float(v, significant_digits);
}

inline json pi_value_json(const PiValue& v) {
    return {{"rational", rational_string(v.factor)},
            {"pi_exponent", v.pi_exponent},
            {"decimal", pi_value_decimal(v.factor, v.pi_exponent)}};
}

/// Density as rational * (2 pi)^{-pi_power}: decimal folds in the 2^{-pi_power}.
inline json density_json(const Density& d) {
    return {{"coefficient", rational_string(d.coefficient)},
            {"pi_power", d.pi_power},
            {"decimal",
             pi_value_decimal(d.coefficient / Rational(int_pow(2, d.pi_power)), -d.pi_power)}};
}

/// The density integrated against a constant volume rational * pi^m.
inline PiValue integrate_density(const Density& d, const PiValue& volume) {
    return {d.coefficient * volume.factor / Rational(int_pow(2, d.pi_power)),
            volume.pi_exponent - d.pi_power};
}

inline json rational_json(const Rational& r) {
    return {{"exact", rational_string(r)}, {"decimal", decimal_string(r)}};
}

inline json thorpe_report_json(const ThorpeReport& rep) {
    return {{"k", rep.k},
            {"norms",
             {{"plus_plus", rational_json(rep.norms.plus_plus)},
              {"plus_minus", rational_json(rep.norms.plus_minus)},
              {"minus_plus", rational_json(rep.norms.minus_plus)},
              {"minus_minus", rational_json(rep.norms.minus_minus)}}},
            {"euler", density_json(rep.euler)},
            {"pontryagin", density_json(rep.pontryagin)},
            {"combo_plus", density_json(rep.combo_plus)},
            {"combo_minus", density_json(rep.combo_minus)},
            {"vanish_minus_plus", rep.vanish_minus_plus},
            {"vanish_plus_minus", rep.vanish_plus_minus},
            {"ineq_plus_holds", rep.ineq_plus_holds},
            {"ineq_minus_holds", rep.ineq_minus_holds},
            {"ineq_abs_holds", rep.ineq_abs_holds}};
}

inline json witness_json(const FailureWitness& w) {
    return {{"I", w.first.indices()},
            {"J", w.second.indices()},
            {"lhs", rational_string(w.lhs)},
            {"rhs", rational_string(w.rhs)}};
}

}  // namespace biform
