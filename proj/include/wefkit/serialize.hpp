#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "wefkit/bounds.hpp"
#include "wefkit/ensemble.hpp"
#include "wefkit/wef.hpp"

namespace wefkit {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

}  // namespace detail

/// {"N":..,"w_max":..,"terms":[{"i1":..,"i2":..,"p":..,"count":"<decimal>"},...]}
/// Rate-1/2 tables use keys "i","p". Counts are decimal strings so arbitrarily large
/// coefficients survive the round trip. Terms are emitted in lexicographic exponent order.
inline Json wef_table_to_json(const WefTable& table) {
    Json j;
    j["N"] = table.block_sections;
    j["w_max"] = table.w_max;
    Json terms = Json::array();
    for (const auto& [key, coeff] : table.coefficients) {
        const auto e = unpack_exponents(key);
        Json term;
        if (table.arity == 3) {
            term["i1"] = e[0];
            term["i2"] = e[1];
            term["p"] = e[2];
        } else {
            term["i"] = e[0];
            term["p"] = e[1];
        }
        term["count"] = coeff.get_str();
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline WefTable wef_table_from_json(const Json& j) {
    WefTable t;
    t.block_sections = j.at("N").get<int>();
    t.w_max = j.at("w_max").get<int>();
    t.arity = 0;
    for (const auto& term : j.at("terms")) {
        unsigned e0 = 0, e1 = 0, e2 = 0;
        if (term.contains("i1")) {
            t.arity = 3;
            e0 = term.at("i1").get<unsigned>();
            e1 = term.at("i2").get<unsigned>();
            e2 = term.at("p").get<unsigned>();
        } else {
            t.arity = 2;
            e0 = term.at("i").get<unsigned>();
            e1 = term.at("p").get<unsigned>();
        }
        t.coefficients.emplace(pack_exponents(e0, e1, e2),
                               mpz_class(term.at("count").get<std::string>()));
    }
    return t;
}

/// Ensemble coefficients ship as exact rationals {"num":..,"den":..} in decimal strings.
inline Json ensemble_to_json(const EnsembleWef& e) {
    Json j;
    j["kind"] = ensemble_kind_name(e.kind);
    j["N"] = e.N;
    j["k"] = e.k;
    j["n"] = e.n;
    j["w_max"] = e.w_max;
    j["num_codes"] = e.num_codes.get_str();
    Json terms = Json::array();
    for (const auto& [key, coeff] : e.coefficients) {
        const auto ex = unpack_exponents(key);
        Json term;
        term["i"] = ex[0];
        term["p"] = ex[1];
        term["num"] = coeff.get_num().get_str();
        term["den"] = coeff.get_den().get_str();
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

/// CSV with header "ebno_db,ber_bound,fer_bound"; an expurgated run appends the
/// "exp_ber_bound" column.
inline std::string curve_to_csv(const BoundCurve& curve) {
    std::string out = "ebno_db,ber_bound,fer_bound";
    const bool expurgated = !curve.expurgated_ber.empty();
    if (expurgated) out += ",exp_ber_bound";
    out += "\n";
    for (std::size_t idx = 0; idx < curve.snr_grid_db.size(); ++idx) {
        out += detail::format_double(curve.snr_grid_db[idx]);
        out += ",";
        out += detail::format_double(curve.ber[idx]);
        out += ",";
        out += detail::format_double(curve.fer[idx]);
        if (expurgated) {
            out += ",";
            out += detail::format_double(curve.expurgated_ber[idx]);
        }
        out += "\n";
    }
    return out;
}

/// Metadata describing how a curve was produced, carried into the JSON output.
struct CurveMeta {
    std::string kind;
    std::string generator;
    int N = 0;
};

inline Json curve_to_json(const BoundCurve& curve, const CurveMeta& meta) {
    Json j;
    j["kind"] = meta.kind;
    j["generator"] = meta.generator;
    j["N"] = meta.N;
    j["w_max"] = curve.truncation_weight;
    j["gv_distance"] = curve.gv;
    j["below_gv_warning"] = curve.below_gv_warning;
    if (curve.expurgation) {
        j["alpha"] = curve.expurgation->alpha;
        j["d_hat"] = curve.expurgation->d_hat;
        j["d_hat_lower_bound_only"] = curve.expurgation->lower_bound_only;
    }
    j["ebno_db"] = curve.snr_grid_db;
    j["ber_bound"] = curve.ber;
    j["fer_bound"] = curve.fer;
    if (!curve.expurgated_ber.empty()) j["exp_ber_bound"] = curve.expurgated_ber;
    return j;
}

}  // namespace wefkit
