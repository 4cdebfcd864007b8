#pragma once

#include <string>

#include <json.hpp>

#include "exlab/analytic.hpp"
#include "exlab/curve.hpp"
#include "exlab/experiments.hpp"

namespace exlab {

using json = nlohmann::json;

inline json to_json(const SideCondition& s) {
    return json{{"name", s.name}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"satisfied", s.satisfied}};
}

inline json to_json(const CountReport& r) {
    json j{
        {"statement_id", r.statement_id},
        {"window", {{"lo", r.window_lo}, {"hi", r.window_hi}}},
        {"observed", r.observed},
        {"main_term", r.main_term},
        {"envelope", r.envelope},
        {"sigma_stat", r.sigma_stat},
        {"z", std::isfinite(r.z) ? json(r.z) : json()},
    };
    json sc = json::array();
    for (const auto& s : r.side_conditions) sc.push_back(to_json(s));
    j["side_conditions"] = sc;
    j["extras"] = r.extras;
    j["bad_primes_in_range"] = r.bad_primes_in_range;
    return j;
}

inline CountReport count_report_from_json(const json& j) {
    CountReport r;
    r.statement_id = j.at("statement_id").get<std::string>();
    r.window_lo = j.at("window").at("lo").get<u64>();
    r.window_hi = j.at("window").at("hi").get<u64>();
    r.observed = j.at("observed").get<i64>();
    r.main_term = j.at("main_term").get<double>();
    r.envelope = j.at("envelope").get<double>();
    r.sigma_stat = j.at("sigma_stat").get<double>();
    r.z = j.at("z").is_null() ? std::numeric_limits<double>::quiet_NaN() : j.at("z").get<double>();
    for (const auto& s : j.at("side_conditions")) {
        SideCondition c;
        c.name = s.at("name").get<std::string>();
        c.lhs = s.at("lhs").get<double>();
        c.rhs = s.at("rhs").get<double>();
        c.satisfied = s.at("satisfied").get<bool>();
        r.side_conditions.push_back(c);
    }
    r.extras = j.at("extras").get<std::map<std::string, double>>();
    r.bad_primes_in_range = j.at("bad_primes_in_range").get<std::vector<u64>>();
    return r;
}

inline json to_json(const HistogramReport& h) {
    return json{
        {"statement_id", h.statement_id},
        {"bin_edges", h.bin_edges},
        {"observed_mass", h.observed_mass},
        {"reference_mass", h.reference_mass},
        {"samples", h.samples},
        {"ks", h.ks},
        {"chi2", h.chi2},
    };
}

inline json to_json(const BoundEnvelope& e) {
    json terms = json::object();
    for (const auto& [name, v] : e.terms) terms[name] = v;
    json sc = json::array();
    for (const auto& s : e.side_conditions) sc.push_back(to_json(s));
    return json{{"theorem", theorem_name(e.id)}, {"value", e.value}, {"terms", terms},
                {"side_conditions", sc}};
}

inline json curve_json(const CurveQ& e) {
    return json{
        {"label", e.label},
        {"coefficients", {e.a1, e.a2, e.a3, e.a4, e.a6}},
        {"bad_primes", e.bad_primes},
        {"declared_cm", e.declared_cm},
    };
}

} // namespace exlab
