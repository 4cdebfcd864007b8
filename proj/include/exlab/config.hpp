#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "exlab/arith.hpp"
#include "exlab/curve.hpp"
#include "exlab/frac.hpp"
#include "exlab/parallel.hpp"

namespace exlab {

// One experiment run, as assembled from a config file and/or CLI flags.
struct ExperimentConfig {
    std::string experiment;           // sieve|ap|classes|joint|jointzero|extremal|satotate|
                                      // residues|balog|landau|meanvalue|envelope|verify
    std::string curve_label;          // built-in label or "a1,a2,a3,a4,a6"
    u64 x = 1000;
    std::vector<u64> ell;
    double omega = 1.0;
    double alpha = 1.0;
    std::optional<std::pair<i64, i64>> alpha_rational; // exact override, e.g. "2/5"
    double theta = 0.5;
    double lambda = 0.5;
    double delta1 = 0.0;
    double delta2 = 1.0;
    unsigned bins = 40;
    unsigned threads = 0; // 0 = hardware concurrency
    std::string cache_path;
    std::string out_path;
    std::string csv_path;
    i64 trace_t = 0;       // Lang-Trotter target trace
    std::string sign = "+"; // extremal sign
    std::string theorem;    // envelope id
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(std::string v) {
    // accepts "3,5,7" and "[3, 5, 7]"
    v = trim(v);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') throw std::invalid_argument("config: unterminated list " + v);
        v = v.substr(1, v.size() - 2);
    }
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline double parse_real(const std::string& key, const std::string& v) {
    // accepts decimals and fractions "a/b"
    auto slash = v.find('/');
    try {
        if (slash != std::string::npos) {
            double n = std::stod(trim(v.substr(0, slash)));
            double d = std::stod(trim(v.substr(slash + 1)));
            if (d == 0) throw std::invalid_argument("zero denominator");
            return n / d;
        }
        std::size_t pos = 0;
        double r = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: field '" + key + "': cannot parse real value '" + v + "'");
    }
}

inline u64 parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        if (v.find('-') != std::string::npos) throw std::invalid_argument("negative");
        // allow scientific shorthand like 1e6 for whole numbers
        if (v.find_first_of("eE.") != std::string::npos) {
            double d = std::stod(v, &pos);
            if (pos != v.size() || d < 0 || d != std::floor(d)) throw std::invalid_argument("not integral");
            return static_cast<u64>(d);
        }
        unsigned long long r = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: field '" + key + "': cannot parse nonnegative integer '" +
                                    v + "'");
    }
}

inline std::optional<std::pair<i64, i64>> parse_rational(const std::string& v) {
    auto slash = v.find('/');
    if (slash == std::string::npos) return std::nullopt;
    try {
        i64 n = std::stoll(trim(v.substr(0, slash)));
        i64 d = std::stoll(trim(v.substr(slash + 1)));
        if (d == 0) return std::nullopt;
        return std::make_pair(n, d);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

} // namespace detail

inline void apply_config_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
    using detail::parse_real;
    using detail::parse_u64;
    if (key == "experiment") c.experiment = value;
    else if (key == "curve") c.curve_label = value;
    else if (key == "x") c.x = parse_u64(key, value);
    else if (key == "ell") {
        c.ell.clear();
        for (const auto& item : detail::split_list(value)) c.ell.push_back(parse_u64(key, item));
    } else if (key == "omega") c.omega = parse_real(key, value);
    else if (key == "alpha") {
        c.alpha = parse_real(key, value);
        c.alpha_rational = detail::parse_rational(value);
    } else if (key == "theta") c.theta = parse_real(key, value);
    else if (key == "lambda") c.lambda = parse_real(key, value);
    else if (key == "delta1") c.delta1 = parse_real(key, value);
    else if (key == "delta2") c.delta2 = parse_real(key, value);
    else if (key == "bins") c.bins = static_cast<unsigned>(parse_u64(key, value));
    else if (key == "threads") c.threads = static_cast<unsigned>(parse_u64(key, value));
    else if (key == "cache") c.cache_path = value;
    else if (key == "out") c.out_path = value;
    else if (key == "csv") c.csv_path = value;
    else if (key == "t") {
        try {
            c.trace_t = static_cast<i64>(std::stoll(value));
        } catch (const std::exception&) {
            throw std::invalid_argument("config: field 't': cannot parse integer '" + value + "'");
        }
    }
    else if (key == "sign") c.sign = value;
    else if (key == "theorem") c.theorem = value;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

// simple "key = value" document with optional [section] headers (sections are
// grouping only) and #/; comments
inline ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig c;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config: malformed section at line " + std::to_string(lineno));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " + std::to_string(lineno));
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (!value.empty() && value.front() == '"' && value.back() == '"' && value.size() >= 2)
            value = value.substr(1, value.size() - 2);
        apply_config_key(c, key, value);
    }
    return c;
}

inline CurveQ resolve_curve(const std::string& label_or_coeffs) {
    if (label_or_coeffs.empty()) throw std::invalid_argument("config: field 'curve' is required");
    if (const CurveQ* c = find_builtin_curve(label_or_coeffs)) return *c;
    std::string t = label_or_coeffs;
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']') throw std::invalid_argument("config: field 'curve': unterminated list");
        t = t.substr(1, t.size() - 2);
    }
    auto parts = detail::split_list(t);
    if (parts.size() != 5)
        throw std::invalid_argument(
            "config: field 'curve': expected a built-in label or 5 coefficients a1,a2,a3,a4,a6");
    i64 a[5];
    for (int i = 0; i < 5; ++i) {
        try {
            a[i] = std::stoll(parts[i]);
        } catch (const std::exception&) {
            throw std::invalid_argument("config: field 'curve': bad coefficient '" + parts[i] + "'");
        }
    }
    return make_curve(a[0], a[1], a[2], a[3], a[4]); // throws "singular model" when disc = 0
}

inline void validate_config(const ExperimentConfig& c) {
    static const std::vector<std::string> kExperiments = {
        "sieve", "ap", "classes", "joint", "jointzero", "extremal", "satotate",
        "residues", "balog", "landau", "meanvalue", "envelope", "verify"};
    if (std::find(kExperiments.begin(), kExperiments.end(), c.experiment) == kExperiments.end())
        throw std::invalid_argument("config: field 'experiment': unknown experiment '" + c.experiment +
                                    "'");
    if (!(c.delta1 >= 0 && c.delta1 < c.delta2 && c.delta2 <= 1))
        throw std::invalid_argument("config: empty window: need 0 <= delta1 < delta2 <= 1");
    for (u64 l : c.ell)
        if (l < 3 || (l & 1) == 0 || !is_prime_u64(l))
            throw std::invalid_argument("config: field 'ell': " + std::to_string(l) +
                                        " — ell must be an odd prime");
    if (!(c.omega >= 1.0)) throw std::invalid_argument("config: field 'omega': must be >= 1");
    if (!(c.alpha > 0.0)) throw std::invalid_argument("config: field 'alpha': must be positive");
    if (!(c.theta >= 0.0 && c.theta <= 1.0))
        throw std::invalid_argument("config: field 'theta': must lie in [0, 1]");
    if (c.bins < 1) throw std::invalid_argument("config: field 'bins': must be >= 1");
    if (c.sign != "+" && c.sign != "-")
        throw std::invalid_argument("config: field 'sign': must be '+' or '-'");
}

inline unsigned effective_threads(const ExperimentConfig& c) {
    return c.threads ? c.threads : default_threads();
}

inline AlphaParam config_alpha(const ExperimentConfig& c) {
    if (c.alpha_rational) return alpha_param(c.alpha_rational->first, c.alpha_rational->second);
    return alpha_param(c.alpha);
}

} // namespace exlab
