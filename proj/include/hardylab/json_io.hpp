#pragma once

// JSON schema for domains, analytic maps and Beltrami fields, plus the grid
// field file reader. Parse errors are ConfigError with the JSON path of the
// offending field.

#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardylab/common.hpp"
#include "hardylab/domain.hpp"
#include "hardylab/hardy_norm.hpp"
#include "hardylab/modulus_bounds.hpp"

namespace hardylab {

using json = nlohmann::json;

/// printf-style double with `digits` significant digits; "inf"/"-inf"/"nan"
/// for non-finite values.
inline std::string format_double(double v, int digits = 17) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

/// JSON value for a double: a number when finite, otherwise "inf"/"-inf"/"nan".
inline json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

inline json json_complex(Complex z) { return json::array({json_number(z.real()), json_number(z.imag())}); }

namespace detail {

inline std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += ", ";
        out += s;
    }
    return out;
}

inline void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(path + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ConfigError(path + ": unknown key \"" + it.key() + "\"");
        }
    }
}

inline const json& require_key(const json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(path + ": missing required field \"" + key + "\"");
    return *it;
}

inline std::string sub(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

}  // namespace detail

/// A real number, or one of the strings "inf", "-inf".
inline double parse_number(const json& v, const std::string& path) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw ConfigError(path + ": expected a number");
}

inline std::uint64_t parse_count(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
    }
    throw ConfigError(path + ": expected a non-negative integer");
}

/// [re, im] or a plain real number.
inline Complex parse_complex(const json& v, const std::string& path) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2) {
        return {parse_number(v[0], path + "[0]"), parse_number(v[1], path + "[1]")};
    }
    throw ConfigError(path + ": expected [re, im] or a number");
}

inline std::vector<double> parse_number_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path + ": expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

// ---------------------------------------------------------------------------
// Domains

inline const std::vector<std::string>& domain_type_names() {
    static const std::vector<std::string> names{"sector", "spiral", "half_plane", "strip", "disk_complement",
                                                "disk", "radial_profile", "union", "rotated", "translated"};
    return names;
}

inline DomainSpec parse_domain(const json& j, const std::string& path = "domain") {
    using namespace detail;
    if (!j.is_object()) throw ConfigError(path + ": expected a domain object");
    const json& tj = require_key(j, path, "type");
    if (!tj.is_string()) throw ConfigError(sub(path, "type") + ": expected a string");
    const std::string type = tj.get<std::string>();
    auto num = [&](const char* key) { return parse_number(require_key(j, path, key), sub(path, key)); };
    try {
        if (type == "sector") {
            check_keys(j, path, {"type", "alpha"});
            return DomainSpec::sector(num("alpha"));
        }
        if (type == "spiral") {
            check_keys(j, path, {"type", "beta", "alpha"});
            return DomainSpec::spiral(num("beta"), num("alpha"));
        }
        if (type == "half_plane") {
            check_keys(j, path, {"type"});
            return DomainSpec::half_plane();
        }
        if (type == "strip") {
            check_keys(j, path, {"type", "width"});
            return DomainSpec::strip(num("width"));
        }
        if (type == "disk_complement") {
            check_keys(j, path, {"type", "radius"});
            return DomainSpec::disk_complement(num("radius"));
        }
        if (type == "disk") {
            check_keys(j, path, {"type", "radius"});
            return DomainSpec::disk(num("radius"));
        }
        if (type == "radial_profile") {
            check_keys(j, path, {"type", "r", "half_width"});
            return DomainSpec::radial_profile(parse_number_list(require_key(j, path, "r"), sub(path, "r")),
                                              parse_number_list(require_key(j, path, "half_width"),
                                                                sub(path, "half_width")));
        }
        if (type == "rotated") {
            check_keys(j, path, {"type", "theta", "inner"});
            return DomainSpec::rotated(num("theta"), parse_domain(require_key(j, path, "inner"), sub(path, "inner")));
        }
        if (type == "translated") {
            check_keys(j, path, {"type", "offset", "inner"});
            return DomainSpec::translated(parse_complex(require_key(j, path, "offset"), sub(path, "offset")),
                                          parse_domain(require_key(j, path, "inner"), sub(path, "inner")));
        }
        if (type == "union") {
            check_keys(j, path, {"type", "parts"});
            const json& parts = require_key(j, path, "parts");
            if (!parts.is_array()) throw ConfigError(sub(path, "parts") + ": expected an array");
            std::vector<DomainSpec> out;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                out.push_back(parse_domain(parts[i], sub(path, "parts") + "[" + std::to_string(i) + "]"));
            }
            return DomainSpec::union_of(std::move(out));
        }
    } catch (const DomainError& e) {
        throw ConfigError(path + ": " + e.what());
    }
    throw ConfigError(path + ": unknown domain type \"" + type + "\" (known: " + detail::join(domain_type_names()) +
                      ")");
}

inline json domain_to_json(const DomainSpec& domain) {
    return std::visit(
        [](const auto& d) -> json {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Sector>) {
                return {{"type", "sector"}, {"alpha", d.alpha}};
            } else if constexpr (std::is_same_v<T, Spiral>) {
                return {{"type", "spiral"}, {"beta", d.beta}, {"alpha", d.alpha}};
            } else if constexpr (std::is_same_v<T, HalfPlane>) {
                return {{"type", "half_plane"}};
            } else if constexpr (std::is_same_v<T, Strip>) {
                return {{"type", "strip"}, {"width", d.width}};
            } else if constexpr (std::is_same_v<T, DiskComplement>) {
                return {{"type", "disk_complement"}, {"radius", d.radius}};
            } else if constexpr (std::is_same_v<T, Disk>) {
                return {{"type", "disk"}, {"radius", d.radius}};
            } else if constexpr (std::is_same_v<T, RadialProfile>) {
                json hw = json::array();
                for (double v : d.half_widths()) hw.push_back(json_number(v));
                return {{"type", "radial_profile"}, {"r", d.radii()}, {"half_width", hw}};
            } else if constexpr (std::is_same_v<T, Rotated>) {
                return {{"type", "rotated"}, {"theta", d.theta}, {"inner", domain_to_json(*d.inner)}};
            } else if constexpr (std::is_same_v<T, Translated>) {
                return {{"type", "translated"}, {"offset", json_complex(d.offset)}, {"inner", domain_to_json(*d.inner)}};
            } else {
                json parts = json::array();
                for (const auto& p : d.parts) parts.push_back(domain_to_json(p));
                return {{"type", "union"}, {"parts", parts}};
            }
        },
        domain.variant());
}

// ---------------------------------------------------------------------------
// Analytic maps

inline AnalyticMapSpec parse_map(const json& j, const std::string& path = "map") {
    using namespace detail;
    if (j.is_string()) return parse_map(json{{"type", j}}, path);
    if (!j.is_object()) throw ConfigError(path + ": expected a map object");
    const json& tj = require_key(j, path, "type");
    if (!tj.is_string()) throw ConfigError(sub(path, "type") + ": expected a string");
    const std::string type = tj.get<std::string>();
    AnalyticMapSpec f;
    if (type == "cayley") {
        check_keys(j, path, {"type"});
        f = CayleyMap{};
    } else if (type == "power_of_cayley") {
        check_keys(j, path, {"type", "lambda"});
        f = PowerOfCayley{parse_complex(require_key(j, path, "lambda"), sub(path, "lambda"))};
    } else if (type == "monomial") {
        check_keys(j, path, {"type", "n"});
        const json& n = require_key(j, path, "n");
        if (!n.is_number_integer()) throw ConfigError(sub(path, "n") + ": expected an integer");
        f = Monomial{n.get<int>()};
    } else if (type == "constant") {
        check_keys(j, path, {"type", "c"});
        f = ConstantMap{parse_complex(require_key(j, path, "c"), sub(path, "c"))};
    } else if (type == "reciprocal_one_minus_z") {
        check_keys(j, path, {"type"});
        f = ReciprocalOneMinusZ{};
    } else {
        throw ConfigError(path + ": unknown map type \"" + type +
                          "\" (known: cayley, power_of_cayley, monomial, constant, reciprocal_one_minus_z)");
    }
    try {
        validate_map(f);
    } catch (const DomainError& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return f;
}

inline json map_to_json(const AnalyticMapSpec& f) {
    return std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PowerOfCayley>) {
                return {{"type", "power_of_cayley"}, {"lambda", json_complex(m.lambda)}};
            } else if constexpr (std::is_same_v<T, Monomial>) {
                return {{"type", "monomial"}, {"n", m.n}};
            } else if constexpr (std::is_same_v<T, ConstantMap>) {
                return {{"type", "constant"}, {"c", json_complex(m.c)}};
            } else if constexpr (std::is_same_v<T, CayleyMap>) {
                return {{"type", "cayley"}};
            } else {
                return {{"type", "reciprocal_one_minus_z"}};
            }
        },
        f);
}

// ---------------------------------------------------------------------------
// Grid field files

/// Line 1: JSON header {"n_theta":..,"n_t":..,"r":..,"R":..}. Every following
/// non-empty line: "re,im", row-major in theta then t.
inline GridField read_grid_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("grid_file: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("grid_file: " + path + " is empty");
    json header;
    try {
        header = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ConfigError("grid_file: " + path + ": malformed header: " + e.what());
    }
    detail::check_keys(header, "grid_file header", {"n_theta", "n_t", "r", "R"});
    const auto n_theta = parse_count(detail::require_key(header, "grid_file header", "n_theta"), "grid_file.n_theta");
    const auto n_t = parse_count(detail::require_key(header, "grid_file header", "n_t"), "grid_file.n_t");
    const double r = parse_number(detail::require_key(header, "grid_file header", "r"), "grid_file.r");
    const double R = parse_number(detail::require_key(header, "grid_file header", "R"), "grid_file.R");
    std::vector<Complex> values;
    values.reserve(n_theta * n_t);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        double re = 0.0, im = 0.0;
        char tail = 0;
        if (std::sscanf(line.c_str(), " %lf , %lf %c", &re, &im, &tail) != 2) {
            throw ConfigError("grid_file: " + path + ":" + std::to_string(lineno) + ": expected \"re,im\"");
        }
        values.emplace_back(re, im);
    }
    try {
        return GridField(n_theta, n_t, r, R, std::move(values));
    } catch (const DomainError& e) {
        throw ConfigError("grid_file: " + path + ": " + e.what());
    }
}

inline void write_grid_field(const GridField& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << json{{"n_theta", g.n_theta()}, {"n_t", g.n_t()}, {"r", g.r()}, {"R", g.R()}}.dump() << '\n';
    for (const Complex& v : g.values()) out << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
}

}  // namespace hardylab
