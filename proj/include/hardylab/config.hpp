#pragma once

// Run configuration for the hardylab command line: a flat JSON object keyed by
// "command", validated per command before anything is computed.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hardylab/hardy_estimator.hpp"
#include "hardylab/json_io.hpp"

namespace hardylab {

enum class Command { EstimateH, Measure, Hansen, Symmetrize, Hnorm, Modulus, Verify };
enum class OutputFormat { Json, Csv, Both };
enum class FieldKind { Zero, Fold, Grid };

inline const std::vector<std::pair<Command, std::string>>& command_names() {
    static const std::vector<std::pair<Command, std::string>> names{
        {Command::EstimateH, "estimate-h"}, {Command::Measure, "measure"},   {Command::Hansen, "hansen"},
        {Command::Symmetrize, "symmetrize"}, {Command::Hnorm, "hnorm"},      {Command::Modulus, "modulus"},
        {Command::Verify, "verify"}};
    return names;
}

inline std::string to_string(Command c) {
    for (const auto& [cmd, name] : command_names()) {
        if (cmd == c) return name;
    }
    return "?";
}

inline std::optional<Command> parse_command(const std::string& s) {
    for (const auto& [cmd, name] : command_names()) {
        if (name == s) return cmd;
    }
    return std::nullopt;
}

inline std::vector<double> default_t_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 10; ++k) g.push_back(std::ldexp(1.0, k));
    return g;
}

/// 1e-2 .. 1e4, 50 points per decade.
inline std::vector<double> default_r_grid() {
    std::vector<double> g;
    for (int k = -100; k <= 200; ++k) g.push_back(std::pow(10.0, k / 50.0));
    return g;
}

struct RunConfig {
    Command command = Command::Verify;
    std::string output_dir = "hardylab_out";
    OutputFormat format = OutputFormat::Both;

    std::optional<DomainSpec> domain;
    std::optional<Complex> z0;
    WalkConfig walk;
    RadiusLadder ladder;
    std::optional<DomainMetadata> bounds;

    double R = 1.0;  // measure: circle radius (required); modulus: outer radius

    std::vector<double> t_grid = default_t_grid();
    std::vector<double> r_grid = default_r_grid();
    std::optional<Complex> base_point;

    std::optional<AnalyticMapSpec> map;
    double p_lo = 0.25;
    double p_hi = 4.0;
    double tol = 0.05;

    FieldKind field = FieldKind::Zero;
    Complex kappa{0.0, 0.0};
    std::string grid_file;
    double r = 0.1;
    std::uint64_t n_theta = 512;
    std::uint64_t n_t = 256;
};

namespace detail {

inline const std::set<std::string>& walk_keys() {
    static const std::set<std::string> k{"n_walkers", "eps_rel", "max_steps", "seed"};
    return k;
}

inline std::set<std::string> allowed_keys(Command c) {
    std::set<std::string> k{"command", "output_dir", "format"};
    auto add = [&k](std::initializer_list<const char*> more) { k.insert(more.begin(), more.end()); };
    switch (c) {
        case Command::EstimateH:
            add({"domain", "z0", "ladder", "bounds"});
            k.insert(walk_keys().begin(), walk_keys().end());
            break;
        case Command::Measure:
            add({"domain", "z0", "R"});
            k.insert(walk_keys().begin(), walk_keys().end());
            break;
        case Command::Hansen: add({"domain", "t_grid"}); break;
        case Command::Symmetrize: add({"domain", "r_grid", "base_point"}); break;
        case Command::Hnorm: add({"map", "p_lo", "p_hi", "tol"}); break;
        case Command::Modulus: add({"field", "kappa", "grid_file", "r", "R", "n_theta", "n_t"}); break;
        case Command::Verify: k.insert(walk_keys().begin(), walk_keys().end()); break;
    }
    return k;
}

inline bool opt_bool(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) return false;
    if (!it->is_boolean()) throw ConfigError(sub(path, key) + ": expected true or false");
    return it->get<bool>();
}

inline std::optional<double> opt_number(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return parse_number(*it, sub(path, key));
}

inline DomainMetadata parse_metadata(const json& j) {
    check_keys(j, "bounds",
               {"bounded", "complement_bounded", "simply_connected", "convex", "quasidisk_K", "superset_h", "subset_h"});
    DomainMetadata m;
    m.bounded = opt_bool(j, "bounded", "bounds");
    m.complement_bounded = opt_bool(j, "complement_bounded", "bounds");
    m.simply_connected = opt_bool(j, "simply_connected", "bounds");
    m.convex = opt_bool(j, "convex", "bounds");
    m.quasidisk_K = opt_number(j, "quasidisk_K", "bounds");
    m.superset_h = opt_number(j, "superset_h", "bounds");
    m.subset_h = opt_number(j, "subset_h", "bounds");
    return m;
}

inline json metadata_to_json(const DomainMetadata& m) {
    json j{{"bounded", m.bounded},
           {"complement_bounded", m.complement_bounded},
           {"simply_connected", m.simply_connected},
           {"convex", m.convex}};
    if (m.quasidisk_K) j["quasidisk_K"] = json_number(*m.quasidisk_K);
    if (m.superset_h) j["superset_h"] = json_number(*m.superset_h);
    if (m.subset_h) j["subset_h"] = json_number(*m.subset_h);
    return j;
}

inline json number_list(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(json_number(x));
    return a;
}

}  // namespace detail

/// Validated RunConfig from a parsed JSON object. Errors name the field.
inline RunConfig parse_config(const json& j) {
    using namespace detail;
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    const json& cj = require_key(j, "config", "command");
    if (!cj.is_string()) throw ConfigError("command: expected a string");
    const auto cmd = parse_command(cj.get<std::string>());
    if (!cmd) {
        std::vector<std::string> names;
        for (const auto& p : command_names()) names.push_back(p.second);
        throw ConfigError("command: unknown command \"" + cj.get<std::string>() + "\" (known: " + join(names) + ")");
    }
    RunConfig c;
    c.command = *cmd;
    check_keys(j, "config", allowed_keys(c.command));

    if (auto it = j.find("output_dir"); it != j.end()) {
        if (!it->is_string() || it->get<std::string>().empty()) throw ConfigError("output_dir: expected a path");
        c.output_dir = it->get<std::string>();
    }
    if (auto it = j.find("format"); it != j.end()) {
        const std::string f = it->is_string() ? it->get<std::string>() : "";
        if (f == "json") c.format = OutputFormat::Json;
        else if (f == "csv") c.format = OutputFormat::Csv;
        else if (f == "both") c.format = OutputFormat::Both;
        else throw ConfigError("format: expected \"json\", \"csv\" or \"both\"");
    }

    if (auto it = j.find("n_walkers"); it != j.end()) c.walk.n_walkers = parse_count(*it, "n_walkers");
    if (auto it = j.find("max_steps"); it != j.end()) c.walk.max_steps = parse_count(*it, "max_steps");
    if (auto it = j.find("seed"); it != j.end()) c.walk.seed = parse_count(*it, "seed");
    if (auto it = j.find("eps_rel"); it != j.end()) c.walk.eps_rel = parse_number(*it, "eps_rel");
    if (c.walk.n_walkers == 0) throw ConfigError("n_walkers: must be positive");
    if (c.walk.max_steps == 0) throw ConfigError("max_steps: must be positive");
    if (!(c.walk.eps_rel > 0.0 && c.walk.eps_rel < 1.0)) throw ConfigError("eps_rel: must lie in (0, 1)");

    if (auto it = j.find("ladder"); it != j.end()) {
        check_keys(*it, "ladder", {"R0", "ratio", "count"});
        if (auto v = opt_number(*it, "R0", "ladder")) c.ladder.R0 = *v;
        if (auto v = opt_number(*it, "ratio", "ladder")) c.ladder.ratio = *v;
        if (auto n = it->find("count"); n != it->end()) {
            if (!n->is_number_integer()) throw ConfigError("ladder.count: expected an integer");
            c.ladder.count = n->get<int>();
        }
        try {
            c.ladder.validate();
        } catch (const DomainError& e) {
            throw ConfigError(std::string("ladder: ") + e.what());
        }
    }
    if (auto it = j.find("bounds"); it != j.end()) c.bounds = parse_metadata(*it);

    const bool needs_domain = c.command == Command::EstimateH || c.command == Command::Measure ||
                              c.command == Command::Hansen || c.command == Command::Symmetrize;
    if (needs_domain) c.domain = parse_domain(require_key(j, "config", "domain"), "domain");
    if (auto it = j.find("z0"); it != j.end()) c.z0 = parse_complex(*it, "z0");
    if (auto it = j.find("base_point"); it != j.end()) c.base_point = parse_complex(*it, "base_point");

    if (c.command == Command::Measure) {
        c.R = parse_number(require_key(j, "config", "R"), "R");
        if (!(std::isfinite(c.R) && c.R > 0.0)) throw ConfigError("R: must be positive");
    }

    auto increasing = [](const std::vector<double>& g, const std::string& name) {
        if (g.size() < 3) throw ConfigError(name + ": needs at least 3 values");
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!(g[i] > 0.0 && std::isfinite(g[i])) || (i > 0 && g[i] <= g[i - 1])) {
                throw ConfigError(name + ": values must be positive and strictly increasing");
            }
        }
    };
    if (auto it = j.find("t_grid"); it != j.end()) c.t_grid = parse_number_list(*it, "t_grid");
    if (auto it = j.find("r_grid"); it != j.end()) c.r_grid = parse_number_list(*it, "r_grid");
    increasing(c.t_grid, "t_grid");
    increasing(c.r_grid, "r_grid");

    if (c.command == Command::Hnorm) {
        c.map = parse_map(require_key(j, "config", "map"), "map");
        if (auto v = opt_number(j, "p_lo", "")) c.p_lo = *v;
        if (auto v = opt_number(j, "p_hi", "")) c.p_hi = *v;
        if (auto v = opt_number(j, "tol", "")) c.tol = *v;
        if (!(c.p_lo > 0.0 && c.p_lo < c.p_hi && std::isfinite(c.p_hi))) {
            throw ConfigError("p_lo, p_hi: need 0 < p_lo < p_hi");
        }
        if (!(c.tol >= 1e-2)) throw ConfigError("tol: must be >= 0.01");
    }

    if (c.command == Command::Modulus) {
        const json& fj = require_key(j, "config", "field");
        const std::string f = fj.is_string() ? fj.get<std::string>() : "";
        if (f == "zero") {
            c.field = FieldKind::Zero;
        } else if (f == "fold") {
            c.field = FieldKind::Fold;
            c.kappa = parse_complex(require_key(j, "config", "kappa"), "kappa");
            if (!(std::abs(c.kappa) < 1.0)) throw ConfigError("kappa: need |kappa| < 1");
        } else if (f == "grid") {
            c.field = FieldKind::Grid;
            const json& g = require_key(j, "config", "grid_file");
            if (!g.is_string()) throw ConfigError("grid_file: expected a path");
            c.grid_file = g.get<std::string>();
        } else {
            throw ConfigError("field: unknown field \"" + f + "\" (known: zero, fold, grid)");
        }
        if (c.field != FieldKind::Fold && j.contains("kappa")) throw ConfigError("kappa: only valid with field \"fold\"");
        if (c.field != FieldKind::Grid && j.contains("grid_file")) {
            throw ConfigError("grid_file: only valid with field \"grid\"");
        }
        if (auto v = opt_number(j, "r", "")) c.r = *v;
        if (auto v = opt_number(j, "R", "")) c.R = *v;
        if (!(c.r > 0.0 && c.r < c.R && c.R <= 1.0)) throw ConfigError("r, R: need 0 < r < R <= 1");
        if (auto it = j.find("n_theta"); it != j.end()) c.n_theta = parse_count(*it, "n_theta");
        if (auto it = j.find("n_t"); it != j.end()) c.n_t = parse_count(*it, "n_t");
        auto pow2 = [](std::uint64_t n) { return n > 0 && (n & (n - 1)) == 0; };
        if (!pow2(c.n_theta) || c.n_theta < 512) throw ConfigError("n_theta: must be a power of two >= 512");
        if (!pow2(c.n_t) || c.n_t < 256) throw ConfigError("n_t: must be a power of two >= 256");
    }
    return c;
}

inline RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

inline RunConfig parse_config(const char* text) { return parse_config(std::string(text)); }

/// Canonical form: every key the command accepts, defaults filled in.
inline json config_to_json(const RunConfig& c) {
    using namespace detail;
    json j{{"command", to_string(c.command)}, {"output_dir", c.output_dir}};
    j["format"] = c.format == OutputFormat::Json ? "json" : c.format == OutputFormat::Csv ? "csv" : "both";
    const auto keys = allowed_keys(c.command);
    auto has = [&keys](const char* k) { return keys.count(k) > 0; };
    if (has("n_walkers")) {
        j["n_walkers"] = c.walk.n_walkers;
        j["eps_rel"] = c.walk.eps_rel;
        j["max_steps"] = c.walk.max_steps;
        j["seed"] = c.walk.seed;
    }
    if (has("domain") && c.domain) j["domain"] = domain_to_json(*c.domain);
    if (has("z0") && c.z0) j["z0"] = json_complex(*c.z0);
    if (has("ladder")) j["ladder"] = {{"R0", c.ladder.R0}, {"ratio", c.ladder.ratio}, {"count", c.ladder.count}};
    if (has("bounds") && c.bounds) j["bounds"] = metadata_to_json(*c.bounds);
    if (has("t_grid")) j["t_grid"] = number_list(c.t_grid);
    if (has("r_grid")) j["r_grid"] = number_list(c.r_grid);
    if (has("base_point") && c.base_point) j["base_point"] = json_complex(*c.base_point);
    if (has("map") && c.map) {
        j["map"] = map_to_json(*c.map);
        j["p_lo"] = c.p_lo;
        j["p_hi"] = c.p_hi;
        j["tol"] = c.tol;
    }
    if (c.command == Command::Measure) j["R"] = c.R;
    if (c.command == Command::Modulus) {
        j["field"] = c.field == FieldKind::Zero ? "zero" : c.field == FieldKind::Fold ? "fold" : "grid";
        if (c.field == FieldKind::Fold) j["kappa"] = json_complex(c.kappa);
        if (c.field == FieldKind::Grid) j["grid_file"] = c.grid_file;
        j["r"] = c.r;
        j["R"] = c.R;
        j["n_theta"] = c.n_theta;
        j["n_t"] = c.n_t;
    }
    return j;
}

}  // namespace hardylab
