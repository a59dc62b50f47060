// hardylab: Hardy numbers of planar domains from harmonic-measure decay.
//
//   hardylab estimate-h --domain '{"type":"sector","alpha":0.5}'
//   hardylab verify
//   hardylab modulus --config run.json --config-priority

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hardylab/cli.hpp"

using hardylab::ConfigError;
using hardylab::json;

namespace {

json parse_flag_json(const std::string& text, const std::string& flag) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("--" + flag + ": malformed JSON: " + e.what());
    }
}

json read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_flag_json(ss.str(), "config");
}

// Overlay `flags` on `base`. Without priority the flag value wins; with it,
// keys already present in the config file are kept. Nested objects (ladder)
// merge key by key.
void merge(json& base, const json& flags, bool config_wins) {
    for (auto it = flags.begin(); it != flags.end(); ++it) {
        auto cur = base.find(it.key());
        if (cur == base.end()) {
            base[it.key()] = it.value();
        } else if (cur->is_object() && it->is_object() && it.key() == "ladder") {
            merge(*cur, *it, config_wins);
        } else if (!config_wins) {
            *cur = it.value();
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hardy numbers of planar domains: walk-on-spheres estimation, closed forms and bounds"};
    app.set_help_flag("-h,--help", "Print this help message and exit");

    std::string command, config_path;
    bool config_priority = false, print_config = false;
    app.add_option("command", command, "estimate-h | measure | hansen | symmetrize | hnorm | modulus | verify");
    app.add_option("--config", config_path, "Config JSON file");
    app.add_flag("--config-priority", config_priority, "Config file values win over flags");
    app.add_flag("--print-config", print_config, "Print the canonical config and exit");

    std::map<std::string, std::string> json_flags;
    for (const char* key : {"domain", "z0", "bounds", "t_grid", "r_grid", "base_point", "map", "kappa"}) {
        app.add_option("--" + std::string(key), json_flags[key], std::string(key) + " (JSON)");
    }
    std::map<std::string, std::string> text_flags;
    app.add_option("--out", text_flags["output_dir"], "Output directory (output_dir)");
    app.add_option("--format", text_flags["format"], "json | csv | both");
    app.add_option("--field", text_flags["field"], "zero | fold | grid");
    app.add_option("--grid-file", text_flags["grid_file"], "Grid field file");
    std::map<std::string, std::string> number_flags;
    const std::vector<std::pair<std::string, std::string>> numeric{
        {"walkers", "n_walkers"}, {"eps-rel", "eps_rel"}, {"max-steps", "max_steps"}, {"seed", "seed"},
        {"R0", "R0"},             {"ratio", "ratio"},     {"count", "count"},         {"R", "R"},
        {"r", "r"},               {"p-lo", "p_lo"},       {"p-hi", "p_hi"},           {"tol", "tol"},
        {"n-theta", "n_theta"},   {"n-t", "n_t"}};
    for (const auto& [flag, key] : numeric) app.add_option("--" + flag, number_flags[key], key);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return hardylab::kExitUsage;
    }

    try {
        json flags = json::object();
        if (!command.empty()) flags["command"] = command;
        for (const auto& [key, text] : json_flags) {
            if (!text.empty()) flags[key] = parse_flag_json(text, key);
        }
        for (const auto& [key, text] : text_flags) {
            if (!text.empty()) flags[key] = text;
        }
        for (const auto& [key, text] : number_flags) {
            if (text.empty()) continue;
            const json v = parse_flag_json(text, key);
            if (!v.is_number()) throw ConfigError("--" + key + ": expected a number");
            if (key == "R0" || key == "ratio" || key == "count") {
                flags["ladder"][key] = v;
            } else {
                flags[key] = v;
            }
        }

        json merged = config_path.empty() ? json::object() : read_config_file(config_path);
        if (!merged.is_object()) throw ConfigError("--config: expected a JSON object");
        merge(merged, flags, config_priority);
        if (!merged.contains("command")) {
            std::cerr << "usage: hardylab <command> [options]; see --help\n";
            return hardylab::kExitUsage;
        }
        const hardylab::RunConfig cfg = hardylab::parse_config(merged);
        if (print_config) {
            std::cout << hardylab::config_to_json(cfg).dump(2) << "\n";
            return hardylab::kExitOk;
        }
        return hardylab::run(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return hardylab::kExitConfig;
    }
}
