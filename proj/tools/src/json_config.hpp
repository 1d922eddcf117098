#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace photostat::cli {

/// Reads a flat JSON object mapping long option names (without dashes) to a
/// scalar or an array of scalars, and returns the equivalent "--name=value"
/// arguments for every option of `sub` that was not given on the command line.
/// Throws CLI::ValidationError for unreadable files and unknown keys.
inline std::vector<std::string> config_arguments(const std::string& path, const CLI::App& sub) {
    std::ifstream in(path);
    if (!in) {
        throw CLI::ValidationError("--config", "cannot read " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ValidationError("--config", std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw CLI::ValidationError("--config", "must hold a JSON object");
    }
    auto scalar = [](const std::string& key, const nlohmann::json& v) -> std::string {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_boolean()) {
            return v.get<bool>() ? "true" : "false";
        }
        if (v.is_number()) {
            return v.dump();
        }
        throw CLI::ValidationError("--config", "key '" + key + "' must hold scalars");
    };
    std::vector<std::string> args;
    for (const auto& [key, value] : j.items()) {
        const CLI::Option* opt = key == "config" || key == "help"
                                     ? nullptr
                                     : sub.get_option_no_throw("--" + key);
        if (opt == nullptr) {
            throw CLI::ValidationError("--config", "unknown key '" + key + "' for " + sub.get_name());
        }
        if (opt->count() > 0) {
            continue;  // the command line wins
        }
        if (value.is_array()) {
            for (const auto& v : value) {
                args.push_back("--" + key + "=" + scalar(key, v));
            }
        } else {
            args.push_back("--" + key + "=" + scalar(key, value));
        }
    }
    return args;
}

}  // namespace photostat::cli
