#include <algorithm>
#include <fstream>
#include <sstream>

#include "cli_internal.hpp"

namespace ladder::cli {

namespace {

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    throw ConfigError("config values must be strings, numbers, booleans or lists of those");
}

void append_flag(std::vector<std::string>& out, const std::string& key, const Json& v) {
    if (v.is_boolean()) {
        if (v.get<bool>()) out.push_back("--" + key);
        return;
    }
    if (v.is_array()) {
        std::string joined;
        for (const auto& item : v) {
            if (!joined.empty()) joined += ',';
            joined += scalar_text(item);
        }
        out.push_back("--" + key);
        out.push_back(joined);
        return;
    }
    if (v.is_object()) {
        // one level of nesting, e.g. {"spec": {"alpha": 1, ...}}
        for (const auto& [k, inner] : v.items()) append_flag(out, k, inner);
        return;
    }
    out.push_back("--" + key);
    out.push_back(scalar_text(v));
}

} // namespace

std::vector<std::string> apply_config(const std::vector<std::string>& args,
                                      const std::vector<std::string>& subcommands) {
    std::vector<std::string> rest;
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) throw ConfigError("--config needs a file path");
            path = args[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            path = a.substr(9);
        } else {
            rest.push_back(a);
        }
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    Json cfg;
    try {
        cfg = Json::parse(in);
    } catch (const Json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config file must hold a JSON object");

    std::string command;
    std::vector<std::string> extra;
    for (const auto& [key, value] : cfg.items()) {
        if (key == "command") {
            if (!value.is_string()) throw ConfigError("config 'command' must be a string");
            command = value.get<std::string>();
        } else {
            append_flag(extra, key, value);
        }
    }

    auto it = std::find_if(rest.begin(), rest.end(), [&](const std::string& a) {
        return std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end();
    });
    if (it == rest.end()) {
        if (command.empty()) throw ConfigError("no subcommand on the command line or in the config");
        rest.insert(rest.begin(), command);
        it = rest.begin();
    } else if (!command.empty() && *it != command) {
        throw ConfigError("config command '" + command + "' conflicts with '" + *it + "'");
    }
    rest.insert(it + 1, extra.begin(), extra.end());
    return rest;
}

} // namespace ladder::cli
