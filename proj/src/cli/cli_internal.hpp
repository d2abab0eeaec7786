#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ladder/types.hpp"

namespace ladder::cli {

using Json = nlohmann::ordered_json;

/// Bad flags, unreadable config, malformed values: exit code 3.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Splices the keys of a --config JSON file into the argument list right after
/// the subcommand, so flags given explicitly on the command line still win.
std::vector<std::string> apply_config(const std::vector<std::string>& args,
                                      const std::vector<std::string>& subcommands);

/// Renders a report as json, csv or ascii. A "table" array of flat records is
/// the csv body; other fields become key/value lines.
std::string render(const Json& report, std::string_view format);

Json to_json(Complex z);
Json to_json(const Matrix& m);

} // namespace ladder::cli
