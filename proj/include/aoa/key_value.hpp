#pragma once

// "key = value" text with '#' comments, shared by the scenario file and the
// bench CLI config file.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aoa {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Throws ConfigError on a line without '='.
KeyValues parse_key_values(std::string_view text);

std::vector<std::string> split_list(std::string_view value, std::string_view separators = " \t,");

double parse_double(std::string_view key, std::string_view value);
long long parse_integer(std::string_view key, std::string_view value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace aoa
