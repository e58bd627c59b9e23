#include "aoa/key_value.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "aoa/errors.hpp"

namespace aoa {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    out.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

std::vector<std::string> split_list(std::string_view value, std::string_view separators) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < value.size()) {
    const auto start = value.find_first_not_of(separators, pos);
    if (start == std::string_view::npos) break;
    auto end = value.find_first_of(separators, start);
    if (end == std::string_view::npos) end = value.size();
    out.emplace_back(value.substr(start, end - start));
    pos = end;
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  const std::string buf(trim(value));
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || errno == ERANGE) {
    throw ConfigError(std::string(key) + ": not a number: '" + buf + "'");
  }
  return v;
}

long long parse_integer(std::string_view key, std::string_view value) {
  const std::string_view v = trim(value);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(std::string(key) + ": not an integer: '" + std::string(v) + "'");
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace aoa
