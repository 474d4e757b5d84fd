#pragma once

// Helpers shared by the library sources. Not installed.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bilex::detail {

bool is_valid_utf8(std::string_view text);

std::string read_file(const std::filesystem::path& path);
std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

// Splits on a single delimiter, keeping empty fields.
std::vector<std::string_view> split_fields(std::string_view line, char delim);

// printf-style "%.6g".
std::string format_score(double value);

}  // namespace bilex::detail
