#pragma once

#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

namespace gatemp {

// Shortest decimal that round-trips to the same double; locale independent.
std::string format_double(double x);

// Parses a decimal written by format_double (or any plain C-locale number).
double parse_double(std::string_view text);

// Comma-separated row terminated by '\n'.
void write_row(std::ostream& out, std::initializer_list<double> values);
void write_header(std::ostream& out, std::initializer_list<std::string_view> names);

// Writes `contents` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace gatemp
