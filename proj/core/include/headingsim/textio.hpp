#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hsim {

// Shortest decimal form that parses back to the identical double.
// All persisted numeric fields go through this pair so that
// save -> load -> save is byte stable.
std::string fmt_double(double v);
double parse_double(std::string_view s);

long long parse_int(std::string_view s);
std::uint64_t parse_uint64(std::string_view s);

// 16 lowercase hex digits, zero padded.
std::string to_hex16(std::uint64_t v);
std::uint64_t parse_hex64(std::string_view s);

// Splits on single spaces; no empty tokens, no quoting.
std::vector<std::string_view> split_fields(std::string_view line);

// Reads a whole file; throws IoError if it cannot be opened.
std::string read_text_file(const std::string& path);

// Writes a whole file; throws IoError on failure.
void write_text_file(const std::string& path, std::string_view content);

}  // namespace hsim
