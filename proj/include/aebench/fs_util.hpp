#pragma once

#include <filesystem>
#include <string>

namespace aebench {

// Writes content to path via a temporary file in the same directory followed
// by a rename, so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// Shortest decimal representation that round-trips a double exactly.
std::string format_double(double v);

}  // namespace aebench
