#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace pgbrrt {

/// Throws IoError with the path on failure.
std::string read_text_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace pgbrrt
