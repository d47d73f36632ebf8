#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace dlcc {

std::string sha256Hex(std::string_view bytes);
std::string sha256File(const std::filesystem::path& file);

// Relative path (generic form) -> SHA-256 for every regular file below
// root, skipping any file named in `exclude`.
std::map<std::string, std::string> digestTree(const std::filesystem::path& root,
                                              std::initializer_list<std::string_view> exclude = {});

// UTC, ISO 8601, second resolution.
std::string utcTimestamp();

}  // namespace dlcc
