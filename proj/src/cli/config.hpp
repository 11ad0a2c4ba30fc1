#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vcseffort::cli {

/// `key = value` lines; `#` comments and blank lines ignored. Keys are flag
/// names without the leading dashes.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

/// Appends config entries as flags unless the flag already appears in `args`.
/// Entries naming a boolean flag become `--flag` when the value is true and
/// are dropped when false.
std::vector<std::string> merge_config(std::vector<std::string> args,
                                      const std::vector<std::pair<std::string, std::string>>& entries,
                                      const std::set<std::string>& boolean_flags);

} // namespace vcseffort::cli
