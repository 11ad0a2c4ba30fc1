#include "config.hpp"

#include "vcseffort/error.hpp"

#include <algorithm>
#include <fstream>

namespace vcseffort::cli {

namespace {

std::string trim(const std::string& s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
    return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool mentions(const std::vector<std::string>& args, const std::string& key) {
  auto flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

} // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw IngestError("cannot open config file " + path.string());
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto text = trim(line);
    if (text.empty() || text.front() == '#')
      continue;
    auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(line_number) + ": expected key = value");
    auto key = trim(text.substr(0, eq));
    if (key.rfind("--", 0) == 0)
      key.erase(0, 2);
    if (key.empty() || key == "config")
      throw ConfigError(path.string() + ":" + std::to_string(line_number) + ": invalid key");
    out.emplace_back(key, trim(text.substr(eq + 1)));
  }
  return out;
}

std::vector<std::string> merge_config(std::vector<std::string> args,
                                      const std::vector<std::pair<std::string, std::string>>& entries,
                                      const std::set<std::string>& boolean_flags) {
  const auto given = args;
  for (const auto& [key, value] : entries) {
    if (mentions(given, key))
      continue;
    if (boolean_flags.contains(key)) {
      if (value == "true" || value == "1" || value == "yes")
        args.push_back("--" + key);
      else if (value != "false" && value != "0" && value != "no")
        throw ConfigError("config key '" + key + "' expects true or false");
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

} // namespace vcseffort::cli
