#pragma once

#include "vcseffort/civil_time.hpp"

#include <cstddef>
#include <filesystem>
#include <istream>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vcseffort {

/// One version-control change, author-side metadata only.
struct CommitRecord {
  std::string hash;
  std::string author_name;
  std::string author_email;
  UnixSeconds author_timestamp = 0;
  bool is_merge = false;

  friend bool operator==(const CommitRecord&, const CommitRecord&) = default;
};

enum class LogFormat {
  Pipe,      // hash|author_email|author_name|unix_timestamp|merge_flag
  JsonLines, // {"hash":..,"author_name":..,"author_email":..,"author_timestamp":..,"is_merge":..}
};

struct MalformedLine {
  std::size_t line_number; // 1-based
  std::string reason;
};

struct ParseOptions {
  LogFormat format = LogFormat::Pipe;
  // Abort when strictly more than this fraction of non-blank lines is malformed.
  double max_malformed_fraction = 0.05;
};

struct ParseResult {
  std::vector<CommitRecord> commits;
  std::vector<MalformedLine> malformed;
};

/// Parse one record per line. Blank lines are ignored; every other line
/// becomes a commit or a MalformedLine. Duplicate hashes are malformed.
/// Throws IngestError when the malformed fraction exceeds the tolerance.
ParseResult parse_log_stream(std::span<const std::string> lines, const ParseOptions& opts = {});
ParseResult parse_log_stream(std::istream& in, const ParseOptions& opts = {});
ParseResult parse_log_file(const std::filesystem::path& path, const ParseOptions& opts = {});

/// Runs `git log` in `repo` with the pipe pretty-format and parses it.
ParseResult read_git_log(const std::filesystem::path& repo, const ParseOptions& opts = {});

std::string to_pipe_line(const CommitRecord& c);
std::string to_json_line(const CommitRecord& c);

/// Bot patterns are case-insensitive ECMAScript regexes matched (search
/// semantics) against both author name and author email.
class FilterConfig {
public:
  FilterConfig() = default;
  /// Throws ConfigError if a pattern does not compile.
  explicit FilterConfig(std::vector<std::string> bot_patterns, bool exclude_merges = false);

  const std::vector<std::string>& bot_patterns() const { return patterns_; }
  bool exclude_merges() const { return exclude_merges_; }
  bool is_bot(const CommitRecord& c) const;

private:
  std::vector<std::string> patterns_;
  std::vector<std::regex> compiled_;
  bool exclude_merges_ = false;
};

/// Patterns shipped as a starting point for a bot file; never applied implicitly.
std::vector<std::string> default_bot_patterns();

/// One regex per line; `#` starts a comment line, blank lines ignored.
std::vector<std::string> read_bot_patterns(std::istream& in);

struct FilterResult {
  std::vector<CommitRecord> kept;
  std::size_t excluded_bot_count = 0;
  std::size_t excluded_merge_count = 0;
};

/// Bot matches are counted before merge exclusion, so a bot-authored merge
/// counts once, as a bot.
FilterResult apply_filters(std::span<const CommitRecord> commits, const FilterConfig& cfg);

} // namespace vcseffort
