#include "vcseffort/ingest.hpp"

#include "vcseffort/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace vcseffort {

namespace {

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r')
    s.remove_suffix(1);
  return s;
}

// Returns the failure reason, or nullopt when the record is valid.
std::optional<std::string> validate(const CommitRecord& c) {
  if (c.hash.empty())
    return "empty hash";
  if (c.author_timestamp <= 0)
    return "non-positive timestamp";
  if (c.author_email.empty() && c.author_name.empty())
    return "author has neither name nor email";
  return std::nullopt;
}

// hash|email|name|ts|merge. The name may itself contain '|', so the first
// two and last two fields are split off and the remainder is the name.
std::optional<std::string> parse_pipe(std::string_view line, CommitRecord& out) {
  auto p1 = line.find('|');
  if (p1 == std::string_view::npos)
    return "expected 5 pipe-delimited fields";
  auto p2 = line.find('|', p1 + 1);
  auto p4 = line.rfind('|');
  if (p2 == std::string_view::npos || p4 <= p2)
    return "expected 5 pipe-delimited fields";
  auto p3 = line.rfind('|', p4 - 1);
  if (p3 == std::string_view::npos || p3 < p2)
    return "expected 5 pipe-delimited fields";

  auto ts_text = line.substr(p3 + 1, p4 - p3 - 1);
  auto flag = line.substr(p4 + 1);
  out.hash = std::string(line.substr(0, p1));
  out.author_email = std::string(line.substr(p1 + 1, p2 - p1 - 1));
  out.author_name = std::string(line.substr(p2 + 1, p3 - p2 - 1));

  auto [ptr, ec] = std::from_chars(ts_text.data(), ts_text.data() + ts_text.size(),
                                   out.author_timestamp);
  if (ec != std::errc{} || ptr != ts_text.data() + ts_text.size())
    return "timestamp is not an integer";
  if (flag == "0")
    out.is_merge = false;
  else if (flag == "1")
    out.is_merge = true;
  else
    return "merge flag must be 0 or 1";
  return std::nullopt;
}

std::optional<std::string> parse_json(std::string_view line, CommitRecord& out) {
  auto doc = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object())
    return "not a JSON object";
  try {
    out.hash = doc.at("hash").get<std::string>();
    out.author_name = doc.at("author_name").get<std::string>();
    out.author_email = doc.at("author_email").get<std::string>();
    const auto& ts = doc.at("author_timestamp");
    if (!ts.is_number_integer())
      return "author_timestamp must be an integer";
    out.author_timestamp = ts.get<std::int64_t>();
    const auto& merge = doc.at("is_merge");
    if (merge.is_boolean())
      out.is_merge = merge.get<bool>();
    else if (merge.is_number_integer() && (merge == 0 || merge == 1))
      out.is_merge = merge.get<int>() == 1;
    else
      return "is_merge must be a boolean";
  } catch (const nlohmann::json::exception& e) {
    return std::string("missing or mistyped key: ") + e.what();
  }
  return std::nullopt;
}

class Parser {
public:
  explicit Parser(const ParseOptions& opts) : opts_(opts) {}

  void feed(std::string_view raw) {
    ++line_number_;
    auto line = strip_cr(raw);
    if (is_blank(line))
      return;
    ++records_seen_;
    CommitRecord c;
    auto err = opts_.format == LogFormat::Pipe ? parse_pipe(line, c) : parse_json(line, c);
    if (!err)
      err = validate(c);
    if (!err && !hashes_.insert(c.hash).second)
      err = "duplicate hash " + c.hash;
    if (err)
      result_.malformed.push_back({line_number_, *err});
    else
      result_.commits.push_back(std::move(c));
  }

  ParseResult finish() {
    auto bad = result_.malformed.size();
    if (bad > 0 && static_cast<double>(bad) >
                       opts_.max_malformed_fraction * static_cast<double>(records_seen_)) {
      std::ostringstream msg;
      msg << bad << " of " << records_seen_ << " records malformed (tolerance "
          << opts_.max_malformed_fraction * 100 << "%)";
      for (std::size_t i = 0; i < std::min<std::size_t>(bad, 5); ++i)
        msg << "\n  line " << result_.malformed[i].line_number << ": "
            << result_.malformed[i].reason;
      throw IngestError(msg.str());
    }
    return std::move(result_);
  }

private:
  const ParseOptions& opts_;
  ParseResult result_;
  std::unordered_set<std::string> hashes_;
  std::size_t line_number_ = 0;
  std::size_t records_seen_ = 0;
};

bool matches_any(const std::vector<std::regex>& res, const std::string& text) {
  if (text.empty())
    return false;
  for (const auto& re : res)
    if (std::regex_search(text, re))
      return true;
  return false;
}

} // namespace

ParseResult parse_log_stream(std::span<const std::string> lines, const ParseOptions& opts) {
  Parser parser(opts);
  for (const auto& l : lines)
    parser.feed(l);
  return parser.finish();
}

ParseResult parse_log_stream(std::istream& in, const ParseOptions& opts) {
  if (!in)
    throw IngestError("commit stream is not readable");
  Parser parser(opts);
  std::string line;
  while (std::getline(in, line))
    parser.feed(line);
  if (in.bad())
    throw IngestError("read error on commit stream");
  return parser.finish();
}

ParseResult parse_log_file(const std::filesystem::path& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in)
    throw IngestError("cannot open commit log " + path.string());
  return parse_log_stream(in, opts);
}

ParseResult read_git_log(const std::filesystem::path& repo, const ParseOptions& opts) {
  if (!std::filesystem::is_directory(repo))
    throw IngestError("repository path is not a directory: " + repo.string());
  // %P lists parent hashes; more than one parent means a merge.
  std::string cmd = "git -C '" + repo.string() +
                    "' log --all --no-color --pretty=format:'%H|%ae|%an|%at|%P' 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe)
    throw IngestError("cannot run git in " + repo.string());

  std::vector<std::string> lines;
  std::string current;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe.get())) {
    current += buf;
    if (!current.empty() && current.back() == '\n') {
      current.pop_back();
      lines.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty())
    lines.push_back(std::move(current));
  int status = pclose(pipe.release());
  if (status != 0)
    throw IngestError("git log failed in " + repo.string());

  for (auto& l : lines) {
    auto bar = l.rfind('|');
    if (bar == std::string::npos)
      continue;
    std::string_view parents(l.c_str() + bar + 1);
    bool merge = parents.find(' ') != std::string_view::npos;
    l.resize(bar + 1);
    l += merge ? '1' : '0';
  }
  auto local = opts;
  local.format = LogFormat::Pipe;
  return parse_log_stream(lines, local);
}

std::string to_pipe_line(const CommitRecord& c) {
  return c.hash + '|' + c.author_email + '|' + c.author_name + '|' +
         std::to_string(c.author_timestamp) + '|' + (c.is_merge ? '1' : '0');
}

std::string to_json_line(const CommitRecord& c) {
  nlohmann::ordered_json j;
  j["hash"] = c.hash;
  j["author_name"] = c.author_name;
  j["author_email"] = c.author_email;
  j["author_timestamp"] = c.author_timestamp;
  j["is_merge"] = c.is_merge;
  return j.dump();
}

FilterConfig::FilterConfig(std::vector<std::string> bot_patterns, bool exclude_merges)
    : patterns_(std::move(bot_patterns)), exclude_merges_(exclude_merges) {
  compiled_.reserve(patterns_.size());
  for (const auto& p : patterns_) {
    try {
      compiled_.emplace_back(p, std::regex::ECMAScript | std::regex::icase |
                                    std::regex::optimize);
    } catch (const std::regex_error& e) {
      throw ConfigError("bot pattern '" + p + "' does not compile: " + e.what());
    }
  }
}

bool FilterConfig::is_bot(const CommitRecord& c) const {
  return matches_any(compiled_, c.author_name) || matches_any(compiled_, c.author_email);
}

std::vector<std::string> default_bot_patterns() {
  return {R"(\bbot\b)", "jenkins", "gerrit", "automation"};
}

std::vector<std::string> read_bot_patterns(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto view = strip_cr(line);
    auto first = view.find_first_not_of(" \t");
    if (first == std::string_view::npos || view[first] == '#')
      continue;
    auto last = view.find_last_not_of(" \t");
    out.emplace_back(view.substr(first, last - first + 1));
  }
  return out;
}

FilterResult apply_filters(std::span<const CommitRecord> commits, const FilterConfig& cfg) {
  const auto n = static_cast<std::ptrdiff_t>(commits.size());
  // 0 keep, 1 bot, 2 merge. Classification is per-commit and pure.
  std::vector<unsigned char> verdict(commits.size(), 0);
  if (!cfg.bot_patterns().empty() || cfg.exclude_merges()) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto& c = commits[static_cast<std::size_t>(i)];
      if (cfg.is_bot(c))
        verdict[static_cast<std::size_t>(i)] = 1;
      else if (cfg.exclude_merges() && c.is_merge)
        verdict[static_cast<std::size_t>(i)] = 2;
    }
  }

  FilterResult out;
  out.kept.reserve(commits.size());
  for (std::size_t i = 0; i < commits.size(); ++i) {
    switch (verdict[i]) {
    case 0: out.kept.push_back(commits[i]); break;
    case 1: ++out.excluded_bot_count; break;
    default: ++out.excluded_merge_count; break;
    }
  }
  return out;
}

} // namespace vcseffort
