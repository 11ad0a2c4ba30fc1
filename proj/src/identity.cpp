#include "vcseffort/identity.hpp"

#include "vcseffort/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace vcseffort {

namespace {

struct Range {
  char32_t first, last;
  const char* base;
};

// Latin-1 Supplement and Latin Extended-A letters to their lowercase base.
constexpr Range kFolds[] = {
    {0xC0, 0xC5, "a"},   {0xC6, 0xC6, "ae"},  {0xC7, 0xC7, "c"},   {0xC8, 0xCB, "e"},
    {0xCC, 0xCF, "i"},   {0xD0, 0xD0, "d"},   {0xD1, 0xD1, "n"},   {0xD2, 0xD6, "o"},
    {0xD8, 0xD8, "o"},   {0xD9, 0xDC, "u"},   {0xDD, 0xDD, "y"},   {0xDE, 0xDE, "th"},
    {0xDF, 0xDF, "ss"},  {0xE0, 0xE5, "a"},   {0xE6, 0xE6, "ae"},  {0xE7, 0xE7, "c"},
    {0xE8, 0xEB, "e"},   {0xEC, 0xEF, "i"},   {0xF0, 0xF0, "d"},   {0xF1, 0xF1, "n"},
    {0xF2, 0xF6, "o"},   {0xF8, 0xF8, "o"},   {0xF9, 0xFC, "u"},   {0xFD, 0xFD, "y"},
    {0xFE, 0xFE, "th"},  {0xFF, 0xFF, "y"},   {0x100, 0x105, "a"}, {0x106, 0x10D, "c"},
    {0x10E, 0x111, "d"}, {0x112, 0x11B, "e"}, {0x11C, 0x123, "g"}, {0x124, 0x127, "h"},
    {0x128, 0x131, "i"}, {0x132, 0x133, "ij"}, {0x134, 0x135, "j"}, {0x136, 0x138, "k"},
    {0x139, 0x142, "l"}, {0x143, 0x14B, "n"}, {0x14C, 0x151, "o"}, {0x152, 0x153, "oe"},
    {0x154, 0x159, "r"}, {0x15A, 0x161, "s"}, {0x162, 0x167, "t"}, {0x168, 0x173, "u"},
    {0x174, 0x175, "w"}, {0x176, 0x178, "y"}, {0x179, 0x17E, "z"}, {0x17F, 0x17F, "s"},
};

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Decodes one code point; invalid sequences yield the raw byte.
char32_t next_code_point(std::string_view s, std::size_t& i) {
  auto b0 = static_cast<unsigned char>(s[i]);
  int len = b0 < 0x80 ? 1 : (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3 : (b0 >> 3) == 0x1E ? 4 : 0;
  if (len <= 1 || i + static_cast<std::size_t>(len) > s.size()) {
    ++i;
    return b0;
  }
  char32_t cp = b0 & (0x7F >> len);
  for (int k = 1; k < len; ++k) {
    auto b = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return b0;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += static_cast<std::size_t>(len);
  return cp;
}

bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v' ||
         cp == 0xA0;
}

class DisjointSets {
public:
  std::uint32_t add() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b)
      parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::uint32_t> parent_;
};

bool is_email_alias(std::string_view alias) { return alias.find('@') != std::string_view::npos; }

std::string directive_key(std::string_view alias) {
  return is_email_alias(alias) ? "e:" + lowercase(alias) : "n:" + normalize_name(alias);
}

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

} // namespace

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& ch : out)
    if (ch >= 'A' && ch <= 'Z')
      ch = static_cast<char>(ch - 'A' + 'a');
  return out;
}

std::string normalize_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < name.size();) {
    char32_t cp = next_code_point(name, i);
    if (is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (cp >= 0x300 && cp <= 0x36F) // combining marks
      continue;
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    if (cp >= 'A' && cp <= 'Z') {
      out += static_cast<char>(cp - 'A' + 'a');
      continue;
    }
    auto fold = std::find_if(std::begin(kFolds), std::end(kFolds),
                             [cp](const Range& r) { return cp >= r.first && cp <= r.last; });
    if (fold != std::end(kFolds))
      out += fold->base;
    else
      append_utf8(out, cp);
  }
  return out;
}

void AliasMap::validate() const {
  std::map<std::string, std::string> seen;
  for (const auto& d : directives) {
    if (d.alias.empty() || d.canonical_email.empty())
      throw ConfigError("alias directive with an empty field");
    auto target = lowercase(d.canonical_email);
    auto [it, inserted] = seen.emplace(directive_key(d.alias), target);
    if (!inserted && it->second != target)
      throw ConfigError("alias '" + d.alias + "' is mapped to both " + it->second + " and " +
                        target);
  }
}

AliasMap read_alias_csv(std::istream& in) {
  if (!in)
    throw IngestError("alias file is not readable");
  AliasMap out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto text = trim(line);
    if (text.empty() || text.front() == '#')
      continue;
    auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
      throw IngestError("alias file line " + std::to_string(line_number) +
                        ": expected two comma-separated columns");
    AliasDirective d{trim(text.substr(0, comma)), trim(text.substr(comma + 1))};
    if (d.alias == "alias_email_or_name" && d.canonical_email == "canonical_email")
      continue;
    out.directives.push_back(std::move(d));
  }
  return out;
}

Roster::Roster(std::vector<CanonicalDeveloper> developers,
               std::unordered_map<std::string, std::uint32_t> email_index)
    : developers_(std::move(developers)), email_index_(std::move(email_index)) {}

std::optional<std::uint32_t> Roster::find_email(std::string_view email) const {
  auto it = email_index_.find(lowercase(email));
  if (it == email_index_.end())
    return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> Roster::find_id(std::string_view developer_id) const {
  auto it = std::lower_bound(developers_.begin(), developers_.end(), developer_id,
                             [](const CanonicalDeveloper& d, std::string_view id) {
                               return d.developer_id < id;
                             });
  if (it == developers_.end() || it->developer_id != developer_id)
    return std::nullopt;
  return static_cast<std::uint32_t>(it - developers_.begin());
}

IdentityResolution resolve_identities(std::span<const CommitRecord> commits,
                                      const AliasMap& aliases, bool name_merging) {
  aliases.validate();

  // One node per distinct observed (name, email) pair.
  std::map<Alias, std::uint32_t> node_of;
  std::vector<Alias> nodes;
  std::vector<std::uint32_t> commit_node(commits.size());
  DisjointSets sets;
  for (std::size_t i = 0; i < commits.size(); ++i) {
    Alias key{commits[i].author_name, commits[i].author_email};
    auto [it, inserted] = node_of.emplace(key, 0);
    if (inserted) {
      it->second = sets.add();
      nodes.push_back(key);
    }
    commit_node[i] = it->second;
  }
  const auto observed = static_cast<std::uint32_t>(nodes.size());

  std::vector<std::string> norm_names(observed);
  std::unordered_map<std::string, std::uint32_t> by_email;
  std::unordered_map<std::string, std::uint32_t> by_name;
  for (std::uint32_t n = 0; n < observed; ++n) {
    norm_names[n] = normalize_name(nodes[n].name);
    if (!nodes[n].email.empty()) {
      auto [it, inserted] = by_email.emplace(lowercase(nodes[n].email), n);
      if (!inserted)
        sets.unite(it->second, n);
    }
    if (!norm_names[n].empty()) {
      auto [it, inserted] = by_name.emplace(norm_names[n], n);
      if (name_merging && !inserted)
        sets.unite(it->second, n);
    }
  }

  // Directives. Unobserved canonical emails get a virtual node so that
  // several aliases pointing at the same target still merge together.
  std::unordered_map<std::string, std::uint32_t> extra_email;
  auto email_node = [&](const std::string& email) -> std::uint32_t {
    if (auto it = by_email.find(email); it != by_email.end())
      return it->second;
    auto [it, inserted] = extra_email.emplace(email, 0);
    if (inserted)
      it->second = sets.add();
    return it->second;
  };
  for (const auto& d : aliases.directives) {
    auto target = email_node(lowercase(d.canonical_email));
    if (is_email_alias(d.alias)) {
      sets.unite(target, email_node(lowercase(d.alias)));
    } else {
      auto norm = normalize_name(d.alias);
      // Without name merging, a name directive must still catch every
      // pair carrying that name, not only the first one indexed.
      for (std::uint32_t n = 0; n < observed; ++n)
        if (norm_names[n] == norm)
          sets.unite(target, n);
    }
  }

  // Group observed nodes by root and pick each group's canonical id.
  std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
  for (std::uint32_t n = 0; n < observed; ++n)
    groups[sets.find(n)].push_back(n);

  struct Pending {
    CanonicalDeveloper dev;
    std::uint32_t root;
  };
  std::vector<Pending> pending;
  pending.reserve(groups.size());
  for (const auto& [root, members] : groups) {
    CanonicalDeveloper dev;
    std::string best_email, best_name;
    for (auto n : members) {
      dev.aliases.insert(nodes[n]);
      auto email = lowercase(nodes[n].email);
      if (!email.empty() && (best_email.empty() || email < best_email)) {
        best_email = email;
        dev.primary_email = nodes[n].email;
      }
      if (best_name.empty() || norm_names[n] < best_name)
        best_name = norm_names[n];
    }
    dev.developer_id = best_email.empty() ? "name:" + best_name : best_email;
    pending.push_back({std::move(dev), root});
  }
  std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    return a.dev.developer_id < b.dev.developer_id;
  });

  std::unordered_map<std::uint32_t, std::uint32_t> index_of_root;
  std::vector<CanonicalDeveloper> developers;
  developers.reserve(pending.size());
  for (std::uint32_t i = 0; i < pending.size(); ++i) {
    index_of_root[pending[i].root] = i;
    developers.push_back(std::move(pending[i].dev));
  }

  std::unordered_map<std::string, std::uint32_t> email_index;
  for (const auto& [email, n] : by_email)
    email_index[email] = index_of_root.at(sets.find(n));
  for (const auto& [email, n] : extra_email)
    if (auto it = index_of_root.find(sets.find(n)); it != index_of_root.end())
      email_index[email] = it->second;

  IdentityResolution out;
  out.commit_developer.resize(commits.size());
  for (std::size_t i = 0; i < commits.size(); ++i)
    out.commit_developer[i] = index_of_root.at(sets.find(commit_node[i]));
  out.roster = Roster(std::move(developers), std::move(email_index));
  return out;
}

} // namespace vcseffort
