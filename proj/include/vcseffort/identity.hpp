#pragma once

#include "vcseffort/ingest.hpp"

#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vcseffort {

using DeveloperId = std::string;

/// An observed (author name, author email) pair, exactly as recorded.
struct Alias {
  std::string name;
  std::string email;
  friend auto operator<=>(const Alias&, const Alias&) = default;
};

struct CanonicalDeveloper {
  DeveloperId developer_id;  // lowercase smallest email of the group
  std::string primary_email; // the alias email the id was taken from
  std::set<Alias> aliases;
};

/// `alias` is an email (contains '@') or an author name; it is merged into
/// whichever developer owns `canonical_email`.
struct AliasDirective {
  std::string alias;
  std::string canonical_email;
};

struct AliasMap {
  std::vector<AliasDirective> directives;

  /// Throws ConfigError if one alias is directed to two canonical emails.
  void validate() const;
};

/// CSV `alias_email_or_name,canonical_email`; `#` comment lines allowed.
/// An optional header row with exactly those column names is skipped.
AliasMap read_alias_csv(std::istream& in);

/// Lowercase, strip Latin diacritics, collapse runs of whitespace, trim.
std::string normalize_name(std::string_view name);
std::string lowercase(std::string_view s);

/// Immutable set of canonical developers, sorted by developer_id.
class Roster {
public:
  Roster() = default;
  Roster(std::vector<CanonicalDeveloper> developers,
         std::unordered_map<std::string, std::uint32_t> email_index);

  std::size_t size() const { return developers_.size(); }
  const CanonicalDeveloper& operator[](std::size_t i) const { return developers_[i]; }
  const std::vector<CanonicalDeveloper>& developers() const { return developers_; }

  /// Exact lowercase email match against aliases and alias-file emails.
  std::optional<std::uint32_t> find_email(std::string_view email) const;
  std::optional<std::uint32_t> find_id(std::string_view developer_id) const;

private:
  std::vector<CanonicalDeveloper> developers_;
  std::unordered_map<std::string, std::uint32_t> email_index_;
};

struct IdentityResolution {
  Roster roster;
  std::vector<std::uint32_t> commit_developer; // parallel to the input commits
};

/// Rules: alias-file directives always merge; identical lowercase emails
/// merge; with `name_merging`, identical normalized names merge too.
IdentityResolution resolve_identities(std::span<const CommitRecord> commits,
                                      const AliasMap& aliases, bool name_merging = false);

} // namespace vcseffort
