#pragma once

// Signature database: entries keyed by exact wifi4 text, optionally qualified
// by MAC vendor prefix (OUI) and/or a DHCP operating-system rule.
//
// File formats (UTF-8, one record per line, '#' comments and blank lines ignored):
//   database:   model<TAB>wifi4<TAB>qualifiers     qualifiers: "oui:xxxxxx;dhcp:<os>" or empty
//   DHCP rules: os-name<TAB>1,121,33,...
//   OUI table:  xxxxxx<TAB>vendor-name

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "wifitax/bytes.hpp"

namespace wifitax {

struct DbEntry {
  std::string model;
  std::string wifi4;
  std::set<Oui> oui_qualifiers;
  std::optional<std::string> dhcp_os_qualifier;
  std::size_t line = 0;  // source line, 0 when built in memory

  /// 2 = DHCP-qualified, 1 = OUI-qualified, 0 = unqualified.
  int specificity() const;
  std::string qualifier_text() const;
};

struct DhcpOsRule {
  std::string os_name;
  std::vector<std::uint8_t> option_list;
};

enum class DbErrc { ParseError, DuplicateEntry, Io };

class DbError : public std::runtime_error {
 public:
  DbError(DbErrc code, std::size_t line, const std::string& what);
  DbErrc code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  DbErrc code_;
  std::size_t line_;
};

class OuiTable {
 public:
  /// Throws DbError(DuplicateEntry) for a repeated prefix.
  void add(const Oui& prefix, std::string vendor, std::size_t line = 0);
  const std::string* vendor(const Oui& prefix) const;
  bool is_apple(const Oui& prefix) const;
  std::size_t size() const { return vendors_.size(); }

 private:
  std::map<Oui, std::string> vendors_;
};

class DhcpOsRules {
 public:
  /// Throws DbError on duplicate names or empty option lists.
  void add(DhcpOsRule rule, std::size_t line = 0);
  const DhcpOsRule* find(std::string_view os_name) const;
  std::size_t size() const { return rules_.size(); }
  const std::map<std::string, DhcpOsRule, std::less<>>& rules() const { return rules_; }

 private:
  std::map<std::string, DhcpOsRule, std::less<>> rules_;
};

struct Identification {
  std::string model;
  bool by_oui = false;
  bool by_dhcp = false;
  std::size_t entry = 0;

  /// "wifi", "wifi+oui", "wifi+dhcp" or "wifi+oui+dhcp".
  std::string basis() const;
};

struct Ambiguous {
  std::vector<std::string> models;
};

struct NoMatch {};

using LookupResult = std::variant<NoMatch, Identification, Ambiguous>;

/// Immutable after construction; safe for concurrent lookups.
class Database {
 public:
  Database() = default;
  /// No duplicate checks; load_db and curation tools enforce those.
  Database(std::vector<DbEntry> entries, DhcpOsRules rules = {});

  const std::vector<DbEntry>& entries() const { return entries_; }
  const DhcpOsRules& dhcp_rules() const { return rules_; }
  std::vector<std::size_t> candidates(std::string_view wifi4) const;

  /// Copy with an additional entry.
  Database with_entry(DbEntry entry) const;

 private:
  std::vector<DbEntry> entries_;
  DhcpOsRules rules_;
  std::unordered_multimap<std::string, std::size_t> by_signature_;
};

/// Parses records without rejecting duplicates. Throws DbError(ParseError).
std::vector<DbEntry> parse_db_records(std::istream& in);
/// parse_db_records plus duplicate (wifi4, qualifiers) rejection.
Database parse_db(std::istream& in, DhcpOsRules rules = {});
Database load_db(const std::filesystem::path& file, DhcpOsRules rules = {});

OuiTable parse_oui_table(std::istream& in);
OuiTable load_oui_table(const std::filesystem::path& file);

DhcpOsRules parse_dhcp_os_rules(std::istream& in);
DhcpOsRules load_dhcp_os_rules(const std::filesystem::path& file);

/// Exact-match lookup with qualifier resolution; specificity dhcp > oui > none.
LookupResult lookup(const Database& db, std::string_view wifi4, const MacAddress& mac,
                    const std::optional<std::string>& dhcp_sig);

enum class Criterion { DescriptiveWps, DistinctiveDhcp, NonAppleOui };

std::string to_string(Criterion criterion);

struct ValidationPolicy {
  std::vector<std::string> common_os_denylist{"Android", "Windows"};
};

struct Validation {
  bool accepted = false;
  std::vector<Criterion> satisfied;
  /// Indices of existing entries the candidate would be ambiguous with.
  std::vector<std::size_t> conflicts;
  /// Why each criterion failed, or which entries conflict. Empty when accepted.
  std::string reason;
};

/// Distinctiveness check for a candidate entry. `skip` excludes one existing
/// entry (the candidate itself when re-checking a loaded database).
Validation validate_entry(const Database& db, const DbEntry& candidate, const OuiTable& ouis,
                          const ValidationPolicy& policy = {}, std::optional<std::size_t> skip = std::nullopt);

/// True if some (mac, dhcp) input could satisfy both entries' qualifiers at
/// the same specificity.
bool entries_overlap(const DbEntry& a, const DbEntry& b, const DhcpOsRules& rules);

}  // namespace wifitax
