#include "wifitax/database.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "wifitax/dhcp.hpp"
#include "wifitax/signature.hpp"

namespace wifitax {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return out;
    s.remove_prefix(pos + 1);
  }
}

// Calls fn(line_number, line) for each non-blank, non-comment line.
template <class Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    const auto content = trim(view);
    if (content.empty() || content.front() == '#') continue;
    fn(number, view);
  }
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw DbError(DbErrc::ParseError, line, what);
}

std::ifstream open_or_throw(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DbError(DbErrc::Io, 0, "cannot open " + file.string());
  return in;
}

bool same_qualifiers(const DbEntry& a, const DbEntry& b) {
  return a.oui_qualifiers == b.oui_qualifiers && a.dhcp_os_qualifier == b.dhcp_os_qualifier;
}

bool dhcp_passes(const DbEntry& entry, const DhcpOsRules& rules, const std::optional<std::vector<std::uint8_t>>& observed) {
  if (!entry.dhcp_os_qualifier) return true;
  if (!observed) return false;
  const auto* rule = rules.find(*entry.dhcp_os_qualifier);
  return rule && rule->option_list == *observed;
}

}  // namespace

DbError::DbError(DbErrc code, std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), code_(code), line_(line) {}

int DbEntry::specificity() const {
  if (dhcp_os_qualifier) return 2;
  if (!oui_qualifiers.empty()) return 1;
  return 0;
}

std::string DbEntry::qualifier_text() const {
  std::string out;
  for (const auto& oui : oui_qualifiers) {
    if (!out.empty()) out.push_back(';');
    out += "oui:" + oui.to_hex();
  }
  if (dhcp_os_qualifier) {
    if (!out.empty()) out.push_back(';');
    out += "dhcp:" + *dhcp_os_qualifier;
  }
  return out;
}

void OuiTable::add(const Oui& prefix, std::string vendor, std::size_t line) {
  if (!vendors_.emplace(prefix, std::move(vendor)).second) {
    throw DbError(DbErrc::DuplicateEntry, line, "duplicate OUI " + prefix.to_hex());
  }
}

const std::string* OuiTable::vendor(const Oui& prefix) const {
  auto it = vendors_.find(prefix);
  return it == vendors_.end() ? nullptr : &it->second;
}

bool OuiTable::is_apple(const Oui& prefix) const {
  const auto* name = vendor(prefix);
  return name && lower(*name).starts_with("apple");
}

void DhcpOsRules::add(DhcpOsRule rule, std::size_t line) {
  if (rule.os_name.empty()) throw DbError(DbErrc::ParseError, line, "empty OS name");
  if (rule.option_list.empty()) throw DbError(DbErrc::ParseError, line, "empty option list for " + rule.os_name);
  auto name = rule.os_name;
  if (!rules_.emplace(std::move(name), std::move(rule)).second) {
    throw DbError(DbErrc::DuplicateEntry, line, "duplicate DHCP rule");
  }
}

const DhcpOsRule* DhcpOsRules::find(std::string_view os_name) const {
  auto it = rules_.find(os_name);
  return it == rules_.end() ? nullptr : &it->second;
}

std::string Identification::basis() const {
  std::string out = "wifi";
  if (by_oui) out += "+oui";
  if (by_dhcp) out += "+dhcp";
  return out;
}

Database::Database(std::vector<DbEntry> entries, DhcpOsRules rules)
    : entries_(std::move(entries)), rules_(std::move(rules)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) by_signature_.emplace(entries_[i].wifi4, i);
}

std::vector<std::size_t> Database::candidates(std::string_view wifi4) const {
  std::vector<std::size_t> out;
  auto [first, last] = by_signature_.equal_range(std::string(wifi4));
  for (auto it = first; it != last; ++it) out.push_back(it->second);
  std::sort(out.begin(), out.end());
  return out;
}

Database Database::with_entry(DbEntry entry) const {
  auto entries = entries_;
  entries.push_back(std::move(entry));
  return Database(std::move(entries), rules_);
}

std::vector<DbEntry> parse_db_records(std::istream& in) {
  std::vector<DbEntry> entries;
  for_each_record(in, [&](std::size_t line, std::string_view text) {
    const auto cols = split(text, '\t');
    if (cols.size() < 2 || cols.size() > 3) parse_error(line, "expected model<TAB>signature[<TAB>qualifiers]");
    DbEntry entry;
    entry.line = line;
    entry.model = std::string(trim(cols[0]));
    entry.wifi4 = std::string(trim(cols[1]));
    if (entry.model.empty()) parse_error(line, "empty model name");
    if (!matches_signature_grammar(entry.wifi4)) parse_error(line, "signature does not match the wifi4 grammar");
    if (cols.size() == 3) {
      for (auto item : split(cols[2], ';')) {
        item = trim(item);
        if (item.empty()) continue;
        if (item.starts_with("oui:")) {
          auto oui = Oui::from_hex(item.substr(4));
          if (!oui) parse_error(line, "bad OUI qualifier '" + std::string(item) + "'");
          entry.oui_qualifiers.insert(*oui);
        } else if (item.starts_with("dhcp:")) {
          auto name = trim(item.substr(5));
          if (name.empty()) parse_error(line, "empty dhcp qualifier");
          if (entry.dhcp_os_qualifier) parse_error(line, "more than one dhcp qualifier");
          entry.dhcp_os_qualifier = std::string(name);
        } else {
          parse_error(line, "unknown qualifier '" + std::string(item) + "'");
        }
      }
    }
    entries.push_back(std::move(entry));
  });
  return entries;
}

Database parse_db(std::istream& in, DhcpOsRules rules) {
  auto entries = parse_db_records(in);
  std::unordered_multimap<std::string_view, std::size_t> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto [first, last] = seen.equal_range(entries[i].wifi4);
    for (auto it = first; it != last; ++it) {
      const auto& earlier = entries[it->second];
      if (same_qualifiers(earlier, entries[i])) {
        throw DbError(DbErrc::DuplicateEntry, entries[i].line,
                      "same signature and qualifiers as line " + std::to_string(earlier.line) + " (" +
                          earlier.model + ")");
      }
    }
    seen.emplace(entries[i].wifi4, i);
  }
  return Database(std::move(entries), std::move(rules));
}

Database load_db(const std::filesystem::path& file, DhcpOsRules rules) {
  auto in = open_or_throw(file);
  return parse_db(in, std::move(rules));
}

OuiTable parse_oui_table(std::istream& in) {
  OuiTable table;
  for_each_record(in, [&](std::size_t line, std::string_view text) {
    const auto tab = text.find('\t');
    if (tab == std::string_view::npos) parse_error(line, "expected prefix<TAB>vendor");
    auto oui = Oui::from_hex(trim(text.substr(0, tab)));
    if (!oui) parse_error(line, "malformed OUI '" + std::string(text.substr(0, tab)) + "'");
    auto vendor = trim(text.substr(tab + 1));
    if (vendor.empty()) parse_error(line, "empty vendor name");
    table.add(*oui, std::string(vendor), line);
  });
  return table;
}

OuiTable load_oui_table(const std::filesystem::path& file) {
  auto in = open_or_throw(file);
  return parse_oui_table(in);
}

DhcpOsRules parse_dhcp_os_rules(std::istream& in) {
  DhcpOsRules rules;
  for_each_record(in, [&](std::size_t line, std::string_view text) {
    const auto tab = text.find('\t');
    if (tab == std::string_view::npos) parse_error(line, "expected os-name<TAB>option-list");
    auto options = parse_option_list(trim(text.substr(tab + 1)));
    if (!options) parse_error(line, "malformed option list");
    rules.add({std::string(trim(text.substr(0, tab))), std::move(*options)}, line);
  });
  return rules;
}

DhcpOsRules load_dhcp_os_rules(const std::filesystem::path& file) {
  auto in = open_or_throw(file);
  return parse_dhcp_os_rules(in);
}

LookupResult lookup(const Database& db, std::string_view wifi4, const MacAddress& mac,
                    const std::optional<std::string>& dhcp_sig) {
  std::optional<std::vector<std::uint8_t>> observed;
  if (dhcp_sig) observed = parse_option_list(*dhcp_sig);

  int best = -1;
  std::vector<std::size_t> winners;
  for (auto index : db.candidates(wifi4)) {
    const auto& entry = db.entries()[index];
    if (!entry.oui_qualifiers.empty() && !entry.oui_qualifiers.contains(mac.oui())) continue;
    if (!dhcp_passes(entry, db.dhcp_rules(), observed)) continue;
    const int rank = entry.specificity();
    if (rank > best) {
      best = rank;
      winners.clear();
    }
    if (rank == best) winners.push_back(index);
  }

  if (winners.empty()) return NoMatch{};
  if (winners.size() > 1) {
    Ambiguous out;
    for (auto i : winners) out.models.push_back(db.entries()[i].model);
    return out;
  }
  const auto& entry = db.entries()[winners.front()];
  return Identification{entry.model, !entry.oui_qualifiers.empty(), entry.dhcp_os_qualifier.has_value(),
                        winners.front()};
}

std::string to_string(Criterion criterion) {
  switch (criterion) {
    case Criterion::DescriptiveWps: return "descriptive-wps";
    case Criterion::DistinctiveDhcp: return "distinctive-dhcp";
    case Criterion::NonAppleOui: return "non-apple-oui";
  }
  return "unknown";
}

bool entries_overlap(const DbEntry& a, const DbEntry& b, const DhcpOsRules& rules) {
  if (a.wifi4 != b.wifi4 || a.specificity() != b.specificity()) return false;
  bool oui_overlap = a.oui_qualifiers.empty() || b.oui_qualifiers.empty();
  for (const auto& oui : a.oui_qualifiers) oui_overlap = oui_overlap || b.oui_qualifiers.contains(oui);
  bool dhcp_overlap = !a.dhcp_os_qualifier || !b.dhcp_os_qualifier || *a.dhcp_os_qualifier == *b.dhcp_os_qualifier;
  if (!dhcp_overlap) {
    const auto* ra = rules.find(*a.dhcp_os_qualifier);
    const auto* rb = rules.find(*b.dhcp_os_qualifier);
    dhcp_overlap = ra && rb && ra->option_list == rb->option_list;
  }
  return oui_overlap && dhcp_overlap;
}

Validation validate_entry(const Database& db, const DbEntry& candidate, const OuiTable& ouis,
                          const ValidationPolicy& policy, std::optional<std::size_t> skip) {
  Validation result;
  std::vector<std::string> failures;

  // (a) a descriptive WPS model name is distinctive on its own
  const auto names = wps_values(candidate.wifi4);
  const bool descriptive = std::any_of(names.begin(), names.end(), [](const std::string& name) {
    return name.size() >= 2 && name.find_first_not_of('_') != std::string::npos;
  });
  if (descriptive) {
    result.satisfied.push_back(Criterion::DescriptiveWps);
  } else {
    failures.push_back(names.empty() ? "no wps model name" : "wps model name '" + names.front() + "' is not descriptive");
  }

  // (b) DHCP OS qualifier, unless the OS is common across manufacturers
  if (candidate.dhcp_os_qualifier) {
    const auto os = lower(*candidate.dhcp_os_qualifier);
    const bool common = std::any_of(policy.common_os_denylist.begin(), policy.common_os_denylist.end(),
                                    [&](const std::string& deny) { return lower(deny) == os; });
    if (common) {
      failures.push_back("dhcp os '" + *candidate.dhcp_os_qualifier + "' is common across manufacturers");
    } else {
      result.satisfied.push_back(Criterion::DistinctiveDhcp);
    }
  } else {
    failures.push_back("no dhcp qualifier");
  }

  // (c) OUI qualifier, never for Apple
  if (candidate.oui_qualifiers.empty()) {
    failures.push_back("no oui qualifier");
  } else {
    auto apple = std::find_if(candidate.oui_qualifiers.begin(), candidate.oui_qualifiers.end(),
                              [&](const Oui& oui) { return ouis.is_apple(oui); });
    if (apple != candidate.oui_qualifiers.end()) {
      failures.push_back("oui " + apple->to_hex() + " belongs to Apple");
    } else {
      result.satisfied.push_back(Criterion::NonAppleOui);
    }
  }

  for (auto index : db.candidates(candidate.wifi4)) {
    if (skip && *skip == index) continue;
    if (entries_overlap(candidate, db.entries()[index], db.dhcp_rules())) result.conflicts.push_back(index);
  }

  if (!result.conflicts.empty()) {
    std::ostringstream msg;
    msg << "ambiguous with";
    for (auto index : result.conflicts) {
      const auto& other = db.entries()[index];
      msg << ' ' << other.model;
      if (other.line) msg << " (line " << other.line << ")";
    }
    result.reason = msg.str();
    return result;
  }
  if (result.satisfied.empty()) {
    std::string joined;
    for (const auto& f : failures) joined += (joined.empty() ? "" : "; ") + f;
    result.reason = joined;
    return result;
  }
  result.accepted = true;
  return result;
}

}  // namespace wifitax
