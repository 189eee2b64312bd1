#include "wifitax/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>

#include "json.hpp"
#include "wifitax/builtin.hpp"
#include "wifitax/database.hpp"
#include "wifitax/ingest.hpp"
#include "wifitax/profiles.hpp"

namespace wifitax::cli {

namespace {

using nlohmann::json;

// Runs a command body, turning load failures into the documented exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const PcapError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kIo;
  } catch (const DbError& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == DbErrc::Io ? exit_code::kIo : exit_code::kDbParse;
  }
}

OuiTable oui_table_for(const RunConfig& config) {
  return config.oui_path ? load_oui_table(*config.oui_path) : builtin_oui_table();
}

DhcpOsRules dhcp_rules_for(const RunConfig& config) {
  return config.dhcp_map_path ? load_dhcp_os_rules(*config.dhcp_map_path) : builtin_dhcp_os_rules();
}

std::vector<DbEntry> read_db_records(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DbError(DbErrc::Io, 0, "cannot open " + file.string());
  return parse_db_records(in);
}

// Replays every capture through a fresh tracker.
struct Replay {
  explicit Replay(std::size_t cache_capacity) : tracker(cache_capacity) {}

  ClientTracker tracker;
  IngestCounters counters;
};

Replay replay(const RunConfig& config, const Ingestor::SignatureSink& sink = {}) {
  Replay result(config.cache_capacity);
  Ingestor ingestor(result.tracker, sink);
  for (const auto& record : read_captures(config.pcap_paths)) ingestor.process(record);
  result.counters = ingestor.counters();
  return result;
}

std::string known_profiles() {
  std::string names;
  for (const auto& p : builtin_profiles()) names += (names.empty() ? "" : ", ") + p.name;
  return names + ", all";
}

}  // namespace

std::optional<std::string> config_error(const RunConfig& config) {
  const bool needs_pcap =
      config.command == Command::Sign || config.command == Command::Identify || config.command == Command::Stats;
  if (needs_pcap && config.pcap_paths.empty()) return "--pcap is required";
  if ((config.command == Command::Identify || config.command == Command::DbCheck) && !config.db_path) {
    return "--db is required";
  }
  if (config.cache_capacity == 0) return "--cache must be a positive integer";
  if (config.command == Command::Synth) {
    if (config.profile.empty()) return "--profile is required";
    if (!config.out_path) return "--out is required";
    if (config.profile == "all" && config.mac_override) return "--mac cannot be combined with --profile all";
  }
  return std::nullopt;
}

int cmd_sign(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto sink = [&](const ClientSignature& sig) {
      if (config.output == OutputFormat::JsonLines) {
        json line{{"mac", sig.mac.to_string()}, {"wifi4", sig.wifi4}, {"dhcp", nullptr}};
        if (sig.dhcp) line["dhcp"] = *sig.dhcp;
        out << line.dump() << '\n';
      } else {
        out << sig.mac.to_string() << '\t' << sig.wifi4 << '\t' << sig.dhcp.value_or("") << '\n';
      }
    };
    const auto result = replay(config, sink);
    if (result.counters.malformed) err << "warning: " << result.counters.malformed << " malformed records skipped\n";
    return exit_code::kOk;
  });
}

int cmd_identify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto ouis = oui_table_for(config);
    const auto db = load_db(*config.db_path, dhcp_rules_for(config));
    const auto result = replay(config);

    std::size_t total = 0, identified = 0;
    for (const auto& [mac, record] : result.tracker.clients()) {
      if (!record.last_emitted) continue;
      ++total;
      const auto found = identify_client(record, db);
      std::string model = "UNKNOWN", basis = "-";
      json candidates = json::array();
      if (const auto* id = std::get_if<Identification>(&found)) {
        ++identified;
        model = id->model;
        basis = id->basis();
      } else if (const auto* amb = std::get_if<Ambiguous>(&found)) {
        model = "AMBIGUOUS";
        basis.clear();
        for (const auto& m : amb->models) {
          basis += (basis.empty() ? "" : ";") + m;
          candidates.push_back(m);
        }
      }

      if (config.output == OutputFormat::JsonLines) {
        json line{{"mac", mac.to_string()}};
        if (std::holds_alternative<Identification>(found)) {
          line["result"] = "identified";
          line["model"] = model;
          line["basis"] = basis;
        } else if (std::holds_alternative<Ambiguous>(found)) {
          line["result"] = "ambiguous";
          line["candidates"] = candidates;
        } else {
          line["result"] = "unknown";
        }
        if (const auto* vendor = ouis.vendor(mac.oui())) line["vendor"] = *vendor;
        out << line.dump() << '\n';
      } else {
        out << mac.to_string() << '\t' << model << '\t' << basis << '\n';
      }
    }

    if (config.output == OutputFormat::JsonLines) {
      out << json{{"summary", {{"identified", identified}, {"total", total}}}}.dump() << '\n';
    } else {
      out << "# identified " << identified << '/' << total << '\n';
    }
    return exit_code::kOk;
  });
}

int cmd_db_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto ouis = oui_table_for(config);
    const auto rules = dhcp_rules_for(config);
    const Database db(read_db_records(*config.db_path), rules);

    std::size_t violations = 0;
    auto report = [&](const DbEntry& entry, const std::string& reason) {
      ++violations;
      if (config.output == OutputFormat::JsonLines) {
        out << json{{"line", entry.line}, {"model", entry.model}, {"reason", reason}}.dump() << '\n';
      } else {
        out << "line " << entry.line << '\t' << entry.model << '\t' << reason << '\n';
      }
    };

    for (std::size_t i = 0; i < db.entries().size(); ++i) {
      const auto& entry = db.entries()[i];
      if (entry.dhcp_os_qualifier && !rules.find(*entry.dhcp_os_qualifier)) {
        report(entry, "dhcp rule '" + *entry.dhcp_os_qualifier + "' is not defined");
        continue;
      }
      const auto verdict = validate_entry(db, entry, ouis, {}, i);
      if (!verdict.accepted) report(entry, verdict.reason);
    }
    err << db.entries().size() << " entries, " << violations << " violations\n";
    return violations ? exit_code::kViolations : exit_code::kOk;
  });
}

int cmd_synth(const RunConfig& config, std::ostream&, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<const DeviceProfile*> selected;
    std::optional<DeviceProfile> overridden;
    if (config.profile == "all") {
      for (const auto& p : builtin_profiles()) selected.push_back(&p);
    } else if (const auto* p = find_profile(config.profile)) {
      if (config.mac_override) {
        overridden = *p;
        overridden->mac = *config.mac_override;
        p = &*overridden;
      }
      selected.push_back(p);
    } else {
      err << "error: unknown profile '" << config.profile << "'\nknown profiles: " << known_profiles() << '\n';
      return exit_code::kUnknownProfile;
    }

    const auto capture = build_fixture_capture(selected);
    write_pcap(*config.out_path, linktype::kIeee80211Radiotap, capture.wifi);
    if (config.dhcp_out_path) write_pcap(*config.dhcp_out_path, linktype::kEthernet, capture.dhcp);
    return exit_code::kOk;
  });
}

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::optional<Database> db;
    if (config.db_path) db = load_db(*config.db_path, dhcp_rules_for(config));
    const auto result = replay(config);
    const auto summary = stats(result.tracker, db ? &*db : nullptr);

    std::vector<std::pair<std::string, std::size_t>> rows{
        {"total_clients", summary.total_clients},
        {"emitted_signatures", result.tracker.emitted_count()},
        {"distinct_signatures", summary.distinct_signatures},
    };
    if (db) {
      rows.emplace_back("identified", summary.identified);
      rows.emplace_back("ambiguous", summary.ambiguous);
    }
    rows.emplace_back("malformed_frames", result.counters.malformed);

    if (config.output == OutputFormat::JsonLines) {
      json line = json::object();
      for (const auto& [key, value] : rows) line[key] = value;
      out << line.dump() << '\n';
    } else {
      for (const auto& [key, value] : rows) out << key << '\t' << value << '\n';
    }
    return exit_code::kOk;
  });
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (auto problem = config_error(config)) {
    err << "error: " << *problem << '\n';
    return exit_code::kUsage;
  }
  switch (config.command) {
    case Command::Sign:
      return cmd_sign(config, out, err);
    case Command::Identify:
      return cmd_identify(config, out, err);
    case Command::DbCheck:
      return cmd_db_check(config, out, err);
    case Command::Synth:
      return cmd_synth(config, out, err);
    case Command::Stats:
      return cmd_stats(config, out, err);
  }
  return exit_code::kUsage;
}

}  // namespace wifitax::cli
