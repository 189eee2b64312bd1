#pragma once

// Subcommand implementations behind the wifi-taxonomy tool. Each command
// writes data to `out`, diagnostics to `err`, and returns the process exit
// code.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wifitax/bytes.hpp"
#include "wifitax/tracker.hpp"

namespace wifitax::cli {

enum class Command { Sign, Identify, DbCheck, Synth, Stats };
enum class OutputFormat { Tsv, JsonLines };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kViolations = 1;
inline constexpr int kIo = 2;
inline constexpr int kDbParse = 3;
inline constexpr int kUnknownProfile = 4;
inline constexpr int kUsage = 64;
}  // namespace exit_code

struct RunConfig {
  Command command = Command::Sign;
  std::vector<std::filesystem::path> pcap_paths;
  std::optional<std::filesystem::path> db_path;
  std::optional<std::filesystem::path> oui_path;
  std::optional<std::filesystem::path> dhcp_map_path;
  std::size_t cache_capacity = kDefaultProbeCacheCapacity;
  OutputFormat output = OutputFormat::Tsv;

  // synth
  std::string profile;
  std::optional<std::filesystem::path> out_path;
  std::optional<std::filesystem::path> dhcp_out_path;
  std::optional<MacAddress> mac_override;
};

/// Describes the first missing or invalid setting for the command, if any.
std::optional<std::string> config_error(const RunConfig& config);

int cmd_sign(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_identify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_db_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_synth(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Validates the config, then dispatches on config.command.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace wifitax::cli
