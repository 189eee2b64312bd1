#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "wifitax/cli.hpp"

using wifitax::cli::Command;
using wifitax::cli::OutputFormat;

int main(int argc, char** argv) {
  CLI::App app{"Passive Wi-Fi client taxonomy: signatures from probe/association requests and DHCP."};
  app.require_subcommand(1);

  wifitax::cli::RunConfig config;
  std::string mac_text;
  const std::map<std::string, OutputFormat> formats{{"tsv", OutputFormat::Tsv}, {"jsonl", OutputFormat::JsonLines}};

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", config.output, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
        ->option_text("tsv|jsonl (default: tsv)");
  };
  auto add_pcap = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--pcap", config.pcap_paths, "Capture file(s); records are merged by timestamp");
    if (required) opt->required();
    sub->add_option("--cache", config.cache_capacity, "Probe cache capacity")->check(CLI::PositiveNumber);
  };

  auto* sign = app.add_subcommand("sign", "Print one line per emitted client signature");
  add_pcap(sign, true);
  add_format(sign);

  auto* identify = app.add_subcommand("identify", "Identify each client against a signature database");
  add_pcap(identify, true);
  identify->add_option("--db", config.db_path, "Signature database")->required();
  identify->add_option("--oui", config.oui_path, "OUI vendor table (default: built-in)");
  identify->add_option("--dhcp-map", config.dhcp_map_path, "DHCP OS rules (default: built-in)");
  add_format(identify);

  auto* db_check = app.add_subcommand("db-check", "Check every database entry for distinctiveness");
  db_check->add_option("--db", config.db_path, "Signature database")->required();
  db_check->add_option("--oui", config.oui_path, "OUI vendor table (default: built-in)");
  db_check->add_option("--dhcp-map", config.dhcp_map_path, "DHCP OS rules (default: built-in)");
  add_format(db_check);

  auto* synth = app.add_subcommand("synth", "Write a capture of a built-in device profile");
  synth->add_option("--profile", config.profile, "Profile name, or 'all'")->required();
  synth->add_option("--out", config.out_path, "Radiotap pcap to write")->required();
  synth->add_option("--dhcp-out", config.dhcp_out_path, "Ethernet pcap for the DHCP Discover");
  synth->add_option("--mac", mac_text, "Override the profile's source address");

  auto* stats = app.add_subcommand("stats", "Print client and signature counters");
  add_pcap(stats, true);
  stats->add_option("--db", config.db_path, "Signature database; adds identification counts");
  stats->add_option("--dhcp-map", config.dhcp_map_path, "DHCP OS rules (default: built-in)");
  add_format(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wifitax::cli::exit_code::kUsage;
  }

  if (*sign) config.command = Command::Sign;
  if (*identify) config.command = Command::Identify;
  if (*db_check) config.command = Command::DbCheck;
  if (*synth) config.command = Command::Synth;
  if (*stats) config.command = Command::Stats;

  if (!mac_text.empty()) {
    config.mac_override = wifitax::MacAddress::parse(mac_text);
    if (!config.mac_override) {
      std::cerr << "error: --mac: not a MAC address: " << mac_text << '\n';
      return wifitax::cli::exit_code::kUsage;
    }
  }
  return wifitax::cli::run(config, std::cout, std::cerr);
}
