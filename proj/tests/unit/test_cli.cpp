#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "wifitax/cli.hpp"
#include "wifitax/ingest.hpp"
#include "wifitax/profiles.hpp"

using namespace wifitax;
using namespace wifitax::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtureDb = WIFITAX_DATA_DIR "/taxonomy.db";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cmd(const RunConfig& config) {
  std::ostringstream out, err;
  int code = run(config, out, err);
  return {code, out.str(), err.str()};
}

struct Workspace {
  Workspace() : dir(fs::temp_directory_path() / ("wifitax-cli-" + std::to_string(::getpid()))) {
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  fs::path file(const std::string& name, const std::string& content) const {
    std::ofstream(dir / name, std::ios::binary) << content;
    return dir / name;
  }

  // synth into <name>.pcap and <name>-dhcp.pcap
  std::vector<fs::path> synth(const std::string& profile, std::optional<std::string> mac = std::nullopt) const {
    RunConfig c;
    c.command = Command::Synth;
    c.profile = profile;
    c.out_path = dir / (profile + ".pcap");
    c.dhcp_out_path = dir / (profile + "-dhcp.pcap");
    if (mac) c.mac_override = MacAddress::parse(*mac);
    REQUIRE(run_cmd(c).code == exit_code::kOk);
    return {*c.out_path, *c.dhcp_out_path};
  }

  fs::path dir;
};

RunConfig config_for(Command command, std::vector<fs::path> pcaps, std::optional<fs::path> db = std::nullopt) {
  RunConfig c;
  c.command = command;
  c.pcap_paths = std::move(pcaps);
  c.db_path = std::move(db);
  return c;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string db_text(const std::string& body) { return "# test database\n" + body; }

}  // namespace

TEST_CASE("config validation") {
  RunConfig c;
  c.command = Command::Sign;
  CHECK(config_error(c));
  c.pcap_paths = {"x.pcap"};
  CHECK_FALSE(config_error(c));
  c.cache_capacity = 0;
  CHECK(config_error(c));

  c = RunConfig{};
  c.command = Command::Identify;
  c.pcap_paths = {"x.pcap"};
  CHECK(config_error(c));
  c.command = Command::DbCheck;
  CHECK(config_error(c));
  c.command = Command::Synth;
  c.profile = "all";
  CHECK(config_error(c));
  c.out_path = "x.pcap";
  CHECK_FALSE(config_error(c));
  c.mac_override = MacAddress{};
  CHECK(config_error(c));
  CHECK(run_cmd(c).code == exit_code::kUsage);
}

TEST_CASE("sign") {
  Workspace ws;
  SUBCASE("iPhone 5s") {
    auto files = ws.synth("iphone-5s-rrm");
    auto r = run_cmd(config_for(Command::Sign, {files[0]}));
    CHECK(r.code == 0);
    CHECK(r.out == "00:17:f2:05:50:02\t" + find_profile("iphone-5s-rrm")->canonical_wifi4() + "\t\n");
  }
  SUBCASE("DHCP seen before association is attached") {
    auto files = ws.synth("roku-hd-2500");
    auto records = read_pcap(files[1]);
    records[0].timestamp = Timestamp(0);
    write_pcap(files[1], linktype::kEthernet, records);
    auto r = run_cmd(config_for(Command::Sign, files));
    CHECK(r.out.ends_with("\tdhcp|1,3,6,15,12\n"));
  }
  SUBCASE("json lines") {
    auto files = ws.synth("nexus-7-2013");
    auto c = config_for(Command::Sign, {files[0]});
    c.output = OutputFormat::JsonLines;
    auto r = run_cmd(c);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["mac"] == "02:4e:37:20:13:01");
    CHECK(j["wifi4"] == find_profile("nexus-7-2013")->canonical_wifi4());
    CHECK(j["dhcp"].is_null());
  }
  SUBCASE("empty capture") {
    write_pcap(ws.dir / "empty.pcap", linktype::kIeee80211Radiotap, {});
    auto r = run_cmd(config_for(Command::Sign, {ws.dir / "empty.pcap"}));
    CHECK(r.code == 0);
    CHECK(r.out.empty());
  }
  SUBCASE("missing or invalid capture") {
    CHECK(run_cmd(config_for(Command::Sign, {ws.dir / "missing.pcap"})).code == exit_code::kIo);
    CHECK(run_cmd(config_for(Command::Sign, {ws.file("text.pcap", "not a capture")})).code == exit_code::kIo);
  }
}

TEST_CASE("identify") {
  Workspace ws;
  SUBCASE("all fixture devices") {
    auto r = run_cmd(config_for(Command::Identify, ws.synth("all"), kFixtureDb));
    CHECK(r.code == 0);
    auto out = lines(r.out);
    REQUIRE(out.size() == 16);
    CHECK(out.back() == "# identified 15/15");
    for (const auto& p : builtin_profiles()) {
      const auto prefix = p.mac.to_string() + "\t" + p.model + "\twifi";
      CHECK(std::any_of(out.begin(), out.end(), [&](const std::string& l) { return l.starts_with(prefix); }));
    }
  }
  SUBCASE("Moto E frames from a Sony address") {
    auto r = run_cmd(config_for(Command::Identify, ws.synth("moto-e-2", "58:48:22:aa:bb:cc"), kFixtureDb));
    CHECK(lines(r.out).front() == "58:48:22:aa:bb:cc\tSony Xperia Z Ultra\twifi+oui");
  }
  SUBCASE("device absent from the database") {
    auto db = ws.file("partial.db", db_text("Nexus 6P\t" + find_profile("nexus-6p")->canonical_wifi4() + "\n"));
    auto r = run_cmd(config_for(Command::Identify, ws.synth("lg-g4"), db));
    CHECK(r.out == "10:68:3f:04:00:01\tUNKNOWN\t-\n# identified 0/1\n");
  }
  SUBCASE("ambiguity is reported distinctly") {
    const auto sig = find_profile("nexus-6p")->canonical_wifi4();
    auto db = ws.file("twins.db", db_text("Nexus 6P\t" + sig + "\toui:024e36\nTwin\t" + sig + "\toui:024e36;oui:001018\n"));
    auto r = run_cmd(config_for(Command::Identify, ws.synth("nexus-6p"), db));
    CHECK(r.out == "02:4e:36:50:06:01\tAMBIGUOUS\tNexus 6P;Twin\n# identified 0/1\n");

    auto c = config_for(Command::Identify, ws.synth("nexus-6p"), db);
    c.output = OutputFormat::JsonLines;
    auto j = lines(run_cmd(c).out);
    CHECK(nlohmann::json::parse(j[0])["result"] == "ambiguous");
    CHECK(nlohmann::json::parse(j[1])["summary"]["total"] == 1);
  }
  SUBCASE("database failures") {
    auto pcaps = ws.synth("lg-g4");
    CHECK(run_cmd(config_for(Command::Identify, pcaps, ws.dir / "none.db")).code == exit_code::kIo);
    CHECK(run_cmd(config_for(Command::Identify, pcaps, ws.file("bad.db", "model only\n"))).code ==
          exit_code::kDbParse);
    auto c = config_for(Command::Identify, pcaps, kFixtureDb);
    c.oui_path = ws.file("bad-oui.tsv", "zzzzzz\tNobody\n");
    CHECK(run_cmd(c).code == exit_code::kDbParse);
    CHECK(run_cmd(config_for(Command::Identify, {ws.dir / "none.pcap"}, kFixtureDb)).code == exit_code::kIo);
  }
}

TEST_CASE("db-check") {
  Workspace ws;
  auto check = [](const fs::path& db) {
    RunConfig c;
    c.command = Command::DbCheck;
    c.db_path = db;
    return run_cmd(c);
  };
  const std::string plain = "wifi4|probe:0,1|assoc:0,1";

  CHECK(check(kFixtureDb).code == 0);
  CHECK(check(kFixtureDb).out.empty());

  auto r = check(ws.file("dup.db", db_text("A\t" + plain + "\nB\t" + plain + "\n")));
  CHECK(r.code == exit_code::kViolations);
  auto out = lines(r.out);
  REQUIRE(out.size() == 2);
  CHECK(out[0].starts_with("line 2\tA\tambiguous with B (line 3)"));
  CHECK(out[1].starts_with("line 3\tB\tambiguous with A (line 2)"));

  r = check(ws.file("apple.db", db_text("iPhone\t" + plain + "\toui:28cfe9\n")));
  CHECK(r.code == exit_code::kViolations);
  CHECK(r.out.find("belongs to Apple") != std::string::npos);

  r = check(ws.file("rule.db", db_text("Gadget\t" + plain + "\tdhcp:Plan 9\n")));
  CHECK(r.code == exit_code::kViolations);
  CHECK(r.out.find("not defined") != std::string::npos);

  CHECK(check(ws.file("broken.db", "A\twifi4|nope\n")).code == exit_code::kDbParse);
}

TEST_CASE("synth") {
  Workspace ws;
  RunConfig c;
  c.command = Command::Synth;
  c.profile = "iphone-8";
  c.out_path = ws.dir / "x.pcap";
  auto r = run_cmd(c);
  CHECK(r.code == exit_code::kUnknownProfile);
  CHECK(r.err.find("iphone-5s, ") != std::string::npos);
  CHECK(r.err.find("nexus-7-2013") != std::string::npos);
  CHECK_FALSE(fs::exists(ws.dir / "x.pcap"));

  c.profile = "galaxy-s5";
  c.out_path = ws.dir / "missing-dir" / "x.pcap";
  CHECK(run_cmd(c).code == exit_code::kIo);
}

TEST_CASE("stats") {
  Workspace ws;
  auto stat = [](std::vector<fs::path> pcaps, std::optional<fs::path> db = std::nullopt) {
    return run_cmd(config_for(Command::Stats, std::move(pcaps), std::move(db)));
  };

  write_pcap(ws.dir / "empty.pcap", linktype::kIeee80211Radiotap, {});
  CHECK(stat({ws.dir / "empty.pcap"}).out ==
        "total_clients\t0\nemitted_signatures\t0\ndistinct_signatures\t0\nmalformed_frames\t0\n");

  auto r = stat(ws.synth("all"), kFixtureDb);
  CHECK(r.out ==
        "total_clients\t15\nemitted_signatures\t15\ndistinct_signatures\t11\nidentified\t15\nambiguous\t0\n"
        "malformed_frames\t0\n");

  // One device probing twice with identical frames.
  const auto* p = find_profile("iphone-6");
  auto capture = build_fixture_capture({p});
  auto again = capture.wifi.front();
  again.timestamp += std::chrono::seconds(5);
  capture.wifi.push_back(again);
  write_pcap(ws.dir / "twice.pcap", linktype::kIeee80211Radiotap, capture.wifi);
  r = stat({ws.dir / "twice.pcap"});
  CHECK(lines(r.out)[2] == "distinct_signatures\t1");

  auto c = config_for(Command::Stats, {ws.dir / "twice.pcap"});
  c.output = OutputFormat::JsonLines;
  auto j = nlohmann::json::parse(run_cmd(c).out);
  CHECK(j["total_clients"] == 1);
  CHECK_FALSE(j.contains("identified"));

  CHECK(stat({ws.dir / "absent.pcap"}).code == exit_code::kIo);
}

TEST_CASE("byte-identical inputs give byte-identical outputs") {
  Workspace ws;
  auto pcaps = ws.synth("all");
  auto first = run_cmd(config_for(Command::Identify, pcaps, kFixtureDb));
  auto second = run_cmd(config_for(Command::Identify, pcaps, kFixtureDb));
  CHECK(first.out == second.out);
  auto sign_a = run_cmd(config_for(Command::Sign, pcaps));
  auto sign_b = run_cmd(config_for(Command::Sign, pcaps));
  CHECK(sign_a.out == sign_b.out);
  CHECK(lines(sign_a.out).size() == 15);
}
