#include <set>

#include "doctest.h"
#include "wifitax/profiles.hpp"
#include "wifitax/signature.hpp"

using namespace wifitax;

namespace {

std::string sign(const DeviceProfile& p) {
  auto probe = parse_management_frame(wrap_radiotap(synthesize_frame(p.probe_frame())), Encapsulation::Radiotap);
  auto assoc = parse_management_frame(wrap_radiotap(synthesize_frame(p.assoc_frame())), Encapsulation::Radiotap);
  return compose_signature(extract_profile(probe), extract_profile(assoc));
}

}  // namespace

TEST_CASE("every profile signs to its canonical string") {
  REQUIRE(builtin_profiles().size() == 15);
  for (const auto& p : builtin_profiles()) {
    CAPTURE(p.name);
    CHECK(sign(p) == p.canonical_wifi4());
    CHECK(matches_signature_grammar(p.canonical_wifi4()));
  }
}

TEST_CASE("profile names and addresses are unique") {
  std::set<std::string> names;
  std::set<MacAddress> macs;
  for (const auto& p : builtin_profiles()) {
    CHECK(names.insert(p.name).second);
    CHECK(macs.insert(p.mac).second);
  }
  CHECK(find_profile("nexus-7-2013")->model == "Nexus 7 (2013)");
  CHECK_FALSE(find_profile("iphone-7"));
}

TEST_CASE("corrections") {
  for (const auto& p : builtin_profiles()) {
    CAPTURE(p.name);
    for (const auto& c : p.corrections) CHECK(p.published_wifi4.find(c.from) != std::string::npos);
    const auto canonical = p.canonical_wifi4();
    for (const char* variant : {"htag:", "htmc:", "mscs:"}) CHECK(canonical.find(variant) == std::string::npos);
  }
  CHECK(apply_corrections("htag:17,htag:17", {{"htag:", "htagg:", ""}}) == "htagg:17,htagg:17");
  CHECK(apply_corrections("htagg:17", {{"htag:", "htagg:", ""}}) == "htagg:17");
}

TEST_CASE("WPS names") {
  CHECK(find_profile("nexus-7-2013")->canonical_wifi4().find(",wps:Nexus_7|") != std::string::npos);
  CHECK(find_profile("nexus-6p")->canonical_wifi4().find(",wps:Nexus_6P|") != std::string::npos);
}

TEST_CASE("fixture capture layout") {
  using namespace std::chrono_literals;
  std::vector<const DeviceProfile*> two{find_profile("iphone-5s"), find_profile("roku-hd-2500")};
  auto capture = build_fixture_capture(two, Timestamp(0));
  REQUIRE(capture.wifi.size() == 4);
  REQUIRE(capture.dhcp.size() == 2);
  CHECK(capture.wifi[1].timestamp == 200ms);
  CHECK(capture.wifi[2].timestamp == 10s);
  CHECK(capture.dhcp[1].timestamp == 11s);
  for (const auto& r : capture.wifi) CHECK(r.link_type == linktype::kIeee80211Radiotap);
  for (const auto& r : capture.dhcp) CHECK(r.link_type == linktype::kEthernet);
}
