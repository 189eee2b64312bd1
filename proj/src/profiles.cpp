#include "wifitax/profiles.hpp"

#include <stdexcept>

#include "wifitax/dhcp.hpp"

namespace wifitax {

namespace {

Bytes hex(std::string_view text) {
  auto bytes = parse_hex(text);
  if (!bytes) throw std::logic_error("bad hex literal in profile table: " + std::string(text));
  return *bytes;
}

InformationElement ie(std::uint8_t id, std::string_view body_hex = "") { return {id, hex(body_hex)}; }

InformationElement vendor(std::string_view oui_hex, std::uint8_t subtype, std::string_view data_hex = "") {
  Bytes body = hex(oui_hex);
  body.push_back(subtype);
  auto data = hex(data_hex);
  body.insert(body.end(), data.begin(), data.end());
  return {kVendorSpecificId, std::move(body)};
}

// HT Capabilities: cap info (2), A-MPDU params (1), MCS set (16), ext cap (2),
// TxBF (4), ASEL (1). Callers give the first seven bytes; the rest is zero.
InformationElement ht(std::string_view first_seven) {
  Bytes body = hex(first_seven);
  body.resize(26, 0);
  return {ie::kHtCapabilities, std::move(body)};
}

// Epigram pre-standard HT Capabilities carries the same 26-byte body.
InformationElement epigram_ht(std::string_view first_seven) {
  auto body = ht(first_seven).payload;
  Bytes payload = hex("00904c33");
  payload.insert(payload.end(), body.begin(), body.end());
  return {kVendorSpecificId, std::move(payload)};
}

void wps_attr(Bytes& out, std::uint16_t type, std::string_view value) {
  append_be16(out, type);
  append_be16(out, static_cast<std::uint16_t>(value.size()));
  out.insert(out.end(), value.begin(), value.end());
}

void wps_attr(Bytes& out, std::uint16_t type, const Bytes& value) {
  append_be16(out, type);
  append_be16(out, static_cast<std::uint16_t>(value.size()));
  out.insert(out.end(), value.begin(), value.end());
}

// WPS probe-request IE. Device Name deliberately differs from Model Name.
InformationElement wps(std::string_view manufacturer, std::string_view model_name, std::string_view device_name) {
  Bytes body = hex("0050f204");
  wps_attr(body, 0x104a, hex("10"));                                // version
  wps_attr(body, 0x103a, hex("00"));                                // request type
  wps_attr(body, 0x1008, hex("3148"));                              // config methods
  wps_attr(body, 0x1047, hex("5b2c1e7fc0a84a1d9d3f2b6a41c0de01"));  // UUID-E
  wps_attr(body, 0x1054, hex("000a0050f2040005"));                  // primary device type
  wps_attr(body, 0x103c, hex("03"));                                // RF bands
  wps_attr(body, 0x1002, hex("0000"));                              // association state
  wps_attr(body, 0x1009, hex("0000"));                              // configuration error
  wps_attr(body, 0x1012, hex("0000"));                              // device password id
  wps_attr(body, 0x1021, manufacturer);
  wps_attr(body, kWpsAttrModelName, model_name);
  wps_attr(body, 0x1024, "1");  // model number
  wps_attr(body, kWpsAttrDeviceName, device_name);
  return {kVendorSpecificId, std::move(body)};
}

// Filler element bodies; only their presence and order reach the signature.
const char* const kRates24 = "02040b16";
const char* const kRates5 = "8c129824b048606c";
const char* const kExtRates = "0c1218243048606c";
const char* const kChannel = "06";
const char* const kChannels5 = "240434046404950584";  // (first, count) pairs, arbitrary but well-formed
const char* const kRsn = "0100000fac040100000fac040100000fac020000";
const char* const kRrm = "7200000000";
const char* const kInterworking = "0f";
const char* const kSsidLab = "6c6162";  // "lab"

InformationElement broadcom() { return vendor("001018", 2, "000010000000"); }
InformationElement wmm() { return vendor("0050f2", 2, "000100"); }
InformationElement ms8() { return vendor("0050f2", 8, "002c00"); }
InformationElement epigram_vht() { return vendor("00904c", 4, "0800bf0cb259820ffaff0000faff0000"); }
InformationElement p2p() { return vendor("506f9a", 9, "0202002500060500585804510b"); }
InformationElement wfd() { return vendor("506f9a", 10, "0000060011c1001e"); }
InformationElement hs20() { return vendor("506f9a", 16, "10"); }

const std::vector<std::uint8_t> kIosDhcp{1, 3, 6, 15, 119, 252};
const std::vector<std::uint8_t> kAndroidDhcp{1, 33, 3, 6, 15, 26, 28, 51, 58, 59};

MacAddress mac(std::string_view text) {
  auto parsed = MacAddress::parse(text);
  if (!parsed) throw std::logic_error("bad MAC literal in profile table");
  return *parsed;
}

const TextCorrection kVhtRxLabel{"vhtrxmscs:", "vhtrxmcs:", "label spelled vhtrxmscs"};
const TextCorrection kHtMcsLabel{"htmc:", "htmcs:", "label spelled htmc"};
const TextCorrection kHtAggLabel{"htag:", "htagg:", "label spelled htag"};

std::vector<DeviceProfile> make_profiles() {
  std::vector<DeviceProfile> out;

  // The three Android devices that share one signature.
  auto shared_android = [](std::string name, std::string model, MacAddress address) {
    DeviceProfile p;
    p.name = std::move(name);
    p.model = std::move(model);
    p.mac = address;
    p.capabilities = 0x0431;
    p.probe = {ie(0), ie(1, kRates24), ie(50, kExtRates), ie(3, kChannel), ht("2c0103ff000000"), ms8()};
    p.assoc = {ie(0, kSsidLab), ie(1, kRates24),          ie(50, kExtRates), ie(33, "0d17"), ie(48, kRsn),
               ie(70, kRrm),    ht("2c0103ff000000"),    wmm(),             ie(127, "00000a0200000000")};
    p.dhcp_options = kAndroidDhcp;
    p.published_wifi4 =
        "wifi4|probe:0,1,50,3,45,221(0050f2,8),htcap:012c,htagg:03,htmcs:000000ff|assoc:0,1,50,33,48,70,45,"
        "221(0050f2,2),127,htcap:012c,htagg:03,htmcs:000000ff,txpow:170d,extcap:00000a0200000000";
    return p;
  };

  // The three embedded devices that share one signature and differ in DHCP.
  auto shared_embedded = [](std::string name, std::string model, MacAddress address,
                            std::vector<std::uint8_t> options, std::string published_dhcp) {
    DeviceProfile p;
    p.name = std::move(name);
    p.model = std::move(model);
    p.mac = address;
    p.capabilities = 0x0421;
    p.probe = {ie(0), ie(1, kRates24), ie(50, kExtRates), ht("0c1119ff000000"), ie(3, kChannel), broadcom(),
               epigram_ht("0c1119ff000000")};
    p.assoc = {ie(0, kSsidLab), ie(1, kRates24), ie(48, kRsn), ie(50, kExtRates), ht("0c1119ff000000"), broadcom(),
               epigram_ht("0c1119ff000000"), wmm()};
    p.dhcp_options = std::move(options);
    p.published_wifi4 =
        "wifi4|probe:0,1,50,45,3,221(001018,2),221(00904c,51),htcap:110c,htagg:19,htmcs:000000ff|assoc:0,1,48,50,"
        "45,221(001018,2),221(00904c,51),221(0050f2,2),htcap:110c,htagg:19,htmcs:000000ff";
    p.published_dhcp = std::move(published_dhcp);
    return p;
  };

  {
    DeviceProfile p;
    p.name = "iphone-6s";
    p.model = "iPhone 6s";
    p.mac = mac("28:cf:e9:16:06:01");
    p.capabilities = 0x0011;
    p.probe = {ie(0), ie(1, kRates5), ht("6f0017ffff0000"), ie(127, "0400088400000040"), ie(107, kInterworking),
               ie(191, "3258810fffff0000ffff0000"), ms8(), broadcom()};
    p.assoc = {ie(0, kSsidLab), ie(1, kRates5), ie(33, "02e0"), ie(36, kChannels5), ie(48, kRsn), ie(70, kRrm),
               ht("6f0017ffff0000"), ie(127, "0400000000000040"), ie(191, "3258810fffff0000ffff0000"), broadcom(),
               wmm()};
    p.dhcp_options = kIosDhcp;
    p.published_wifi4 =
        "wifi4|probe:0,1,45,127,107,191,221(0050f2,8),221(001018,2),htcap:006f,htagg:17,htmcs:0000ffff,vhtcap:"
        "0f815832,vhtrxmscs:0000ffff,vhttxmcs:0000ffff,extcap:0400088400000040|assoc:0,1,33,36,48,70,45,127,191,"
        "221(001018,2),221(0050f2,2),htcap:006f,htagg:17,htmcs:0000ffff,vhtcap:0f815832,vhtrxmscs:0000ffff,"
        "vhttxmcs:0000ffff,txpow:e002,extcap:0400000000000040";
    p.corrections = {kVhtRxLabel};
    out.push_back(std::move(p));
  }
  {
    DeviceProfile p;
    p.name = "nexus-6p";
    p.model = "Nexus 6P";
    p.mac = mac("02:4e:36:50:06:01");
    p.capabilities = 0x0011;
    p.probe = {ie(0), ie(1, kRates5), ht("6f0017ffff0000"), ie(191, "3258810fffff0000ffff0000"),
               wps("Huawei", "Nexus 6P", "angler-6p"), p2p(), broadcom()};
    p.assoc = {ie(0, kSsidLab), ie(1, kRates5), ie(33, "02e0"), ie(36, kChannels5), ie(48, kRsn),
               ht("6f0017ffff0000"), ie(191, "3258810fffff0000ffff0000"), broadcom(), wmm()};
    p.dhcp_options = kAndroidDhcp;
    p.published_wifi4 =
        "wifi4|probe:0,1,45,191,221(0050f2,4),221(506f9a,9),221(001018,2),htcap:006f,htagg:17,htmcs:0000ffff,"
        "vhtcap:0f815832,vhtrxmscs:0000ffff,vhttxmcs:0000ffff,wps:Nexus_6P|assoc:0,1,33,36,48,45,191,"
        "221(001018,2),221(0050f2,2),htcap:006f,htagg:17,htmcs:0000ffff,vhtcap:0f815832,vhtrxmscs:0000ffff,"
        "vhttxmcs:0000ffff,txpow:e002";
    p.corrections = {kVhtRxLabel};
    out.push_back(std::move(p));
  }
  {
    DeviceProfile p;
    p.name = "lg-g4";
    p.model = "LG G4";
    p.mac = mac("10:68:3f:04:00:01");
    p.capabilities = 0x0011;
    p.probe = {ie(0),
               ie(1, kRates5),
               ie(3, "24"),
               ht("6f0117ff000000"),
               ie(127, "0000088001400040"),
               ie(107, kInterworking),
               ie(191, "3259800ffeff0000feff0000"),
               hs20(),
               broadcom(),
               epigram_ht("6f0117ff000000"),
               epigram_vht(),
               ms8()};
    p.assoc = {ie(0, kSsidLab),   ie(1, kRates5),
               ie(33, "011d"),    ie(36, kChannels5),
               ie(48, kRsn),      ht("6f0117ff000000"),
               ie(127, "0000008001400040"), ie(191, "3259800ffeff0000feff0000"),
               broadcom(),        epigram_vht(),
               wmm()};
    p.dhcp_options = kAndroidDhcp;
    p.published_wifi4 =
        "wifi4|probe:0,1,3,45,127,107,191,221(506f9a,16),221(001018,2),221(00904c,51),221(00904c,4),"
        "221(0050f2,8),htcap:016f,htagg:17,htmc:000000ff,vhtcap:0f805932,vhtrxmcs:0000fffe,vhttxmcs:0000fffe,"
        "extcap:0000088001400040|assoc:0,1,33,36,48,45,127,191,221(001018,2),221(00904c,4),221(0050f2,2),"
        "htcap:016f,htagg:17,htmc:000000ff,vhtcap:0f805932,vhtrxmcs:0000fffe,vhttxmcs:0000fffe,txpow:1d01,"
        "extcap:0000008001400040";
    p.corrections = {kHtMcsLabel};
    out.push_back(std::move(p));
  }
  {
    DeviceProfile p;
    p.name = "iphone-6";
    p.model = "iPhone 6";
    p.mac = mac("28:cf:e9:06:00:01");
    p.capabilities = 0x0011;
    p.probe = {ie(0), ie(1, kRates5), ht("630017ff000000"), ie(127, "0400088400000040"), ie(107, kInterworking),
               ie(191, "3250800ffeff0000feff0000"), ms8(), broadcom()};
    p.assoc = {ie(0, kSsidLab), ie(1, kRates5), ie(33, "02e0"), ie(36, kChannels5), ie(48, kRsn), ie(70, kRrm),
               ht("630017ff000000"), ie(127, "0400000000000040"), ie(191, "3250800ffeff0000feff0000"), broadcom(),
               wmm()};
    p.dhcp_options = kIosDhcp;
    p.published_wifi4 =
        "wifi4|probe:0,1,45,127,107,191,221(0050f2,8),221(001018,2),htcap:0063,htagg:17,htmc:000000ff,vhtcap:"
        "0f805032,vhtrxmcs:0000fffe,vhttxmcs:0000fffe,extcap:0400088400000040|assoc:0,1,33,36,48,70,45,127,191,"
        "221(001018,2),221(0050f2,2),htcap:0063,htagg:17,htmc:000000ff,vhtcap:0f805032,vhtrxmcs:0000fffe,"
        "vhttxmcs:0000fffe,txpow:e002,extcap:0400000000000040";
    p.corrections = {kHtMcsLabel};
    out.push_back(std::move(p));
  }
  {
    DeviceProfile p;
    p.name = "iphone-5";
    p.model = "iPhone 5";
    p.mac = mac("00:0a:95:05:00:01");
    p.capabilities = 0x0421;
    p.probe = {ie(0), ie(1, kRates24), ht("62001aff000000"), ie(127, "00000004"), ie(107, kInterworking),
               broadcom(), epigram_ht("62001aff000000"), ms8()};
    p.assoc = {ie(0, kSsidLab), ie(1, kRates24), ie(33, "0415"), ie(36, "010d"), ie(48, kRsn), ht("62001aff000000"),
               broadcom(), epigram_ht("62001aff000000"), wmm()};
    p.dhcp_options = kIosDhcp;
    p.published_wifi4 =
        "wifi4|probe:0,1,45,127,107,221(001018,2),221(00904c,51),221(0050f2,8),htcap:0062,htagg:1a,htmcs:000000ff,"
        "extcap:00000004|assoc:0,1,33,36,48,45,221(001018,2),221(00904c,51),221(0050f2,2),htcap:0062,htagg:1a,"
        "htmcs:000000ff,txpow:1504";
    out.push_back(std::move(p));
  }
  {
    DeviceProfile p;
    p.name = "iphone-5s";
    p.model = "iPhone 5s";
    p.mac = mac("00:17:f2:05:50:01");
    p.capabilities = 0x0421;
    p.probe = {ie(0), ie(1, kRates24), ht("62001aff000000"), ie(127, "00000804"), ie(107, kInterworking),
               broadcom(), epigram_ht("62001aff000000"), ms8()};
    p.assoc = {ie(0, kSsidLab), ie(1, kRates24), ie(33, "0316"), ie(36, "010d"), ie(48, kRsn), ht("62001aff000000"),
               broadcom(), epigram_ht("62001aff000000"), wmm()};
    p.dhcp_options = kIosDhcp;
    p.published_wifi4 =
        "wifi4|probe:0,1,45,127,107,221(001018,2),221(00904c,51),221(0050f2,8),htcap:0062,htagg:1a,htmcs:000000ff,"
        "extcap:00000804|assoc:0,1,33,36,48,45,221(001018,2),221(00904c,51),221(0050f2,2),htcap:0062,htagg:1a,"
        "htmcs:000000ff,txpow:1603";
    out.push_back(std::move(p));
  }

  out.push_back(shared_android("moto-e-2", "Moto E (2nd gen)", mac("9c:d9:17:0e:02:01")));
  out.push_back(shared_android("xperia-z-ultra", "Sony Xperia Z Ultra", mac("58:48:22:0c:06:01")));
  out.push_back(shared_android("oneplus-x", "Oneplus X", mac("94:65:2d:0a:01:01")));

  out.push_back(shared_embedded("roku-hd-2500", "Roku HD 2500", mac("b0:a7:37:25:00:01"), {1, 3, 6, 15, 12},
                                "dhcp|1,3,6,15,12"));
  out.push_back(shared_embedded("withings-scale", "Withings Scale", mac("00:24:e4:5c:a1:01"), {1, 3, 28, 6},
                                "dhcp|1,3,28,6"));
  out.push_back(shared_embedded("amazon-dash", "Amazon Dash Button", mac("74:c2:46:da:54:01"), {1, 3, 6},
                                "dhcp|1,3,6"));

  {
    DeviceProfile p;
    p.name = "galaxy-s5";
    p.model = "Samsung Galaxy S5";
    p.mac = mac("5c:0a:5b:05:00:01");
    p.capabilities = 0x0011;
    p.probe = {ie(0),
               ie(1, kRates5),
               ht("6f0017ffff0000"),
               ie(127, "0000088001400040"),
               ie(107, kInterworking),
               ie(191, "3258810ffaff0000faff0000"),
               hs20(),
               epigram_vht(),
               ms8(),
               broadcom()};
    p.assoc = {ie(0, kSsidLab),
               ie(1, kRates5),
               ie(33, "0be2"),
               ie(36, kChannels5),
               ie(48, kRsn),
               ht("6f0017ffff0000"),
               ie(127, "0000088001400040"),
               ie(107, kInterworking),
               ie(191, "3258810ffaff0000faff0000"),
               epigram_vht(),
               broadcom(),
               wmm()};
    p.dhcp_options = kAndroidDhcp;
    p.published_wifi4 =
        "wifi4|probe:0,1,45,127,107,191,221(506f9a,16),221(00904c,4),221(0050f2,8),221(001018,2),htcap:006f,"
        "htag:17,htmcs:0000ffff,vhtcap:0f815832,vhtrxmscs:0000ffffa,vhttxmscs:0000ffffa,extcap:000088001400040|"
        "assoc:0,1,33,36,48,45,127,107,191,221(00904c,4),221(001018,2),221(0050f2,2),htcap:006f,htag:17,htmcs:"
        "0000ffff,vhtcap:0f815832,vhtrxmscs:0000ffffa,vhttxmscs:0000ffffa,txpow:e20b,extcap:000088001400040";
    p.corrections = {
        kHtAggLabel,
        {"vhtrxmscs:0000ffffa", "vhtrxmcs:0000fffa", "label spelled vhtrxmscs; nine hex digits, one 'f' dropped"},
        {"vhttxmscs:0000ffffa", "vhttxmcs:0000fffa", "label spelled vhttxmscs; nine hex digits, one 'f' dropped"},
        {"extcap:000088001400040", "extcap:0000088001400040", "fifteen hex digits; missing '0' restored"},
    };
    out.push_back(std::move(p));
  }
  {
    DeviceProfile p;
    p.name = "nexus-7-2013";
    p.model = "Nexus 7 (2013)";
    p.mac = mac("02:4e:37:20:13:01");
    p.capabilities = 0x0421;
    p.probe = {ie(0), ie(1, kRates24), ht("6e0103ff000000"), ms8(), wps("ASUSTeK", "Nexus 7", "flo-7"), wfd(), p2p(),
               ie(127, "00000a02")};
    p.assoc = {ie(0, kSsidLab), ie(1, kRates24), ie(33, "0d1e"), ie(36, "010d"), ie(48, kRsn), ht("6e0103ff000000"),
               wmm(), ie(127, "00000a02")};
    p.dhcp_options = kAndroidDhcp;
    p.published_wifi4 =
        "wifi4|probe:0,1,45,221(0050f2,8),221(0050f2,4),221(506f9a,10),221(506f9a,9),htcap:016e,htag:03,htmcs:"
        "000000ff,extcap:00000a02,wps:Nexus_7|assoc:0,1,33,36,48,45,221(0050f2,2),127,htcap:016e,htag:03,htmcs:"
        "000000ff,txpow:1e0d,extcap:00000a02";
    p.corrections = {
        kHtAggLabel,
        {"221(506f9a,9),htcap:", "221(506f9a,9),127,htcap:",
         "probe lists extcap without element 127; placed last, as in this device's association request"},
    };
    out.push_back(std::move(p));
  }
  {
    DeviceProfile p;
    p.name = "iphone-5s-rrm";
    p.model = "iPhone 5s";
    p.mac = mac("00:17:f2:05:50:02");
    p.capabilities = 0x0421;
    p.probe = {ie(0), ie(1, kRates24), ht("62001aff000000"), ie(127, "00000804"), ie(107, kInterworking),
               broadcom(), epigram_ht("62001aff000000"), ms8()};
    p.assoc = {ie(0, kSsidLab), ie(1, kRates24), ie(33, "0316"), ie(36, "010d"), ie(48, kRsn), ht("62001aff000000"),
               ie(70, kRrm), broadcom(), epigram_ht("62001aff000000"), wmm()};
    p.dhcp_options = kIosDhcp;
    p.published_wifi4 =
        "wifi4|probe:0,1,45,127,107,221(001018,2),221(00904c,51),221(0050f2,8),htcap:0062,htag:1a,htmcs:000000ff,"
        "extcap:0000804|assoc:0,1,33,36,48,45,70,221(001018,2),221(00904c,51),221(0050f2,2),htcap:0062,htag:1a,"
        "htmcs:000000ff,txpow:1603";
    p.corrections = {
        kHtAggLabel,
        {"extcap:0000804|", "extcap:00000804|", "seven hex digits; matches the other published iPhone 5s probe"},
    };
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

ManagementFrame DeviceProfile::probe_frame() const {
  ManagementFrame frame;
  frame.subtype = FrameSubtype::ProbeRequest;
  frame.source_mac = mac;
  frame.elements = probe;
  return frame;
}

ManagementFrame DeviceProfile::assoc_frame() const {
  ManagementFrame frame;
  frame.subtype = FrameSubtype::AssociationRequest;
  frame.source_mac = mac;
  frame.capabilities = capabilities;
  frame.listen_interval = 10;
  frame.elements = assoc;
  return frame;
}

std::string DeviceProfile::canonical_wifi4() const { return apply_corrections(published_wifi4, corrections); }

std::string apply_corrections(std::string text, const std::vector<TextCorrection>& corrections) {
  for (const auto& c : corrections) {
    for (auto pos = text.find(c.from); pos != std::string::npos; pos = text.find(c.from, pos + c.to.size())) {
      text.replace(pos, c.from.size(), c.to);
    }
  }
  return text;
}

const std::vector<DeviceProfile>& builtin_profiles() {
  static const std::vector<DeviceProfile> profiles = make_profiles();
  return profiles;
}

const DeviceProfile* find_profile(std::string_view name) {
  for (const auto& p : builtin_profiles()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

FixtureCapture build_fixture_capture(const std::vector<const DeviceProfile*>& profiles, Timestamp start) {
  using namespace std::chrono_literals;
  FixtureCapture capture;
  Timestamp t = start;
  for (const auto* p : profiles) {
    capture.wifi.push_back({t, linktype::kIeee80211Radiotap, wrap_radiotap(synthesize_frame(p->probe_frame()))});
    capture.wifi.push_back(
        {t + 200ms, linktype::kIeee80211Radiotap, wrap_radiotap(synthesize_frame(p->assoc_frame()))});
    if (!p->dhcp_options.empty()) {
      capture.dhcp.push_back(
          {t + 1s, linktype::kEthernet, wrap_ethernet_udp(p->mac, build_dhcp_client_message(p->mac, p->dhcp_options))});
    }
    t += 10s;
  }
  return capture;
}

}  // namespace wifitax
