#include "wifitax/builtin.hpp"

#include <sstream>
#include <string>

namespace wifitax {

namespace {

// Keep in sync with data/fixtures/oui.tsv; a unit test compares them.
constexpr std::string_view kOuiTable = R"(# prefix	vendor
# Vendor prefixes referenced by the fixture database and capture. Not a complete registry.
000393	Apple, Inc.
000a95	Apple, Inc.
0017f2	Apple, Inc.
28cfe9	Apple, Inc.
001018	Broadcom
0050f2	Microsoft Corp.
00904c	Epigram, Inc.
506f9a	Wi-Fi Alliance
9cd917	Motorola Mobility LLC
141aa3	Motorola Mobility LLC
584822	Sony Mobile Communications
40b837	Sony Mobile Communications
94652d	OnePlus Technology (Shenzhen)
c0eefb	OnePlus Technology (Shenzhen)
10683f	LG Electronics (Mobile Communications)
64bc0c	LG Electronics (Mobile Communications)
0012fb	Samsung Electronics
5c0a5b	Samsung Electro-Mechanics
b0a737	Roku, Inc.
dc3a5e	Roku, Inc.
0024e4	Withings
74c246	Amazon Technologies Inc.
44650d	Amazon Technologies Inc.
)";

// Keep in sync with data/fixtures/dhcp_os.tsv.
constexpr std::string_view kDhcpOsRules = R"(# os-name	option 55 list
Android	1,33,3,6,15,26,28,51,58,59
Chrome OS	1,121,33,3,6,12,15,26,28,51,54,58,59,119
iOS	1,3,6,15,119,252
Roku	1,3,6,15,12
Withings	1,3,28,6
Amazon Dash	1,3,6
)";

}  // namespace

std::string_view builtin_oui_text() { return kOuiTable; }
std::string_view builtin_dhcp_os_text() { return kDhcpOsRules; }

const OuiTable& builtin_oui_table() {
  static const OuiTable table = [] {
    std::istringstream in{std::string(kOuiTable)};
    return parse_oui_table(in);
  }();
  return table;
}

const DhcpOsRules& builtin_dhcp_os_rules() {
  static const DhcpOsRules rules = [] {
    std::istringstream in{std::string(kDhcpOsRules)};
    return parse_dhcp_os_rules(in);
  }();
  return rules;
}

}  // namespace wifitax
