#pragma once

#include <string_view>

#include "wifitax/database.hpp"

namespace wifitax {

/// Text of the bundled OUI table (same content as data/fixtures/oui.tsv).
std::string_view builtin_oui_text();
/// Text of the bundled DHCP-OS rules (same content as data/fixtures/dhcp_os.tsv).
std::string_view builtin_dhcp_os_text();

const OuiTable& builtin_oui_table();
const DhcpOsRules& builtin_dhcp_os_rules();

}  // namespace wifitax
