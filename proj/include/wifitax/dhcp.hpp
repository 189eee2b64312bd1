#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wifitax/bytes.hpp"

namespace wifitax {

enum class DhcpMessageType { Discover, Request, Other };

struct DhcpObservation {
  MacAddress client_mac;
  std::vector<std::uint8_t> option_list;  // option 55 contents, wire order
  DhcpMessageType message_type = DhcpMessageType::Other;
  bool from_client = true;  // BOOTREQUEST

  bool operator==(const DhcpObservation&) const = default;
};

enum class DhcpErrc { NotDhcp, Truncated };

class DhcpError : public std::runtime_error {
 public:
  DhcpError(DhcpErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  DhcpErrc code() const noexcept { return code_; }

 private:
  DhcpErrc code_;
};

inline constexpr std::size_t kBootpHeaderSize = 236;
inline constexpr std::uint8_t kOptionParameterRequestList = 55;
inline constexpr std::uint8_t kOptionMessageType = 53;

/// Parses a BOOTP/DHCP UDP payload. Throws DhcpError.
DhcpObservation parse_dhcp(ByteView bytes);

/// "dhcp|1,3,6,15"; an empty list renders as "dhcp|".
std::string dhcp_signature(const DhcpObservation& obs);
std::string dhcp_signature(const std::vector<std::uint8_t>& options);

/// Inverse of dhcp_signature. Also accepts ", "-separated lists without the prefix.
std::optional<std::vector<std::uint8_t>> parse_option_list(std::string_view text);

/// Builds a minimal client message (Discover or Request) carrying option 55.
Bytes build_dhcp_client_message(const MacAddress& mac, const std::vector<std::uint8_t>& options,
                                DhcpMessageType type = DhcpMessageType::Discover);

}  // namespace wifitax
