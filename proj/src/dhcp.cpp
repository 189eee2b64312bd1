#include "wifitax/dhcp.hpp"

#include <algorithm>
#include <charconv>

namespace wifitax {

namespace {

constexpr std::size_t kChaddrOffset = 28;
constexpr std::uint8_t kMagicCookie[] = {0x63, 0x82, 0x53, 0x63};
constexpr std::uint8_t kOptionPad = 0;
constexpr std::uint8_t kOptionEnd = 255;
constexpr std::uint8_t kBootRequest = 1;

}  // namespace

DhcpObservation parse_dhcp(ByteView bytes) {
  if (bytes.size() < kBootpHeaderSize + sizeof kMagicCookie) {
    throw DhcpError(DhcpErrc::Truncated, "shorter than BOOTP header plus magic cookie");
  }
  if (!std::equal(std::begin(kMagicCookie), std::end(kMagicCookie), bytes.begin() + kBootpHeaderSize)) {
    throw DhcpError(DhcpErrc::NotDhcp, "missing DHCP magic cookie");
  }

  DhcpObservation obs;
  obs.from_client = bytes[0] == kBootRequest;
  obs.client_mac = MacAddress::from_bytes(bytes.subspan(kChaddrOffset, 6));

  std::size_t pos = kBootpHeaderSize + sizeof kMagicCookie;
  while (pos < bytes.size()) {
    const std::uint8_t code = bytes[pos++];
    if (code == kOptionPad) continue;
    if (code == kOptionEnd) break;
    if (pos >= bytes.size()) throw DhcpError(DhcpErrc::Truncated, "option " + std::to_string(code) + " without length");
    const std::size_t len = bytes[pos++];
    if (len > bytes.size() - pos) {
      throw DhcpError(DhcpErrc::Truncated, "option " + std::to_string(code) + " overruns packet");
    }
    auto value = bytes.subspan(pos, len);
    if (code == kOptionParameterRequestList) {
      // Repeated instances concatenate (RFC 3396).
      obs.option_list.insert(obs.option_list.end(), value.begin(), value.end());
    } else if (code == kOptionMessageType && len >= 1) {
      switch (value[0]) {
        case 1: obs.message_type = DhcpMessageType::Discover; break;
        case 3: obs.message_type = DhcpMessageType::Request; break;
        default: obs.message_type = DhcpMessageType::Other; break;
      }
    }
    pos += len;
  }
  return obs;
}

std::string dhcp_signature(const std::vector<std::uint8_t>& options) {
  std::string out = "dhcp|";
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(options[i]);
  }
  return out;
}

std::string dhcp_signature(const DhcpObservation& obs) { return dhcp_signature(obs.option_list); }

std::optional<std::vector<std::uint8_t>> parse_option_list(std::string_view text) {
  if (text.starts_with("dhcp|")) text.remove_prefix(5);
  std::vector<std::uint8_t> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  for (;;) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc{} || value > 255) return std::nullopt;
    out.push_back(static_cast<std::uint8_t>(value));
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos == text.size()) return out;
    if (text[pos] != ',') return std::nullopt;
    ++pos;
  }
}

Bytes build_dhcp_client_message(const MacAddress& mac, const std::vector<std::uint8_t>& options,
                                DhcpMessageType type) {
  Bytes out;
  out.reserve(kBootpHeaderSize + 16 + options.size());
  out.resize(kBootpHeaderSize, 0);
  out[0] = kBootRequest;
  out[1] = 1;  // Ethernet
  out[2] = 6;
  // xid derived from the address so fixtures stay deterministic
  out[4] = mac.octets[2];
  out[5] = mac.octets[3];
  out[6] = mac.octets[4];
  out[7] = mac.octets[5];
  std::copy(mac.octets.begin(), mac.octets.end(), out.begin() + kChaddrOffset);
  out.insert(out.end(), std::begin(kMagicCookie), std::end(kMagicCookie));
  out.push_back(kOptionMessageType);
  out.push_back(1);
  out.push_back(type == DhcpMessageType::Request ? 3 : 1);
  if (!options.empty()) {
    out.push_back(kOptionParameterRequestList);
    out.push_back(static_cast<std::uint8_t>(options.size()));
    out.insert(out.end(), options.begin(), options.end());
  }
  out.push_back(kOptionEnd);
  return out;
}

}  // namespace wifitax
