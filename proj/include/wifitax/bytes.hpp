#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wifitax {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Three-byte organizationally unique identifier (vendor prefix).
struct Oui {
  std::array<std::uint8_t, 3> octets{};

  /// Six lowercase hex digits, no separators ("0050f2").
  std::string to_hex() const;
  /// Accepts exactly six hex digits, either case.
  static std::optional<Oui> from_hex(std::string_view text);

  auto operator<=>(const Oui&) const = default;
};

struct MacAddress {
  std::array<std::uint8_t, 6> octets{};

  /// "aa:bb:cc:dd:ee:ff", lowercase.
  std::string to_string() const;
  /// Accepts colon- or dash-separated pairs, or twelve bare hex digits.
  static std::optional<MacAddress> parse(std::string_view text);
  static MacAddress from_bytes(ByteView six);

  Oui oui() const { return Oui{{octets[0], octets[1], octets[2]}}; }
  bool is_broadcast() const;

  auto operator<=>(const MacAddress&) const = default;
};

// Little-endian loads. Callers check bounds.
inline std::uint16_t load_le16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
inline std::uint32_t load_le32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
inline std::uint16_t load_be16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

void append_le16(Bytes& out, std::uint16_t v);
void append_le32(Bytes& out, std::uint32_t v);
void append_be16(Bytes& out, std::uint16_t v);

/// Zero-padded lowercase hex of `value`, exactly `digits` wide.
std::string hex_fixed(std::uint64_t value, int digits);
/// Byte-by-byte lowercase hex in input order.
std::string hex_bytes(ByteView bytes);
/// Inverse of hex_bytes; whitespace is ignored. Returns nullopt on odd length or a non-hex digit.
std::optional<Bytes> parse_hex(std::string_view text);

}  // namespace wifitax

template <>
struct std::hash<wifitax::MacAddress> {
  std::size_t operator()(const wifitax::MacAddress& mac) const noexcept {
    std::uint64_t v = 0;
    for (auto b : mac.octets) v = (v << 8) | b;
    return std::hash<std::uint64_t>{}(v);
  }
};
