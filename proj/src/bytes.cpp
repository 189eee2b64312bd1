#include "wifitax/bytes.hpp"

#include <algorithm>
#include <cctype>

namespace wifitax {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string Oui::to_hex() const { return hex_bytes(octets); }

std::optional<Oui> Oui::from_hex(std::string_view text) {
  if (text.size() != 6) return std::nullopt;
  auto bytes = parse_hex(text);
  if (!bytes) return std::nullopt;
  return Oui{{(*bytes)[0], (*bytes)[1], (*bytes)[2]}};
}

std::string MacAddress::to_string() const {
  std::string out;
  out.reserve(17);
  for (std::size_t i = 0; i < octets.size(); ++i) {
    if (i) out.push_back(':');
    out.push_back(kHexDigits[octets[i] >> 4]);
    out.push_back(kHexDigits[octets[i] & 0xf]);
  }
  return out;
}

std::optional<MacAddress> MacAddress::parse(std::string_view text) {
  std::string digits;
  if (text.size() == 17) {
    const char sep = text[2];
    if (sep != ':' && sep != '-') return std::nullopt;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (i % 3 == 2) {
        if (text[i] != sep) return std::nullopt;
      } else {
        digits.push_back(text[i]);
      }
    }
  } else if (text.size() == 12) {
    digits.assign(text);
  } else {
    return std::nullopt;
  }
  auto bytes = parse_hex(digits);
  if (!bytes || bytes->size() != 6) return std::nullopt;
  return from_bytes(*bytes);
}

MacAddress MacAddress::from_bytes(ByteView six) {
  MacAddress mac;
  std::copy_n(six.begin(), mac.octets.size(), mac.octets.begin());
  return mac;
}

bool MacAddress::is_broadcast() const {
  return std::all_of(octets.begin(), octets.end(), [](auto b) { return b == 0xff; });
}

void append_le16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void append_le32(Bytes& out, std::uint32_t v) {
  append_le16(out, static_cast<std::uint16_t>(v));
  append_le16(out, static_cast<std::uint16_t>(v >> 16));
}

void append_be16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::string hex_fixed(std::uint64_t value, int digits) {
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int i = digits - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHexDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::string hex_bytes(ByteView bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xf]);
  }
  return out;
}

std::optional<Bytes> parse_hex(std::string_view text) {
  Bytes out;
  int high = -1;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    const int v = hex_value(c);
    if (v < 0) return std::nullopt;
    if (high < 0) {
      high = v;
    } else {
      out.push_back(static_cast<std::uint8_t>((high << 4) | v));
      high = -1;
    }
  }
  if (high >= 0) return std::nullopt;
  return out;
}

}  // namespace wifitax
