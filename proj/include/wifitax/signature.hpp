#pragma once

// Profile extraction and `wifi4` signature composition.
//
// A signature lists the IE ids of a Probe Request and an Association Request
// in wire order, followed by a fixed set of capability fields pulled from the
// HT, VHT, Power Capability, Extended Capabilities and WPS elements:
//
//   wifi4|probe:<tokens>,<fields>|assoc:<tokens>,<fields>
//
// The text is a database key: any change to rendering is a format change.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wifitax/bytes.hpp"
#include "wifitax/frame.hpp"

namespace wifitax {

/// Plain element id, rendered as its decimal number.
struct PlainToken {
  std::uint8_t id = 0;
  auto operator<=>(const PlainToken&) const = default;
};

/// Element ID Extension (id 255) with its extension id, rendered `255(<ext>)`.
struct ExtensionToken {
  std::uint8_t ext_id = 0;
  auto operator<=>(const ExtensionToken&) const = default;
};

using IeToken = std::variant<PlainToken, VendorIdentity, ExtensionToken>;

struct FrameProfile {
  std::vector<IeToken> ie_tokens;
  std::optional<std::uint16_t> htcap;
  std::optional<std::uint8_t> htagg;
  std::optional<std::uint32_t> htmcs;
  std::optional<std::uint32_t> vhtcap;
  std::optional<std::uint32_t> vhtrxmcs;
  std::optional<std::uint32_t> vhttxmcs;
  std::optional<std::uint16_t> txpow;
  std::optional<Bytes> extcap;
  std::optional<std::string> wps_name;  // already sanitized

  bool operator==(const FrameProfile&) const = default;
};

struct ClientSignature {
  MacAddress mac;
  std::string wifi4;
  std::optional<std::string> dhcp;

  bool operator==(const ClientSignature&) const = default;
};

namespace ie {
inline constexpr std::uint8_t kPowerCapability = 33;
inline constexpr std::uint8_t kHtCapabilities = 45;
inline constexpr std::uint8_t kExtendedCapabilities = 127;
inline constexpr std::uint8_t kVhtCapabilities = 191;
}  // namespace ie

inline constexpr std::uint16_t kWpsAttrModelName = 0x1023;
inline constexpr std::uint16_t kWpsAttrDeviceName = 0x1011;
inline const Oui kMicrosoftOui{{0x00, 0x50, 0xf2}};
inline constexpr std::uint8_t kWpsVendorSubtype = 4;

/// Requires a probe, association or reassociation request; throws
/// std::invalid_argument otherwise. Short elements leave their fields absent.
FrameProfile extract_profile(const ManagementFrame& frame);

/// Keeps [A-Za-z0-9]; every other byte becomes '_'.
std::string sanitize_wps_name(ByteView raw);

/// Model Name attribute of a WPS vendor IE body (after OUI+subtype), falling
/// back to Device Name. Empty or missing attributes yield nullopt.
std::optional<Bytes> wps_model_name(ByteView wps_attributes);

IeToken token_for(const InformationElement& ie);
std::string render_token(const IeToken& token);

/// One half of a signature: tokens then the present fields in fixed order.
std::string render_profile(const FrameProfile& profile);

std::string compose_signature(const FrameProfile& probe, const FrameProfile& assoc);

/// ECMAScript regular expression for the full signature grammar.
std::string_view signature_grammar_regex();

/// Hand-written recognizer equivalent to signature_grammar_regex(); linear time.
bool matches_signature_grammar(std::string_view text);

/// Splits "wifi4|probe:...|assoc:..." into its two field lists. nullopt if the
/// framing is wrong (the parts themselves are not validated).
struct SignatureParts {
  std::string_view probe;
  std::string_view assoc;
};
std::optional<SignatureParts> split_signature(std::string_view text);

/// Values of every `wps:` field in the signature, in order.
std::vector<std::string> wps_values(std::string_view text);

}  // namespace wifitax
