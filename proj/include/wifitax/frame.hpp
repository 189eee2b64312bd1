#pragma once

// 802.11 management frame codec: parses Probe / (Re)Association Requests
// (raw or radiotap-encapsulated) into tagged parameters, and synthesizes
// frame bytes from the same structure.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wifitax/bytes.hpp"

namespace wifitax {

enum class FrameSubtype { ProbeRequest, AssociationRequest, ReassociationRequest, Other };

enum class Encapsulation { Raw80211, Radiotap };

std::string to_string(FrameSubtype subtype);

/// One tagged parameter (Type-Length-Value) from an MLME frame body.
struct InformationElement {
  std::uint8_t id = 0;
  Bytes payload;

  bool operator==(const InformationElement&) const = default;
};

struct ManagementFrame {
  FrameSubtype subtype = FrameSubtype::Other;
  MacAddress source_mac;
  // Association and reassociation requests only.
  std::optional<std::uint16_t> capabilities;
  std::optional<std::uint16_t> listen_interval;
  // Reassociation requests only.
  std::optional<MacAddress> current_ap;
  std::vector<InformationElement> elements;

  bool operator==(const ManagementFrame&) const = default;
};

/// Vendor-specific IE (id 221) identity: OUI plus the first byte after it.
struct VendorIdentity {
  Oui oui;
  std::uint8_t subtype = 0;

  auto operator<=>(const VendorIdentity&) const = default;
};

enum class FrameErrc { TruncatedFrame, MalformedIE, BadRadiotap, OversizeIE };

std::string to_string(FrameErrc code);

class FrameError : public std::runtime_error {
 public:
  FrameError(FrameErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  FrameErrc code() const noexcept { return code_; }

 private:
  FrameErrc code_;
};

inline constexpr std::size_t kMacHeaderSize = 24;
inline constexpr std::uint8_t kVendorSpecificId = 221;
inline constexpr std::uint8_t kElementIdExtension = 255;

/// Throws FrameError. Frames that are not probe/assoc/reassoc requests come
/// back with subtype Other and no elements.
ManagementFrame parse_management_frame(ByteView bytes, Encapsulation encapsulation);

/// Walks a tagged-parameter region. Throws FrameError(MalformedIE) when a
/// length field runs past the end.
std::vector<InformationElement> parse_elements(ByteView region);

std::optional<VendorIdentity> vendor_identity(const InformationElement& ie);

/// Inverse of parse_management_frame for Raw80211. Throws
/// FrameError(OversizeIE) for payloads over 255 bytes. Probes are addressed to
/// broadcast; (re)association requests to a fixed lab BSSID.
Bytes synthesize_frame(const ManagementFrame& frame);

struct RadiotapOptions {
  bool append_fcs = true;
};

/// Prepends a radiotap header carrying a Flags field, optionally appending a
/// real FCS and setting the FCS-at-end flag.
Bytes wrap_radiotap(ByteView frame80211, RadiotapOptions options = {});

}  // namespace wifitax
