#include "wifitax/frame.hpp"

#include <zlib.h>

namespace wifitax {

namespace {

constexpr std::uint8_t kTypeManagement = 0;
constexpr std::uint8_t kSubtypeAssocRequest = 0;
constexpr std::uint8_t kSubtypeReassocRequest = 2;
constexpr std::uint8_t kSubtypeProbeRequest = 4;

constexpr std::uint8_t kFlagOrder = 0x80;  // +HTC: 4-byte HT Control follows the header
constexpr std::size_t kHtControlSize = 4;
constexpr std::size_t kFcsSize = 4;

constexpr std::uint32_t kRadiotapPresentTsft = 1u << 0;
constexpr std::uint32_t kRadiotapPresentFlags = 1u << 1;
constexpr std::uint32_t kRadiotapPresentExt = 1u << 31;
constexpr std::uint8_t kRadiotapFlagFcs = 0x10;

const MacAddress kLabBssid{{0x02, 0x00, 0x5e, 0x10, 0x00, 0x01}};
const MacAddress kBroadcast{{0xff, 0xff, 0xff, 0xff, 0xff, 0xff}};

std::size_t fixed_parameter_size(FrameSubtype subtype) {
  switch (subtype) {
    case FrameSubtype::AssociationRequest: return 4;
    case FrameSubtype::ReassociationRequest: return 10;
    default: return 0;
  }
}

// Returns the 802.11 frame inside a radiotap capture, FCS removed if flagged.
ByteView strip_radiotap(ByteView bytes) {
  if (bytes.size() < 8) throw FrameError(FrameErrc::BadRadiotap, "radiotap header shorter than 8 bytes");
  if (bytes[0] != 0) throw FrameError(FrameErrc::BadRadiotap, "unsupported radiotap version");
  const std::size_t header_len = load_le16(bytes.data() + 2);
  if (header_len < 8 || header_len > bytes.size()) {
    throw FrameError(FrameErrc::BadRadiotap, "radiotap length exceeds buffer");
  }

  const std::uint32_t first_present = load_le32(bytes.data() + 4);
  std::size_t offset = 4;
  std::uint32_t word = first_present;
  for (;;) {
    offset += 4;
    if (!(word & kRadiotapPresentExt)) break;
    if (offset + 4 > header_len) throw FrameError(FrameErrc::BadRadiotap, "radiotap present words overrun header");
    word = load_le32(bytes.data() + offset);
  }

  std::uint8_t flags = 0;
  if (first_present & kRadiotapPresentFlags) {
    if (first_present & kRadiotapPresentTsft) {
      offset = (offset + 7) & ~std::size_t{7};
      offset += 8;
    }
    if (offset >= header_len) throw FrameError(FrameErrc::BadRadiotap, "radiotap flags field outside header");
    flags = bytes[offset];
  }

  ByteView frame = bytes.subspan(header_len);
  if (flags & kRadiotapFlagFcs) {
    if (frame.size() < kFcsSize) throw FrameError(FrameErrc::TruncatedFrame, "frame shorter than its FCS");
    frame = frame.first(frame.size() - kFcsSize);
  }
  return frame;
}

}  // namespace

std::string to_string(FrameSubtype subtype) {
  switch (subtype) {
    case FrameSubtype::ProbeRequest: return "probe-request";
    case FrameSubtype::AssociationRequest: return "association-request";
    case FrameSubtype::ReassociationRequest: return "reassociation-request";
    case FrameSubtype::Other: return "other";
  }
  return "other";
}

std::string to_string(FrameErrc code) {
  switch (code) {
    case FrameErrc::TruncatedFrame: return "TruncatedFrame";
    case FrameErrc::MalformedIE: return "MalformedIE";
    case FrameErrc::BadRadiotap: return "BadRadiotap";
    case FrameErrc::OversizeIE: return "OversizeIE";
  }
  return "FrameError";
}

std::vector<InformationElement> parse_elements(ByteView region) {
  std::vector<InformationElement> elements;
  std::size_t pos = 0;
  while (pos < region.size()) {
    if (region.size() - pos < 2) {
      throw FrameError(FrameErrc::MalformedIE, "dangling tag header at offset " + std::to_string(pos));
    }
    const std::uint8_t id = region[pos];
    const std::size_t len = region[pos + 1];
    pos += 2;
    if (len > region.size() - pos) {
      throw FrameError(FrameErrc::MalformedIE, "IE " + std::to_string(id) + " declares length " +
                                                   std::to_string(len) + " with " +
                                                   std::to_string(region.size() - pos) + " bytes remaining");
    }
    auto body = region.subspan(pos, len);
    elements.push_back({id, Bytes(body.begin(), body.end())});
    pos += len;
  }
  return elements;
}

ManagementFrame parse_management_frame(ByteView bytes, Encapsulation encapsulation) {
  if (encapsulation == Encapsulation::Radiotap) bytes = strip_radiotap(bytes);
  if (bytes.size() < 2) throw FrameError(FrameErrc::TruncatedFrame, "frame shorter than frame control");

  ManagementFrame frame;
  const std::uint8_t fc0 = bytes[0];
  const std::uint8_t version = fc0 & 0x3;
  const std::uint8_t type = (fc0 >> 2) & 0x3;
  const std::uint8_t subtype = fc0 >> 4;
  if (version != 0 || type != kTypeManagement) return frame;

  std::size_t header = kMacHeaderSize;
  if (bytes.size() >= 2 && (bytes[1] & kFlagOrder)) header += kHtControlSize;
  if (bytes.size() < header) {
    throw FrameError(FrameErrc::TruncatedFrame, "management frame shorter than its MAC header");
  }

  switch (subtype) {
    case kSubtypeProbeRequest: frame.subtype = FrameSubtype::ProbeRequest; break;
    case kSubtypeAssocRequest: frame.subtype = FrameSubtype::AssociationRequest; break;
    case kSubtypeReassocRequest: frame.subtype = FrameSubtype::ReassociationRequest; break;
    default: return frame;
  }
  frame.source_mac = MacAddress::from_bytes(bytes.subspan(10, 6));

  const std::size_t fixed = fixed_parameter_size(frame.subtype);
  if (bytes.size() < header + fixed) {
    throw FrameError(FrameErrc::TruncatedFrame, "frame shorter than its fixed parameters");
  }
  const std::uint8_t* params = bytes.data() + header;
  if (fixed >= 4) {
    frame.capabilities = load_le16(params);
    frame.listen_interval = load_le16(params + 2);
  }
  if (fixed == 10) frame.current_ap = MacAddress::from_bytes(bytes.subspan(header + 4, 6));

  frame.elements = parse_elements(bytes.subspan(header + fixed));
  return frame;
}

std::optional<VendorIdentity> vendor_identity(const InformationElement& ie) {
  if (ie.id != kVendorSpecificId || ie.payload.size() < 4) return std::nullopt;
  return VendorIdentity{Oui{{ie.payload[0], ie.payload[1], ie.payload[2]}}, ie.payload[3]};
}

Bytes synthesize_frame(const ManagementFrame& frame) {
  std::uint8_t subtype = 0;
  switch (frame.subtype) {
    case FrameSubtype::ProbeRequest: subtype = kSubtypeProbeRequest; break;
    case FrameSubtype::AssociationRequest: subtype = kSubtypeAssocRequest; break;
    case FrameSubtype::ReassociationRequest: subtype = kSubtypeReassocRequest; break;
    case FrameSubtype::Other: throw std::invalid_argument("cannot synthesize a frame of subtype Other");
  }
  for (const auto& ie : frame.elements) {
    if (ie.payload.size() > 255) {
      throw FrameError(FrameErrc::OversizeIE, "IE " + std::to_string(ie.id) + " payload of " +
                                                  std::to_string(ie.payload.size()) + " bytes");
    }
  }

  const MacAddress& receiver = frame.subtype == FrameSubtype::ProbeRequest ? kBroadcast : kLabBssid;
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(subtype << 4));
  out.push_back(0);
  append_le16(out, 0);  // duration
  out.insert(out.end(), receiver.octets.begin(), receiver.octets.end());
  out.insert(out.end(), frame.source_mac.octets.begin(), frame.source_mac.octets.end());
  out.insert(out.end(), receiver.octets.begin(), receiver.octets.end());
  append_le16(out, 0);  // sequence control

  if (frame.subtype != FrameSubtype::ProbeRequest) {
    append_le16(out, frame.capabilities.value_or(0));
    append_le16(out, frame.listen_interval.value_or(0));
    if (frame.subtype == FrameSubtype::ReassociationRequest) {
      const MacAddress ap = frame.current_ap.value_or(MacAddress{});
      out.insert(out.end(), ap.octets.begin(), ap.octets.end());
    }
  }
  for (const auto& ie : frame.elements) {
    out.push_back(ie.id);
    out.push_back(static_cast<std::uint8_t>(ie.payload.size()));
    out.insert(out.end(), ie.payload.begin(), ie.payload.end());
  }
  return out;
}

Bytes wrap_radiotap(ByteView frame80211, RadiotapOptions options) {
  Bytes out{0x00, 0x00};
  append_le16(out, 9);
  append_le32(out, kRadiotapPresentFlags);
  out.push_back(options.append_fcs ? kRadiotapFlagFcs : 0);
  out.insert(out.end(), frame80211.begin(), frame80211.end());
  if (options.append_fcs) {
    const auto crc = crc32(0L, frame80211.data(), static_cast<uInt>(frame80211.size()));
    append_le32(out, static_cast<std::uint32_t>(crc));
  }
  return out;
}

}  // namespace wifitax
