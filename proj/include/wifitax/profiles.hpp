#pragma once

// Built-in client profiles for the devices whose signatures have been
// published. Each profile carries hand-assembled element bytes for one probe
// and one association request, plus the published signature text and the
// corrections needed to bring that text to canonical form.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wifitax/bytes.hpp"
#include "wifitax/frame.hpp"
#include "wifitax/ingest.hpp"

namespace wifitax {

/// A literal substring replacement applied to published text.
struct TextCorrection {
  std::string from;
  std::string to;
  std::string why;
};

struct DeviceProfile {
  std::string name;   // CLI name, e.g. "iphone-5s"
  std::string model;  // database model name
  MacAddress mac;
  std::vector<InformationElement> probe;
  std::vector<InformationElement> assoc;
  std::uint16_t capabilities = 0;
  std::vector<std::uint8_t> dhcp_options;  // empty: no DHCP traffic

  std::string published_wifi4;  // line breaks and padding removed, otherwise verbatim
  std::vector<TextCorrection> corrections;
  std::optional<std::string> published_dhcp;

  ManagementFrame probe_frame() const;
  ManagementFrame assoc_frame() const;
  /// Published text with every correction applied.
  std::string canonical_wifi4() const;
};

const std::vector<DeviceProfile>& builtin_profiles();
const DeviceProfile* find_profile(std::string_view name);

std::string apply_corrections(std::string text, const std::vector<TextCorrection>& corrections);

struct FixtureCapture {
  std::vector<CaptureRecord> wifi;  // radiotap, linktype 127
  std::vector<CaptureRecord> dhcp;  // Ethernet, linktype 1
};

/// Probe, association and (when the profile has options) DHCP Discover for
/// each profile, spaced ten seconds apart from `start`.
FixtureCapture build_fixture_capture(const std::vector<const DeviceProfile*>& profiles,
                                     Timestamp start = std::chrono::seconds(1462060800));

}  // namespace wifitax
