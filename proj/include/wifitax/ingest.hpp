#pragma once

// Classic pcap ingestion and demultiplexing into management frames and DHCP
// observations.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wifitax/bytes.hpp"
#include "wifitax/dhcp.hpp"
#include "wifitax/frame.hpp"
#include "wifitax/tracker.hpp"

namespace wifitax {

namespace linktype {
inline constexpr std::uint32_t kEthernet = 1;
inline constexpr std::uint32_t kIeee80211 = 105;
inline constexpr std::uint32_t kIeee80211Radiotap = 127;
}  // namespace linktype

struct CaptureRecord {
  Timestamp timestamp{0};
  std::uint32_t link_type = 0;
  Bytes payload;
};

enum class PcapErrc { BadMagic, TruncatedRecord, Io };

class PcapError : public std::runtime_error {
 public:
  PcapError(PcapErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  PcapErrc code() const noexcept { return code_; }

 private:
  PcapErrc code_;
};

/// Streams records from a classic pcap file (either byte order, micro- or
/// nanosecond timestamps). Throws PcapError.
class PcapReader {
 public:
  explicit PcapReader(const std::filesystem::path& file);
  explicit PcapReader(std::unique_ptr<std::istream> in);

  std::optional<CaptureRecord> next();
  std::uint32_t link_type() const { return link_type_; }

 private:
  void read_header();
  std::uint32_t read32(const std::uint8_t* p) const;

  std::unique_ptr<std::istream> in_;
  bool swapped_ = false;
  bool nanosecond_ = false;
  std::uint32_t link_type_ = 0;
};

std::vector<CaptureRecord> read_pcap(const std::filesystem::path& file);

/// Parses a whole pcap image held in memory.
std::vector<CaptureRecord> parse_pcap(ByteView image);

/// Little-endian, microsecond pcap image.
Bytes serialize_pcap(std::uint32_t link_type, const std::vector<CaptureRecord>& records);
void write_pcap(const std::filesystem::path& file, std::uint32_t link_type, const std::vector<CaptureRecord>& records);

struct WifiEvent {
  ManagementFrame frame;
};
struct DhcpEvent {
  DhcpObservation obs;
};
enum class SkipReason { NotRelevant, Malformed, UnsupportedLinkType };
struct SkipEvent {
  SkipReason reason = SkipReason::NotRelevant;
  std::string detail;
};

using IngestEvent = std::variant<WifiEvent, DhcpEvent, SkipEvent>;

/// Never throws for payload content: parse failures come back as Skip(Malformed).
IngestEvent demux(const CaptureRecord& record);

/// Ethernet / IPv4 / UDP 68->67 framing around a BOOTP payload.
Bytes wrap_ethernet_udp(const MacAddress& src, ByteView bootp);

struct IngestCounters {
  std::size_t records = 0;
  std::size_t wifi_events = 0;
  std::size_t dhcp_events = 0;
  std::size_t skips = 0;
  std::size_t malformed = 0;  // subset of skips

  bool conserved() const { return records == wifi_events + dhcp_events + skips; }
};

/// Feeds records through demux into a tracker, counting outcomes.
class Ingestor {
 public:
  using SignatureSink = std::function<void(const ClientSignature&)>;

  Ingestor(ClientTracker& tracker, SignatureSink sink = {});

  void process(const CaptureRecord& record);
  const IngestCounters& counters() const { return counters_; }

 private:
  ClientTracker& tracker_;
  SignatureSink sink_;
  IngestCounters counters_;
};

/// Reads every file, merges records by timestamp (stable), and returns them.
std::vector<CaptureRecord> read_captures(const std::vector<std::filesystem::path>& files);

}  // namespace wifitax
