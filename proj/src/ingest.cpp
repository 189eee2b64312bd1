#include "wifitax/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace wifitax {

namespace {

constexpr std::uint32_t kMagicMicro = 0xa1b2c3d4;
constexpr std::uint32_t kMagicNano = 0xa1b23c4d;
constexpr std::size_t kGlobalHeaderSize = 24;
constexpr std::size_t kRecordHeaderSize = 16;
constexpr std::uint32_t kMaxRecordSize = 16u << 20;

constexpr std::uint16_t kEtherTypeIpv4 = 0x0800;
constexpr std::uint16_t kEtherTypeVlan = 0x8100;
constexpr std::uint8_t kIpProtoUdp = 17;
constexpr std::uint16_t kBootpServerPort = 67;
constexpr std::uint16_t kBootpClientPort = 68;

std::uint32_t bswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xff00) | ((v << 8) & 0xff0000) | (v << 24);
}

SkipEvent skip(SkipReason reason, std::string detail) { return SkipEvent{reason, std::move(detail)}; }

IngestEvent demux_ethernet(ByteView bytes) {
  if (bytes.size() < 14) return skip(SkipReason::Malformed, "short Ethernet header");
  std::size_t offset = 12;
  std::uint16_t ether_type = load_be16(bytes.data() + offset);
  if (ether_type == kEtherTypeVlan) {
    if (bytes.size() < 18) return skip(SkipReason::Malformed, "short VLAN tag");
    offset += 4;
    ether_type = load_be16(bytes.data() + offset);
  }
  if (ether_type != kEtherTypeIpv4) return skip(SkipReason::NotRelevant, "not IPv4");
  auto ip = bytes.subspan(offset + 2);

  if (ip.size() < 20 || (ip[0] >> 4) != 4) return skip(SkipReason::Malformed, "bad IPv4 header");
  const std::size_t ihl = static_cast<std::size_t>(ip[0] & 0x0f) * 4;
  const std::size_t total = load_be16(ip.data() + 2);
  if (ihl < 20 || total < ihl || total > ip.size()) return skip(SkipReason::Malformed, "bad IPv4 lengths");
  if (ip[9] != kIpProtoUdp) return skip(SkipReason::NotRelevant, "not UDP");
  const std::uint16_t frag = load_be16(ip.data() + 6);
  if (frag & 0x3fff) return skip(SkipReason::NotRelevant, "fragmented datagram");

  auto udp = ip.subspan(ihl, total - ihl);
  if (udp.size() < 8) return skip(SkipReason::Malformed, "short UDP header");
  const std::uint16_t sport = load_be16(udp.data());
  const std::uint16_t dport = load_be16(udp.data() + 2);
  const std::size_t udp_len = load_be16(udp.data() + 4);
  const bool bootp = (sport == kBootpClientPort && dport == kBootpServerPort) ||
                     (sport == kBootpServerPort && dport == kBootpClientPort);
  if (!bootp) return skip(SkipReason::NotRelevant, "not BOOTP ports");
  if (udp_len < 8 || udp_len > udp.size()) return skip(SkipReason::Malformed, "bad UDP length");

  try {
    auto obs = parse_dhcp(udp.subspan(8, udp_len - 8));
    if (!obs.from_client || obs.message_type == DhcpMessageType::Other) {
      return skip(SkipReason::NotRelevant, "not a client Discover/Request");
    }
    return DhcpEvent{std::move(obs)};
  } catch (const DhcpError& e) {
    return skip(SkipReason::Malformed, e.what());
  }
}

}  // namespace

PcapReader::PcapReader(const std::filesystem::path& file) {
  auto in = std::make_unique<std::ifstream>(file, std::ios::binary);
  if (!*in) throw PcapError(PcapErrc::Io, "cannot open " + file.string());
  in_ = std::move(in);
  read_header();
}

PcapReader::PcapReader(std::unique_ptr<std::istream> in) : in_(std::move(in)) { read_header(); }

void PcapReader::read_header() {
  std::uint8_t header[kGlobalHeaderSize];
  in_->read(reinterpret_cast<char*>(header), sizeof header);
  const auto got = static_cast<std::size_t>(in_->gcount());
  if (got < 4) throw PcapError(PcapErrc::BadMagic, "missing pcap magic");
  const std::uint32_t magic = load_le32(header);
  if (magic == kMagicMicro || magic == kMagicNano) {
    swapped_ = false;
  } else if (bswap32(magic) == kMagicMicro || bswap32(magic) == kMagicNano) {
    swapped_ = true;
  } else {
    throw PcapError(PcapErrc::BadMagic, "not a classic pcap file");
  }
  nanosecond_ = read32(header) == kMagicNano;
  if (got < kGlobalHeaderSize) throw PcapError(PcapErrc::TruncatedRecord, "truncated pcap global header");
  link_type_ = read32(header + 20) & 0x0fffffff;
}

std::uint32_t PcapReader::read32(const std::uint8_t* p) const {
  const std::uint32_t v = load_le32(p);
  return swapped_ ? bswap32(v) : v;
}

std::optional<CaptureRecord> PcapReader::next() {
  std::uint8_t header[kRecordHeaderSize];
  in_->read(reinterpret_cast<char*>(header), sizeof header);
  const auto got = static_cast<std::size_t>(in_->gcount());
  if (got == 0) return std::nullopt;
  if (got < kRecordHeaderSize) throw PcapError(PcapErrc::TruncatedRecord, "truncated record header");

  const std::uint32_t seconds = read32(header);
  const std::uint32_t fraction = read32(header + 4);
  const std::uint32_t captured = read32(header + 8);
  if (captured > kMaxRecordSize) throw PcapError(PcapErrc::TruncatedRecord, "implausible record length");

  CaptureRecord record;
  record.link_type = link_type_;
  record.timestamp = std::chrono::seconds(seconds) +
                     (nanosecond_ ? Timestamp(fraction / 1000) : Timestamp(fraction));
  record.payload.resize(captured);
  in_->read(reinterpret_cast<char*>(record.payload.data()), captured);
  if (static_cast<std::uint32_t>(in_->gcount()) != captured) {
    throw PcapError(PcapErrc::TruncatedRecord, "record payload runs past end of file");
  }
  return record;
}

std::vector<CaptureRecord> read_pcap(const std::filesystem::path& file) {
  PcapReader reader(file);
  std::vector<CaptureRecord> out;
  while (auto record = reader.next()) out.push_back(std::move(*record));
  return out;
}

std::vector<CaptureRecord> parse_pcap(ByteView image) {
  PcapReader reader(std::make_unique<std::istringstream>(std::string(image.begin(), image.end())));
  std::vector<CaptureRecord> out;
  while (auto record = reader.next()) out.push_back(std::move(*record));
  return out;
}

Bytes serialize_pcap(std::uint32_t link_type, const std::vector<CaptureRecord>& records) {
  Bytes out;
  append_le32(out, kMagicMicro);
  append_le16(out, 2);
  append_le16(out, 4);
  append_le32(out, 0);       // thiszone
  append_le32(out, 0);       // sigfigs
  append_le32(out, 262144);  // snaplen
  append_le32(out, link_type);
  for (const auto& record : records) {
    const auto us = record.timestamp.count();
    append_le32(out, static_cast<std::uint32_t>(us / 1'000'000));
    append_le32(out, static_cast<std::uint32_t>(us % 1'000'000));
    append_le32(out, static_cast<std::uint32_t>(record.payload.size()));
    append_le32(out, static_cast<std::uint32_t>(record.payload.size()));
    out.insert(out.end(), record.payload.begin(), record.payload.end());
  }
  return out;
}

void write_pcap(const std::filesystem::path& file, std::uint32_t link_type, const std::vector<CaptureRecord>& records) {
  const auto image = serialize_pcap(link_type, records);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw PcapError(PcapErrc::Io, "cannot write " + file.string());
  out.write(reinterpret_cast<const char*>(image.data()), static_cast<std::streamsize>(image.size()));
  if (!out) throw PcapError(PcapErrc::Io, "write failed for " + file.string());
}

IngestEvent demux(const CaptureRecord& record) {
  switch (record.link_type) {
    case linktype::kIeee80211:
    case linktype::kIeee80211Radiotap: {
      const auto encap =
          record.link_type == linktype::kIeee80211 ? Encapsulation::Raw80211 : Encapsulation::Radiotap;
      try {
        auto frame = parse_management_frame(record.payload, encap);
        if (frame.subtype == FrameSubtype::Other) return skip(SkipReason::NotRelevant, "not a probe/assoc request");
        return WifiEvent{std::move(frame)};
      } catch (const FrameError& e) {
        return skip(SkipReason::Malformed, to_string(e.code()) + ": " + e.what());
      }
    }
    case linktype::kEthernet:
      return demux_ethernet(record.payload);
    default:
      return skip(SkipReason::UnsupportedLinkType, "link type " + std::to_string(record.link_type));
  }
}

Bytes wrap_ethernet_udp(const MacAddress& src, ByteView bootp) {
  Bytes out;
  out.reserve(14 + 28 + bootp.size());
  out.assign(6, 0xff);
  out.insert(out.end(), src.octets.begin(), src.octets.end());
  append_be16(out, kEtherTypeIpv4);

  const std::size_t ip_start = out.size();
  const auto udp_len = static_cast<std::uint16_t>(8 + bootp.size());
  out.push_back(0x45);
  out.push_back(0x10);
  append_be16(out, static_cast<std::uint16_t>(20 + udp_len));
  append_be16(out, 0);  // id
  append_be16(out, 0);  // flags/fragment
  out.push_back(64);
  out.push_back(kIpProtoUdp);
  append_be16(out, 0);  // checksum, filled below
  for (int i = 0; i < 4; ++i) out.push_back(0x00);
  for (int i = 0; i < 4; ++i) out.push_back(0xff);
  std::uint32_t sum = 0;
  for (std::size_t i = ip_start; i < ip_start + 20; i += 2) sum += load_be16(out.data() + i);
  while (sum >> 16) sum = (sum & 0xffff) + (sum >> 16);
  const auto checksum = static_cast<std::uint16_t>(~sum);
  out[ip_start + 10] = static_cast<std::uint8_t>(checksum >> 8);
  out[ip_start + 11] = static_cast<std::uint8_t>(checksum);

  append_be16(out, kBootpClientPort);
  append_be16(out, kBootpServerPort);
  append_be16(out, udp_len);
  append_be16(out, 0);
  out.insert(out.end(), bootp.begin(), bootp.end());
  return out;
}

Ingestor::Ingestor(ClientTracker& tracker, SignatureSink sink) : tracker_(tracker), sink_(std::move(sink)) {}

void Ingestor::process(const CaptureRecord& record) {
  ++counters_.records;
  auto event = demux(record);
  if (auto* wifi = std::get_if<WifiEvent>(&event)) {
    ++counters_.wifi_events;
    if (auto sig = tracker_.observe_frame(wifi->frame, record.timestamp); sig && sink_) sink_(*sig);
  } else if (auto* dhcp = std::get_if<DhcpEvent>(&event)) {
    ++counters_.dhcp_events;
    tracker_.observe_dhcp(dhcp->obs, record.timestamp);
  } else {
    ++counters_.skips;
    if (std::get<SkipEvent>(event).reason == SkipReason::Malformed) ++counters_.malformed;
  }
}

std::vector<CaptureRecord> read_captures(const std::vector<std::filesystem::path>& files) {
  std::vector<CaptureRecord> all;
  for (const auto& file : files) {
    auto records = read_pcap(file);
    all.insert(all.end(), std::make_move_iterator(records.begin()), std::make_move_iterator(records.end()));
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const CaptureRecord& a, const CaptureRecord& b) { return a.timestamp < b.timestamp; });
  return all;
}

}  // namespace wifitax
