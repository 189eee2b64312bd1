#include "wifitax/tracker.hpp"

#include <stdexcept>

namespace wifitax {

ProbeKind probe_kind(const ManagementFrame& probe) {
  for (const auto& ie : probe.elements) {
    if (ie.id == 0) return ie.payload.empty() ? ProbeKind::Broadcast : ProbeKind::Directed;
  }
  return ProbeKind::Broadcast;
}

ProbeCache::ProbeCache(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("probe cache capacity must be positive");
}

void ProbeCache::put(Entry entry) {
  if (auto it = index_.find(entry.mac); it != index_.end()) {
    *it->second = std::move(entry);
    order_.splice(order_.begin(), order_, it->second);
    return;
  }
  if (index_.size() == capacity_) {
    index_.erase(order_.back().mac);
    order_.pop_back();
    ++evictions_;
  }
  order_.push_front(std::move(entry));
  index_.emplace(order_.front().mac, order_.begin());
}

std::optional<ProbeCache::Entry> ProbeCache::take(const MacAddress& mac) {
  auto it = index_.find(mac);
  if (it == index_.end()) return std::nullopt;
  Entry entry = std::move(*it->second);
  order_.erase(it->second);
  index_.erase(it);
  return entry;
}

ClientTracker::ClientTracker(std::size_t probe_cache_capacity) : cache_(probe_cache_capacity) {}

const ClientRecord* ClientTracker::client(const MacAddress& mac) const {
  auto it = clients_.find(mac);
  return it == clients_.end() ? nullptr : &it->second;
}

std::optional<ClientSignature> ClientTracker::observe_frame(const ManagementFrame& frame, Timestamp at) {
  if (frame.subtype == FrameSubtype::Other) return std::nullopt;
  const MacAddress& mac = frame.source_mac;

  if (frame.subtype == FrameSubtype::ProbeRequest) {
    auto it = clients_.find(mac);
    if (it == clients_.end() || !it->second.associated()) {
      cache_.put({mac, extract_profile(frame), probe_kind(frame), at});
      return std::nullopt;
    }
    auto& record = it->second;
    record.probe = extract_profile(frame);
    record.probe_kind = probe_kind(frame);
    record.last_seen = at;
    return maybe_emit(record);
  }

  auto& record = clients_[mac];
  record.mac = mac;
  record.assoc = extract_profile(frame);
  record.last_seen = at;
  if (auto cached = cache_.take(mac)) {
    record.probe = std::move(cached->profile);
    record.probe_kind = cached->kind;
  }
  return maybe_emit(record);
}

void ClientTracker::observe_dhcp(const DhcpObservation& obs, Timestamp at) {
  auto& record = clients_[obs.client_mac];
  record.mac = obs.client_mac;
  record.dhcp = obs;
  if (at > record.last_seen) record.last_seen = at;
}

std::optional<ClientSignature> ClientTracker::maybe_emit(ClientRecord& record) {
  if (!record.probe || !record.assoc) return std::nullopt;
  auto wifi4 = compose_signature(*record.probe, *record.assoc);
  if (record.last_emitted == wifi4) return std::nullopt;
  record.last_emitted = wifi4;
  distinct_.insert(wifi4);
  ++emitted_count_;
  ClientSignature sig{record.mac, std::move(wifi4), std::nullopt};
  if (record.dhcp) sig.dhcp = dhcp_signature(*record.dhcp);
  return sig;
}

LookupResult identify_client(const ClientRecord& record, const Database& db) {
  if (!record.last_emitted) return NoMatch{};
  std::optional<std::string> dhcp;
  if (record.dhcp) dhcp = dhcp_signature(*record.dhcp);
  return lookup(db, *record.last_emitted, record.mac, dhcp);
}

TrackerStats stats(const ClientTracker& tracker, const Database* db) {
  TrackerStats out;
  out.distinct_signatures = tracker.distinct_signatures().size();
  for (const auto& [mac, record] : tracker.clients()) {
    if (!record.last_emitted) continue;
    ++out.total_clients;
    if (!db) continue;
    auto result = identify_client(record, *db);
    if (std::holds_alternative<Identification>(result)) ++out.identified;
    if (std::holds_alternative<Ambiguous>(result)) ++out.ambiguous;
  }
  return out;
}

}  // namespace wifitax
