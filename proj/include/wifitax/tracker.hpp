#pragma once

// Per-client state: pairs probe and association profiles by source MAC and
// emits a signature once both halves are known. Probes from clients that have
// not associated yet wait in a bounded LRU cache so the signature can be
// produced at association time.

#include <chrono>
#include <cstddef>
#include <list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>

#include "wifitax/database.hpp"
#include "wifitax/dhcp.hpp"
#include "wifitax/frame.hpp"
#include "wifitax/signature.hpp"

namespace wifitax {

using Timestamp = std::chrono::microseconds;

enum class ProbeKind { Broadcast, Directed };

/// Broadcast when the SSID element is missing or empty.
ProbeKind probe_kind(const ManagementFrame& probe);

struct ClientRecord {
  MacAddress mac;
  std::optional<FrameProfile> probe;
  std::optional<ProbeKind> probe_kind;
  std::optional<FrameProfile> assoc;
  std::optional<DhcpObservation> dhcp;
  Timestamp last_seen{0};
  std::optional<std::string> last_emitted;  // wifi4 of the latest emission

  bool associated() const { return assoc.has_value(); }
};

class ProbeCache {
 public:
  struct Entry {
    MacAddress mac;
    FrameProfile profile;
    ProbeKind kind = ProbeKind::Broadcast;
    Timestamp seen{0};
  };

  /// Throws std::invalid_argument for capacity 0.
  explicit ProbeCache(std::size_t capacity);

  /// Inserts or refreshes; evicts the least-recently-seen entry when full.
  void put(Entry entry);
  /// Removes and returns the entry for `mac`.
  std::optional<Entry> take(const MacAddress& mac);
  bool contains(const MacAddress& mac) const { return index_.contains(mac); }

  std::size_t size() const { return index_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::size_t evictions() const { return evictions_; }

 private:
  std::size_t capacity_;
  std::size_t evictions_ = 0;
  std::list<Entry> order_;  // front = most recently seen
  std::unordered_map<MacAddress, std::list<Entry>::iterator> index_;
};

inline constexpr std::size_t kDefaultProbeCacheCapacity = 1024;

class ClientTracker {
 public:
  explicit ClientTracker(std::size_t probe_cache_capacity = kDefaultProbeCacheCapacity);

  /// Returns the signature when this frame completes or changes one. Frames of
  /// subtype Other are ignored.
  std::optional<ClientSignature> observe_frame(const ManagementFrame& frame, Timestamp at);

  /// Stores the latest client DHCP Discover/Request for the MAC; never emits.
  void observe_dhcp(const DhcpObservation& obs, Timestamp at = Timestamp{0});

  const std::map<MacAddress, ClientRecord>& clients() const { return clients_; }
  const ClientRecord* client(const MacAddress& mac) const;
  const ProbeCache& probe_cache() const { return cache_; }

  std::size_t emitted_count() const { return emitted_count_; }
  const std::set<std::string>& distinct_signatures() const { return distinct_; }

 private:
  std::optional<ClientSignature> maybe_emit(ClientRecord& record);

  ProbeCache cache_;
  std::map<MacAddress, ClientRecord> clients_;
  std::set<std::string> distinct_;
  std::size_t emitted_count_ = 0;
};

struct TrackerStats {
  std::size_t total_clients = 0;        // MACs with at least one emitted signature
  std::size_t identified = 0;           // of those, resolved to a single model
  std::size_t ambiguous = 0;
  std::size_t distinct_signatures = 0;  // distinct wifi4 strings emitted

  bool operator==(const TrackerStats&) const = default;
};

/// Identification uses each client's latest emitted signature and DHCP observation.
TrackerStats stats(const ClientTracker& tracker, const Database* db);

LookupResult identify_client(const ClientRecord& record, const Database& db);

}  // namespace wifitax
