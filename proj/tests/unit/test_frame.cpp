#include <random>

#include "doctest.h"
#include "oracle_vectors.hpp"
#include "wifitax/frame.hpp"

using namespace wifitax;

namespace {

InformationElement elem(std::uint8_t id, Bytes payload = {}) { return {id, std::move(payload)}; }

const MacAddress kSrc = *MacAddress::parse("02:11:22:33:44:55");

}  // namespace

TEST_CASE("probe request with SSID and rates") {
  auto f = parse_management_frame(oracle::kProbeSsidRates, Encapsulation::Raw80211);
  CHECK(f.subtype == FrameSubtype::ProbeRequest);
  CHECK(f.source_mac == kSrc);
  CHECK_FALSE(f.capabilities);
  CHECK_FALSE(f.listen_interval);
  REQUIRE(f.elements.size() == 2);
  CHECK(f.elements[0] == elem(0));
  CHECK(f.elements[1] == elem(1, {0x02, 0x04, 0x0b, 0x16}));
}

TEST_CASE("probe request without tagged parameters") {
  auto f = parse_management_frame(oracle::kProbeNoElements, Encapsulation::Raw80211);
  CHECK(f.subtype == FrameSubtype::ProbeRequest);
  CHECK(f.elements.empty());
}

TEST_CASE("association request fixed parameters") {
  auto f = parse_management_frame(oracle::kAssocReq, Encapsulation::Raw80211);
  CHECK(f.subtype == FrameSubtype::AssociationRequest);
  CHECK(f.source_mac == kSrc);
  CHECK(f.capabilities == 0x0431);
  CHECK(f.listen_interval == 10);
  CHECK_FALSE(f.current_ap);
  REQUIRE(f.elements.size() == 3);
  CHECK(f.elements[0] == elem(0, {'l', 'a', 'b'}));
  CHECK(f.elements[1] == elem(1, {0x82, 0x84}));
  CHECK(f.elements[2] == elem(221, {0x00, 0x50, 0xf2, 0x02, 0x00, 0x01, 0x00}));

  auto vendor = vendor_identity(f.elements[2]);
  REQUIRE(vendor);
  CHECK(vendor->oui.to_hex() == "0050f2");
  CHECK(vendor->subtype == 2);
  CHECK_FALSE(vendor_identity(f.elements[0]));
}

TEST_CASE("reassociation request carries the current AP") {
  auto f = parse_management_frame(oracle::kReassocReq, Encapsulation::Raw80211);
  CHECK(f.subtype == FrameSubtype::ReassociationRequest);
  CHECK(f.capabilities == 0x1104);
  CHECK(f.listen_interval == 3);
  REQUIRE(f.current_ap);
  CHECK(f.current_ap->to_string() == "02:01:02:03:04:05");
  REQUIRE(f.elements.size() == 2);
  CHECK(f.elements[1].id == 45);
  CHECK(f.elements[1].payload.size() == 26);
}

TEST_CASE("radiotap encapsulation") {
  const auto bare = parse_management_frame(oracle::kProbeSsidRates, Encapsulation::Raw80211);

  SUBCASE("FCS flag strips the trailing checksum") {
    CHECK(parse_management_frame(oracle::kRadiotapFcsProbe, Encapsulation::Radiotap) == bare);
  }
  SUBCASE("TSFT before Flags is 8-byte aligned") {
    CHECK(parse_management_frame(oracle::kRadiotapTsftProbe, Encapsulation::Radiotap) == bare);
  }
  SUBCASE("wrap_radiotap with FCS reproduces the reference bytes") {
    CHECK(wrap_radiotap(oracle::kProbeSsidRates) == oracle::kRadiotapFcsProbe);
  }
  SUBCASE("wrap_radiotap without FCS") {
    auto wrapped = wrap_radiotap(oracle::kProbeSsidRates, {.append_fcs = false});
    CHECK(wrapped.size() == oracle::kProbeSsidRates.size() + 9);
    CHECK(parse_management_frame(wrapped, Encapsulation::Radiotap) == bare);
  }
  SUBCASE("header length past the buffer") {
    Bytes bad = oracle::kRadiotapFcsProbe;
    bad[2] = 0xff;
    CHECK_THROWS_AS(parse_management_frame(bad, Encapsulation::Radiotap), FrameError);
  }
  SUBCASE("nonzero version") {
    Bytes bad = oracle::kRadiotapFcsProbe;
    bad[0] = 1;
    CHECK_THROWS_AS(parse_management_frame(bad, Encapsulation::Radiotap), FrameError);
  }
}

TEST_CASE("error classes") {
  auto code_of = [](ByteView bytes, Encapsulation enc = Encapsulation::Raw80211) {
    try {
      parse_management_frame(bytes, enc);
    } catch (const FrameError& e) {
      return std::optional<FrameErrc>(e.code());
    }
    return std::optional<FrameErrc>();
  };

  Bytes short_header(oracle::kProbeNoElements.begin(), oracle::kProbeNoElements.begin() + 20);
  CHECK(code_of(short_header) == FrameErrc::TruncatedFrame);

  Bytes short_fixed(oracle::kAssocReq.begin(), oracle::kAssocReq.begin() + 26);
  CHECK(code_of(short_fixed) == FrameErrc::TruncatedFrame);

  Bytes overrun = oracle::kProbeSsidRates;
  overrun[27] = 0x09;  // rates length now runs past the end
  CHECK(code_of(overrun) == FrameErrc::MalformedIE);

  Bytes dangling = oracle::kProbeSsidRates;
  dangling.push_back(0x07);  // id without a length byte
  CHECK(code_of(dangling) == FrameErrc::MalformedIE);

  CHECK(code_of(Bytes{0x00, 0x00, 0x01}, Encapsulation::Radiotap) == FrameErrc::BadRadiotap);
}

TEST_CASE("non-management and other management frames are classified, not rejected") {
  const Bytes ack{0xd4, 0x00, 0x00, 0x00, 0x02, 0x11, 0x22, 0x33, 0x44, 0x55};
  CHECK(parse_management_frame(ack, Encapsulation::Raw80211).subtype == FrameSubtype::Other);

  Bytes beacon = oracle::kProbeNoElements;
  beacon[0] = 0x80;
  CHECK(parse_management_frame(beacon, Encapsulation::Raw80211).subtype == FrameSubtype::Other);
}

TEST_CASE("+HTC order bit adds four header bytes") {
  Bytes with_htc(oracle::kProbeSsidRates.begin(), oracle::kProbeSsidRates.begin() + 24);
  with_htc[1] |= 0x80;
  with_htc.insert(with_htc.end(), {0xaa, 0xbb, 0xcc, 0xdd});
  with_htc.insert(with_htc.end(), oracle::kProbeSsidRates.begin() + 24, oracle::kProbeSsidRates.end());
  CHECK(parse_management_frame(with_htc, Encapsulation::Raw80211).elements ==
        parse_management_frame(oracle::kProbeSsidRates, Encapsulation::Raw80211).elements);
}

TEST_CASE("synthesize is the inverse of parse") {
  for (const auto* vec : {&oracle::kProbeSsidRates, &oracle::kProbeNoElements, &oracle::kAssocReq,
                          &oracle::kReassocReq}) {
    auto parsed = parse_management_frame(*vec, Encapsulation::Raw80211);
    CHECK(parse_management_frame(synthesize_frame(parsed), Encapsulation::Raw80211) == parsed);
  }
  // Probes go to broadcast, so the reference probe is reproduced byte for byte.
  auto probe = parse_management_frame(oracle::kProbeSsidRates, Encapsulation::Raw80211);
  CHECK(synthesize_frame(probe) == oracle::kProbeSsidRates);
}

TEST_CASE("synthesize rejects an element over 255 bytes") {
  ManagementFrame f;
  f.subtype = FrameSubtype::ProbeRequest;
  f.elements.push_back(elem(221, Bytes(256, 0)));
  CHECK_THROWS_AS(synthesize_frame(f), FrameError);
}

TEST_CASE("property: random frames round-trip") {
  std::mt19937_64 rng(0x5eed);
  auto byte = [&] { return static_cast<std::uint8_t>(rng()); };
  const FrameSubtype kinds[] = {FrameSubtype::ProbeRequest, FrameSubtype::AssociationRequest,
                                FrameSubtype::ReassociationRequest};
  for (int i = 0; i < 500; ++i) {
    ManagementFrame f;
    f.subtype = kinds[rng() % 3];
    for (auto& o : f.source_mac.octets) o = byte();
    if (f.subtype != FrameSubtype::ProbeRequest) {
      f.capabilities = static_cast<std::uint16_t>(rng());
      f.listen_interval = static_cast<std::uint16_t>(rng());
    }
    if (f.subtype == FrameSubtype::ReassociationRequest) {
      MacAddress ap;
      for (auto& o : ap.octets) o = byte();
      f.current_ap = ap;
    }
    const auto count = rng() % 12;
    for (std::size_t k = 0; k < count; ++k) {
      Bytes payload(rng() % 40);
      for (auto& b : payload) b = byte();
      f.elements.push_back(elem(byte(), std::move(payload)));
    }
    auto wire = synthesize_frame(f);
    REQUIRE(parse_management_frame(wire, Encapsulation::Raw80211) == f);
    REQUIRE(parse_management_frame(wrap_radiotap(wire), Encapsulation::Radiotap) == f);
  }
}
