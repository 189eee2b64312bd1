#include "doctest.h"
#include "oracle_vectors.hpp"
#include "wifitax/dhcp.hpp"

using namespace wifitax;

namespace {

const MacAddress kClient = *MacAddress::parse("02:11:22:33:44:55");

std::optional<DhcpErrc> error_of(ByteView bytes) {
  try {
    parse_dhcp(bytes);
  } catch (const DhcpError& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("discover from the reference capture") {
  auto obs = parse_dhcp(oracle::kBootpDhcpDiscover);
  CHECK(obs.client_mac == kClient);
  CHECK(obs.message_type == DhcpMessageType::Discover);
  CHECK(obs.from_client);
  CHECK(obs.option_list == std::vector<std::uint8_t>{1, 3, 6, 15, 119, 252});
  CHECK(dhcp_signature(obs) == "dhcp|1,3,6,15,119,252");
}

TEST_CASE("request without a parameter request list") {
  auto obs = parse_dhcp(oracle::kBootpDhcpRequestNo55);
  CHECK(obs.message_type == DhcpMessageType::Request);
  CHECK(obs.option_list.empty());
  CHECK(dhcp_signature(obs) == "dhcp|");
}

TEST_CASE("published operating-system lists") {
  using List = std::vector<std::uint8_t>;
  CHECK(dhcp_signature(List{1, 33, 3, 6, 15, 26, 28, 51, 58, 59}) == "dhcp|1,33,3,6,15,26,28,51,58,59");
  CHECK(dhcp_signature(List{1, 121, 33, 3, 6, 12, 15, 26, 28, 51, 54, 58, 59, 119}) ==
        "dhcp|1,121,33,3,6,12,15,26,28,51,54,58,59,119");
  CHECK(dhcp_signature(List{1, 3, 6, 15, 119, 252}) == "dhcp|1,3,6,15,119,252");
}

TEST_CASE("option list parsing") {
  CHECK(parse_option_list("dhcp|1,3,6") == std::vector<std::uint8_t>{1, 3, 6});
  CHECK(parse_option_list("1, 33, 3, 6") == std::vector<std::uint8_t>{1, 33, 3, 6});
  CHECK(parse_option_list("dhcp|") == std::vector<std::uint8_t>{});
  CHECK_FALSE(parse_option_list("1,256"));
  CHECK_FALSE(parse_option_list("1,,3"));
  CHECK_FALSE(parse_option_list("1,x"));
}

TEST_CASE("built messages decode to what was put in") {
  for (auto type : {DhcpMessageType::Discover, DhcpMessageType::Request}) {
    auto obs = parse_dhcp(build_dhcp_client_message(kClient, {1, 121, 3}, type));
    CHECK(obs == DhcpObservation{kClient, {1, 121, 3}, type, true});
  }
}

TEST_CASE("rejections") {
  Bytes image = oracle::kBootpDhcpDiscover;
  SUBCASE("shorter than the BOOTP header") {
    image.resize(100);
    CHECK(error_of(image) == DhcpErrc::Truncated);
  }
  SUBCASE("plain BOOTP without the magic cookie") {
    image[236] = 0;
    CHECK(error_of(image) == DhcpErrc::NotDhcp);
  }
  SUBCASE("option length running past the end") {
    image.resize(236 + 4 + 3 + 2);  // cookie, option 53, then option 55 header only
    CHECK(error_of(image) == DhcpErrc::Truncated);
  }
}

TEST_CASE("server reply is marked as not from the client") {
  Bytes image = oracle::kBootpDhcpDiscover;
  image[0] = 2;
  CHECK_FALSE(parse_dhcp(image).from_client);
}
