#include "wifitax/signature.hpp"

#include <array>
#include <stdexcept>

namespace wifitax {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_lower_hex(char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Field names in emission order, with their fixed hex width (0 = variable).
struct FieldSpec {
  std::string_view name;
  int hex_digits;
};
constexpr std::array<FieldSpec, 9> kFieldOrder{{
    {"htcap", 4},
    {"htagg", 2},
    {"htmcs", 8},
    {"vhtcap", 8},
    {"vhtrxmcs", 8},
    {"vhttxmcs", 8},
    {"txpow", 4},
    {"extcap", 0},
    {"wps", 0},
}};

// Recursive-descent recognizer over one half of a signature.
class PartRecognizer {
 public:
  explicit PartRecognizer(std::string_view text) : text_(text) {}

  bool accept() {
    if (text_.empty()) return true;
    if (!token()) return false;
    bool in_fields = false;
    std::size_t next_field = 0;
    while (pos_ < text_.size()) {
      if (!consume(',')) return false;
      if (pos_ < text_.size() && is_digit(text_[pos_])) {
        if (in_fields || !token()) return false;
      } else {
        in_fields = true;
        if (!field(next_field)) return false;
      }
    }
    return true;
  }

 private:
  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool consume(std::string_view s) {
    if (text_.substr(pos_).starts_with(s)) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  // Decimal 0..255 without leading zeros.
  bool number(int* out = nullptr) {
    const std::size_t start = pos_;
    int value = 0;
    while (pos_ < text_.size() && is_digit(text_[pos_]) && pos_ - start < 3) {
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    const std::size_t len = pos_ - start;
    if (len == 0 || value > 255 || (len > 1 && text_[start] == '0')) return false;
    if (pos_ < text_.size() && is_digit(text_[pos_])) return false;
    if (out) *out = value;
    return true;
  }

  bool token() {
    int id = 0;
    if (!number(&id)) return false;
    if (id == kVendorSpecificId && consume('(')) {
      for (int i = 0; i < 6; ++i) {
        if (pos_ >= text_.size() || !is_lower_hex(text_[pos_])) return false;
        ++pos_;
      }
      return consume(',') && number() && consume(')');
    }
    if (id == kElementIdExtension && consume('(')) return number() && consume(')');
    return true;
  }

  bool field(std::size_t& next_field) {
    for (std::size_t i = next_field; i < kFieldOrder.size(); ++i) {
      const auto& expected = kFieldOrder[i];
      const std::size_t save = pos_;
      if (!(consume(expected.name) && consume(':'))) {
        pos_ = save;
        continue;
      }
      const std::size_t start = pos_;
      if (expected.name == "wps") {
        while (pos_ < text_.size() && (is_alnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          ++pos_;
        }
        if (pos_ == start) return false;
      } else {
        while (pos_ < text_.size() && is_lower_hex(text_[pos_])) ++pos_;
        const std::size_t len = pos_ - start;
        if (expected.hex_digits ? len != static_cast<std::size_t>(expected.hex_digits) : (len == 0 || len % 2)) {
          return false;
        }
      }
      next_field = i + 1;
      return true;
    }
    return false;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

constexpr std::string_view kPrefix = "wifi4|probe:";
constexpr std::string_view kAssocMarker = "|assoc:";

}  // namespace

std::string sanitize_wps_name(ByteView raw) {
  std::string out;
  out.reserve(raw.size());
  for (auto b : raw) out.push_back(is_alnum(b) ? static_cast<char>(b) : '_');
  return out;
}

std::optional<Bytes> wps_model_name(ByteView attrs) {
  std::optional<Bytes> model;
  std::optional<Bytes> device;
  std::size_t pos = 0;
  while (attrs.size() - pos >= 4) {
    const std::uint16_t type = load_be16(attrs.data() + pos);
    const std::size_t len = load_be16(attrs.data() + pos + 2);
    pos += 4;
    if (len > attrs.size() - pos) break;
    auto value = attrs.subspan(pos, len);
    if (type == kWpsAttrModelName && !model) model.emplace(value.begin(), value.end());
    if (type == kWpsAttrDeviceName && !device) device.emplace(value.begin(), value.end());
    pos += len;
  }
  if (model && !model->empty()) return model;
  if (device && !device->empty()) return device;
  return std::nullopt;
}

IeToken token_for(const InformationElement& ie) {
  if (auto vendor = vendor_identity(ie)) return *vendor;
  if (ie.id == kElementIdExtension && !ie.payload.empty()) return ExtensionToken{ie.payload[0]};
  return PlainToken{ie.id};
}

FrameProfile extract_profile(const ManagementFrame& frame) {
  if (frame.subtype == FrameSubtype::Other) {
    throw std::invalid_argument("profile extraction needs a probe or (re)association request");
  }
  FrameProfile profile;
  bool seen_ht = false, seen_vht = false, seen_power = false, seen_extcap = false;

  for (const auto& ie : frame.elements) {
    profile.ie_tokens.push_back(token_for(ie));
    const auto& body = ie.payload;
    switch (ie.id) {
      case ie::kHtCapabilities:
        if (seen_ht) break;
        seen_ht = true;
        if (body.size() >= 2) profile.htcap = load_le16(body.data());
        if (body.size() >= 3) profile.htagg = body[2];
        if (body.size() >= 7) profile.htmcs = load_le32(body.data() + 3);
        break;
      case ie::kVhtCapabilities:
        if (seen_vht) break;
        seen_vht = true;
        if (body.size() >= 4) profile.vhtcap = load_le32(body.data());
        if (body.size() >= 8) profile.vhtrxmcs = load_le32(body.data() + 4);
        if (body.size() >= 12) profile.vhttxmcs = load_le32(body.data() + 8);
        break;
      case ie::kPowerCapability:
        if (seen_power) break;
        seen_power = true;
        if (body.size() >= 2) profile.txpow = load_le16(body.data());
        break;
      case ie::kExtendedCapabilities:
        if (seen_extcap) break;
        seen_extcap = true;
        if (!body.empty()) profile.extcap = body;
        break;
      case kVendorSpecificId:
        if (profile.wps_name) break;
        if (auto vendor = vendor_identity(ie);
            vendor && vendor->oui == kMicrosoftOui && vendor->subtype == kWpsVendorSubtype) {
          if (auto name = wps_model_name(ByteView(body).subspan(4))) profile.wps_name = sanitize_wps_name(*name);
        }
        break;
      default:
        break;
    }
  }
  return profile;
}

std::string render_token(const IeToken& token) {
  return std::visit(
      Overloaded{
          [](const PlainToken& t) { return std::to_string(t.id); },
          [](const VendorIdentity& v) {
            return "221(" + v.oui.to_hex() + "," + std::to_string(v.subtype) + ")";
          },
          [](const ExtensionToken& t) { return "255(" + std::to_string(t.ext_id) + ")"; },
      },
      token);
}

std::string render_profile(const FrameProfile& p) {
  std::string out;
  auto add = [&out](const std::string& item) {
    if (!out.empty()) out.push_back(',');
    out += item;
  };
  for (const auto& token : p.ie_tokens) add(render_token(token));
  if (p.htcap) add("htcap:" + hex_fixed(*p.htcap, 4));
  if (p.htagg) add("htagg:" + hex_fixed(*p.htagg, 2));
  if (p.htmcs) add("htmcs:" + hex_fixed(*p.htmcs, 8));
  if (p.vhtcap) add("vhtcap:" + hex_fixed(*p.vhtcap, 8));
  if (p.vhtrxmcs) add("vhtrxmcs:" + hex_fixed(*p.vhtrxmcs, 8));
  if (p.vhttxmcs) add("vhttxmcs:" + hex_fixed(*p.vhttxmcs, 8));
  if (p.txpow) add("txpow:" + hex_fixed(*p.txpow, 4));
  if (p.extcap) add("extcap:" + hex_bytes(*p.extcap));
  if (p.wps_name) add("wps:" + *p.wps_name);
  return out;
}

std::string compose_signature(const FrameProfile& probe, const FrameProfile& assoc) {
  return std::string(kPrefix) + render_profile(probe) + std::string(kAssocMarker) + render_profile(assoc);
}

std::string_view signature_grammar_regex() {
  // Mirrors PartRecognizer; docs/signature-grammar.md carries the same pattern.
  static const std::string pattern = [] {
    const std::string num = "(?:25[0-5]|2[0-4][0-9]|1[0-9][0-9]|[1-9]?[0-9])";
    const std::string token = "(?:221\\([0-9a-f]{6}," + num + "\\)|255\\(" + num + "\\)|" + num + ")";
    const std::string fields =
        "(?:,htcap:[0-9a-f]{4})?(?:,htagg:[0-9a-f]{2})?(?:,htmcs:[0-9a-f]{8})?"
        "(?:,vhtcap:[0-9a-f]{8})?(?:,vhtrxmcs:[0-9a-f]{8})?(?:,vhttxmcs:[0-9a-f]{8})?"
        "(?:,txpow:[0-9a-f]{4})?(?:,extcap:(?:[0-9a-f]{2})+)?(?:,wps:[A-Za-z0-9_]+)?";
    const std::string part = "(?:" + token + "(?:," + token + ")*" + fields + ")?";
    return "^wifi4\\|probe:" + part + "\\|assoc:" + part + "$";
  }();
  return pattern;
}

std::optional<SignatureParts> split_signature(std::string_view text) {
  if (!text.starts_with(kPrefix)) return std::nullopt;
  text.remove_prefix(kPrefix.size());
  const auto bar = text.find('|');
  if (bar == std::string_view::npos || !text.substr(bar).starts_with(kAssocMarker)) return std::nullopt;
  SignatureParts parts{text.substr(0, bar), text.substr(bar + kAssocMarker.size())};
  if (parts.assoc.find('|') != std::string_view::npos) return std::nullopt;
  return parts;
}

bool matches_signature_grammar(std::string_view text) {
  auto parts = split_signature(text);
  return parts && PartRecognizer(parts->probe).accept() && PartRecognizer(parts->assoc).accept();
}

std::vector<std::string> wps_values(std::string_view text) {
  std::vector<std::string> out;
  constexpr std::string_view kKey = "wps:";
  for (auto pos = text.find(kKey); pos != std::string_view::npos; pos = text.find(kKey, pos)) {
    pos += kKey.size();
    const auto end = text.find_first_of(",|", pos);
    out.emplace_back(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
  }
  return out;
}

}  // namespace wifitax
