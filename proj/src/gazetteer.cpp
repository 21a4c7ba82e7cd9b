#include "vita/gazetteer.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>

#include <fmt/format.h>

#include "text_util.hpp"

namespace vita {

namespace {

std::optional<double> parse_coordinate(std::string_view s) {
  s = detail::trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Simple (one-to-one) lowercase mapping for the scripts place names in the
// bundled corpora and their neighbours use.
char32_t to_lower(char32_t c) noexcept {
  if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 0x20 : c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x130) return 'i';
    if (c == 0x178) return 0xFF;
    if ((c <= 0x137 || (c >= 0x14A && c <= 0x177)) && c % 2 == 0) return c + 1;
    if (((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E)) && c % 2 == 1) return c + 1;
    return c;
  }
  if (c == 0x386) return 0x3AC;
  if (c >= 0x388 && c <= 0x38A) return c + 0x25;
  if (c == 0x38C) return 0x3CC;
  if (c == 0x38E || c == 0x38F) return c + 0x3F;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c == 0x1E9E) return 0xDF;
  if (((c >= 0x1E00 && c <= 0x1E95) || (c >= 0x1EA0 && c <= 0x1EFF)) && c % 2 == 0) return c + 1;
  return c;
}

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out += static_cast<char>(c);
  } else if (c < 0x800) {
    out += static_cast<char>(0xC0 | (c >> 6));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else if (c < 0x10000) {
    out += static_cast<char>(0xE0 | (c >> 12));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (c >> 18));
    out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  }
}

/// Decodes one well-formed UTF-8 sequence at `s[i]`, returning its length, or
/// 0 when the bytes there are not a valid sequence.
std::size_t decode_utf8(std::string_view s, std::size_t i, char32_t& cp) noexcept {
  const auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMinForLen[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLen[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

}  // namespace

GazetteerLoad load_gazetteer(std::string_view source) {
  Gazetteer out;
  std::vector<ParseDiagnostic> diags;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos < source.size()) {
    std::size_t nl = source.find('\n', pos);
    std::string_view line =
        source.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? source.size() : nl + 1;
    ++line_no;

    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (detail::trim(line).empty() || line.front() == '#') continue;

    std::vector<std::string_view> cols;
    std::vector<int> starts;
    std::size_t cpos = 0;
    while (true) {
      std::size_t tab = line.find('\t', cpos);
      starts.push_back(static_cast<int>(cpos) + 1);
      cols.push_back(line.substr(cpos, tab == std::string_view::npos ? std::string_view::npos : tab - cpos));
      if (tab == std::string_view::npos) break;
      cpos = tab + 1;
    }
    if (cols.size() != 5) {
      diags.push_back({line_no, 1, fmt::format("expected 5 tab-separated columns, found {}", cols.size())});
      continue;
    }

    const std::size_t before = diags.size();
    if (!is_token(cols[0]))
      diags.push_back({line_no, starts[0], fmt::format("invalid key '{}'", cols[0])});
    if (cols[1].empty()) diags.push_back({line_no, starts[1], "empty display name"});

    auto lat = parse_coordinate(cols[2]);
    if (!lat)
      diags.push_back({line_no, starts[2], fmt::format("malformed latitude '{}'", cols[2])});
    else if (*lat < -90.0 || *lat > 90.0)
      diags.push_back({line_no, starts[2], "latitude out of range"});

    auto lon = parse_coordinate(cols[3]);
    if (!lon)
      diags.push_back({line_no, starts[3], fmt::format("malformed longitude '{}'", cols[3])});
    else if (*lon < -180.0 || *lon > 180.0)
      diags.push_back({line_no, starts[3], "longitude out of range"});

    if (diags.size() != before) continue;

    GazetteerEntry entry{std::string(cols[0]), std::string(cols[1]), GeoPoint(*lat, *lon),
                         std::string(cols[4]), line_no};
    auto [it, inserted] = out.emplace(entry.key, entry);
    if (!inserted) {
      diags.push_back({line_no, 1, fmt::format("duplicate key '{}' (lines {} and {})", entry.key,
                                               it->second.line, line_no)});
    }
  }

  if (!diags.empty()) return diags;
  return out;
}

std::string format_gazetteer_row(const GazetteerEntry& e) {
  return fmt::format("{}\t{}\t{}\t{}\t{}\n", e.key, e.display_name, e.point.lat(), e.point.lon(),
                     e.region);
}

std::string serialize_gazetteer(const Gazetteer& gazetteer) {
  std::string out;
  for (const auto& [key, entry] : gazetteer) out += format_gazetteer_row(entry);
  return out;
}

std::string normalize_key(std::string_view name) {
  std::string out;
  bool pending_sep = false;
  for (std::size_t i = 0; i < name.size();) {
    char32_t cp = 0;
    std::size_t len = decode_utf8(name, i, cp);
    if (len == 0) {
      // not UTF-8; keep the byte as-is
      if (pending_sep) out += '-';
      pending_sep = false;
      out += name[i++];
      continue;
    }
    i += len;
    if (cp == '_' || (cp < 0x80 && detail::is_ascii_space(static_cast<char>(cp)))) {
      pending_sep = true;
      continue;
    }
    if (pending_sep) out += '-';
    pending_sep = false;
    append_utf8(out, to_lower(cp));
  }

  std::size_t first = out.find_first_not_of('-');
  if (first == std::string::npos) throw std::invalid_argument("name normalizes to empty key");
  std::size_t last = out.find_last_not_of('-');
  return out.substr(first, last - first + 1);
}

ResolvedPlace resolve_place(const LifeEvent& event, const Gazetteer& gazetteer) {
  if (event.point) return {*event.point, {}};
  if (event.place_key.empty()) throw UnknownPlace("", event.id);
  std::string key;
  try {
    key = normalize_key(event.place_key);
  } catch (const std::invalid_argument&) {
    throw UnknownPlace(event.place_key, event.id);
  }
  auto it = gazetteer.find(key);
  if (it == gazetteer.end()) throw UnknownPlace(key, event.id);
  return {it->second.point, key};
}

GeoPoint resolve(const LifeEvent& event, const Gazetteer& gazetteer) {
  return resolve_place(event, gazetteer).point;
}

std::string url_encode(std::string_view text) {
  std::string out;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if ((u >= 'A' && u <= 'Z') || (u >= 'a' && u <= 'z') || (u >= '0' && u <= '9') || u == '-' ||
        u == '.' || u == '_' || u == '~') {
      out += c;
    } else {
      out += fmt::format("%{:02X}", u);
    }
  }
  return out;
}

}  // namespace vita
