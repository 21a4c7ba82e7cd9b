#pragma once

// Offline place lookup. The gazetteer is a UTF-8 TSV file with exactly five
// columns per row:
//
//   key <TAB> display_name <TAB> lat <TAB> lon <TAB> region
//
// `#` lines are comments; there is no header row.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vita/model.hpp"
#include "vita/vita_format.hpp"

namespace vita {

struct GazetteerEntry {
  std::string key;
  std::string display_name;
  GeoPoint point{0.0, 0.0};
  std::string region;
  int line = 0;  // provenance only, not compared

  friend bool operator==(const GazetteerEntry& a, const GazetteerEntry& b) {
    return a.key == b.key && a.display_name == b.display_name && a.point == b.point &&
           a.region == b.region;
  }
};

using Gazetteer = std::map<std::string, GazetteerEntry>;
using GazetteerLoad = std::variant<Gazetteer, std::vector<ParseDiagnostic>>;

GazetteerLoad load_gazetteer(std::string_view source);

/// One TSV row, newline-terminated. Coordinates use the shortest text that
/// reads back to the same double.
std::string format_gazetteer_row(const GazetteerEntry& entry);
std::string serialize_gazetteer(const Gazetteer& gazetteer);

/// Lowercases (ASCII plus Latin, Greek and Cyrillic letters), turns each run
/// of whitespace or `_` into a single `-` and strips leading/trailing `-`.
/// Throws std::invalid_argument when nothing is left.
std::string normalize_key(std::string_view name);

struct ResolvedPlace {
  GeoPoint point;
  std::string key;  // normalized gazetteer key; empty when the inline point was used
};

/// Inline lat/lon wins; otherwise looks up normalize_key(place_key).
/// Throws UnknownPlace carrying the event id.
ResolvedPlace resolve_place(const LifeEvent& event, const Gazetteer& gazetteer);
GeoPoint resolve(const LifeEvent& event, const Gazetteer& gazetteer);

class GeocodeError : public std::runtime_error {
 public:
  enum class Kind {
    bad_endpoint,  // unusable URL
    network,       // could not connect or read a response
    not_found,     // HTTP 404
    http_status,   // any other non-2xx
    malformed,     // body violates the response contract
  };

  GeocodeError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string url_encode(std::string_view text);

/// Issues `GET <endpoint>?q=<name>` and expects a JSON object with exactly
/// `key`, `display_name` (strings) and `lat`, `lon` (numbers). Only plain
/// http endpoints are supported. The result is a suggestion; nothing is
/// written to any gazetteer.
GazetteerEntry remote_resolve(std::string_view name, std::string_view endpoint);

}  // namespace vita
