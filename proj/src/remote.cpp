// HTTP side of the gazetteer: one GET per lookup, nothing cached or merged.

#include <cctype>
#include <cmath>
#include <string>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "vita/gazetteer.hpp"

namespace vita {

namespace {

struct Endpoint {
  std::string origin;  // http://host[:port]
  std::string target;  // path plus any query, at least "/"
};

Endpoint split_endpoint(std::string_view url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos)
    throw GeocodeError(GeocodeError::Kind::bad_endpoint, fmt::format("invalid endpoint URL '{}'", url));
  std::string scheme(url.substr(0, scheme_end));
  for (auto& c : scheme) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (scheme != "http")
    throw GeocodeError(GeocodeError::Kind::bad_endpoint,
                       fmt::format("unsupported endpoint scheme '{}'", scheme));

  std::string_view rest = url.substr(scheme_end + 3);
  std::size_t cut = rest.find_first_of("/?");
  std::string_view authority = rest.substr(0, cut);
  if (authority.empty())
    throw GeocodeError(GeocodeError::Kind::bad_endpoint, fmt::format("invalid endpoint URL '{}'", url));

  std::string target = cut == std::string_view::npos ? "/" : std::string(rest.substr(cut));
  if (target.front() == '?') target.insert(target.begin(), '/');
  return {fmt::format("http://{}", authority), target};
}

[[noreturn]] void malformed(const std::string& detail) {
  throw GeocodeError(GeocodeError::Kind::malformed, fmt::format("malformed geocoder response: {}", detail));
}

GazetteerEntry parse_response(const std::string& body) {
  auto doc = nlohmann::json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) malformed("body is not a JSON object");

  for (const char* field : {"key", "display_name", "lat", "lon"}) {
    if (!doc.contains(field)) malformed(fmt::format("missing '{}'", field));
  }
  if (doc.size() != 4) malformed("unexpected extra fields");
  if (!doc["key"].is_string() || !doc["display_name"].is_string())
    malformed("'key' and 'display_name' must be strings");
  if (!doc["lat"].is_number() || !doc["lon"].is_number())
    malformed("'lat' and 'lon' must be numbers");

  const auto lat = doc["lat"].get<double>();
  const auto lon = doc["lon"].get<double>();
  if (!std::isfinite(lat) || lat < -90.0 || lat > 90.0) malformed("latitude out of range");
  if (!std::isfinite(lon) || lon < -180.0 || lon > 180.0) malformed("longitude out of range");

  std::string key;
  try {
    key = normalize_key(doc["key"].get<std::string>());
  } catch (const std::invalid_argument&) {
    malformed("empty key");
  }
  if (!is_token(key)) malformed(fmt::format("key '{}' is not a valid token", key));

  auto display = doc["display_name"].get<std::string>();
  if (display.empty() || display.find_first_of("\t\r\n") != std::string::npos)
    malformed("display_name must be a non-empty single line without tabs");

  return {key, display, GeoPoint(lat, lon), "", 0};
}

}  // namespace

GazetteerEntry remote_resolve(std::string_view name, std::string_view endpoint) {
  Endpoint ep = split_endpoint(endpoint);
  ep.target += (ep.target.find('?') == std::string::npos ? "?q=" : "&q=") + url_encode(name);

  httplib::Client client(ep.origin);
  client.set_connection_timeout(5);
  client.set_read_timeout(10);
  auto res = client.Get(ep.target);
  if (!res) {
    throw GeocodeError(GeocodeError::Kind::network,
                       fmt::format("could not reach endpoint {}: {}", ep.origin, httplib::to_string(res.error())));
  }
  if (res->status == 404) throw GeocodeError(GeocodeError::Kind::not_found, "place not found at endpoint");
  if (res->status < 200 || res->status >= 300)
    throw GeocodeError(GeocodeError::Kind::http_status, fmt::format("endpoint returned HTTP {}", res->status));
  return parse_response(res->body);
}

}  // namespace vita
