#include "vita/emit.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include <fmt/format.h>

#include "text_util.hpp"

namespace vita {

namespace {

using detail::csv_field;
using detail::json_escape;
using detail::xml_escape;

struct StartSpan {
  std::int64_t t0 = 0;
  std::int64_t t1 = 0;
};

StartSpan start_span(const Biography& bio) {
  if (bio.events.empty()) throw std::invalid_argument("biography has no events");
  StartSpan s{to_day_number(bio.events[0].when.start), to_day_number(bio.events[0].when.start)};
  for (const auto& ev : bio.events) {
    const std::int64_t d = to_day_number(ev.when.start);
    s.t0 = std::min(s.t0, d);
    s.t1 = std::max(s.t1, d);
  }
  return s;
}

int bucket_for(std::int64_t start, const StartSpan& span, int n) {
  if (span.t1 == span.t0) return 0;
  return static_cast<int>(static_cast<std::int64_t>(n) * (start - span.t0) / (span.t1 - span.t0 + 1));
}

void require_valid(const Biography& bio) {
  auto diags = validate_biography(bio);
  if (has_errors(diags)) throw EmitError(std::move(diags));
}

bool is_kml_color(const std::string& c) {
  return c.size() == 8 && std::all_of(c.begin(), c.end(), [](char ch) {
           return (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f') || (ch >= 'A' && ch <= 'F');
         });
}

std::string display_label(const LifeEvent& ev) {
  std::string name = ev.label.empty() ? ev.id : ev.label;
  if (ev.when.circa) name += " (c.)";
  return name;
}

std::string cdata(std::string_view s) {
  std::string out = "<![CDATA[";
  std::size_t pos = 0;
  while (true) {
    std::size_t hit = s.find("]]>", pos);
    if (hit == std::string_view::npos) break;
    out += s.substr(pos, hit + 2 - pos);
    out += "]]><![CDATA[";
    pos = hit + 2;
  }
  out += s.substr(pos);
  out += "]]>";
  return out;
}

std::string kml_description(const LifeEvent& ev, bool include_attachments) {
  std::string out = xml_escape(ev.note);
  if (include_attachments && !ev.attachments.empty()) {
    std::string html;
    for (const auto& path : ev.attachments) {
      if (!html.empty() || !ev.note.empty()) html += "<br/>";
      html += fmt::format("<a href=\"{0}\">{0}</a>", xml_escape(path));
    }
    out += cdata(html);
  }
  return out;
}

std::int64_t to_milli(double km) {
  // Parse the rounded decimal text back so printing and arithmetic agree.
  const std::string s = format_km(km);
  std::int64_t v = 0;
  bool negative = false;
  for (char c : s) {
    if (c == '-') negative = true;
    else if (c >= '0' && c <= '9') v = v * 10 + (c - '0');
  }
  return negative ? -v : v;
}

std::string format_milli(std::int64_t m) {
  const char* sign = m < 0 ? "-" : "";
  const std::int64_t a = m < 0 ? -m : m;
  return fmt::format("{}{}.{:03d}", sign, a / 1000, a % 1000);
}

struct LegRow {
  std::string leg;
  std::string cum;
};

std::vector<LegRow> leg_rows(std::span<const ItineraryLeg> legs) {
  std::vector<LegRow> rows;
  std::int64_t prev = 0;
  for (const auto& leg : legs) {
    const std::int64_t cum = to_milli(leg.cum_km);
    rows.push_back({format_milli(leg.index == 0 ? 0 : cum - prev), format_milli(cum)});
    prev = cum;
  }
  return rows;
}

std::string coord(double v) { return fmt::format("{:.6f}", v); }

}  // namespace

std::vector<std::string> default_palette() {
  return {"ff0000ff", "ff00a5ff", "ff00ffff", "ff00ff00", "ffff0000"};
}

EmitError::EmitError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(diagnostics.empty()
                             ? std::string("biography failed validation")
                             : fmt::format("biography failed validation: {}", diagnostics.front().message)),
      diagnostics_(std::move(diagnostics)) {}

int timeline_bucket(const LifeEvent& event, const Biography& bio, int bucket_count) {
  if (bucket_count < 1) throw std::invalid_argument("bucket count must be at least 1");
  return bucket_for(to_day_number(event.when.start), start_span(bio), bucket_count);
}

std::string format_km(double km) { return fmt::format("{:.3f}", km); }

std::string emit_kml(const Biography& bio, const Gazetteer& gazetteer, const EmitConfig& cfg) {
  if (cfg.bucket_count < 1) throw std::invalid_argument("bucket count must be at least 1");
  if (cfg.palette.empty()) throw std::invalid_argument("palette is empty");
  for (const auto& c : cfg.palette) {
    if (!is_kml_color(c)) throw std::invalid_argument(fmt::format("invalid KML color '{}'", c));
  }
  require_valid(bio);

  const auto legs = build_itinerary(bio, gazetteer);
  const StartSpan span = start_span(bio);

  std::vector<int> buckets;
  std::set<int> used;
  for (const auto& leg : legs) {
    buckets.push_back(bucket_for(to_day_number(leg.when.start), span, cfg.bucket_count));
    used.insert(buckets.back());
  }

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<kml xmlns=\"http://www.opengis.net/kml/2.2\">\n";
  out += "  <Document>\n";
  out += fmt::format("    <name>{}</name>\n", xml_escape(bio.title));
  for (int b : used) {
    out += fmt::format("    <Style id=\"era-{}\">\n", b);
    out += "      <IconStyle>\n";
    out += fmt::format("        <color>{}</color>\n", cfg.palette[static_cast<std::size_t>(b) % cfg.palette.size()]);
    out += "      </IconStyle>\n";
    out += "    </Style>\n";
  }
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const auto& leg = legs[i];
    const LifeEvent& ev = bio.events[leg.event_index];
    out += fmt::format("    <Placemark id=\"{}\">\n", xml_escape(ev.id));
    out += fmt::format("      <name>{}</name>\n", xml_escape(display_label(ev)));
    out += fmt::format("      <description>{}</description>\n", kml_description(ev, cfg.include_attachments));
    out += "      <TimeSpan>\n";
    out += fmt::format("        <begin>{}</begin>\n", format_date(ev.when.start));
    out += fmt::format("        <end>{}</end>\n", format_date(ev.when.end));
    out += "      </TimeSpan>\n";
    out += fmt::format("      <styleUrl>#era-{}</styleUrl>\n", buckets[i]);
    out += "      <ExtendedData>\n";
    out += fmt::format("        <Data name=\"kind\"><value>{}</value></Data>\n", to_string(ev.kind));
    out += fmt::format("        <Data name=\"place\"><value>{}</value></Data>\n", xml_escape(leg.place_key));
    out += "      </ExtendedData>\n";
    out += "      <Point>\n";
    out += fmt::format("        <coordinates>{},{},0</coordinates>\n", coord(leg.point.lon()), coord(leg.point.lat()));
    out += "      </Point>\n";
    out += "    </Placemark>\n";
  }
  out += "  </Document>\n";
  out += "</kml>\n";
  return out;
}

std::string emit_geojson(const Biography& bio, const Gazetteer& gazetteer) {
  require_valid(bio);
  const auto legs = build_itinerary(bio, gazetteer);

  std::string out;
  out += "{\n";
  out += "  \"type\": \"FeatureCollection\",\n";
  out += fmt::format("  \"name\": \"{}\",\n", json_escape(bio.title));
  out += "  \"features\": [";
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const auto& leg = legs[i];
    const LifeEvent& ev = bio.events[leg.event_index];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\n";
    out += "      \"type\": \"Feature\",\n";
    out += fmt::format("      \"geometry\": {{\"type\": \"Point\", \"coordinates\": [{}, {}]}},\n",
                       coord(leg.point.lon()), coord(leg.point.lat()));
    out += "      \"properties\": {\n";
    out += fmt::format("        \"id\": \"{}\",\n", json_escape(ev.id));
    out += fmt::format("        \"label\": \"{}\",\n", json_escape(ev.label));
    out += fmt::format("        \"kind\": \"{}\",\n", to_string(ev.kind));
    out += fmt::format("        \"start\": \"{}\",\n", format_date(ev.when.start));
    out += fmt::format("        \"end\": \"{}\",\n", format_date(ev.when.end));
    out += fmt::format("        \"circa\": {},\n", ev.when.circa ? "true" : "false");
    out += fmt::format("        \"note\": \"{}\",\n", json_escape(ev.note));
    out += "        \"attachments\": [";
    for (std::size_t k = 0; k < ev.attachments.size(); ++k) {
      if (k) out += ", ";
      out += fmt::format("\"{}\"", json_escape(ev.attachments[k]));
    }
    out += "]\n";
    out += "      }\n";
    out += "    }";
  }
  out += legs.empty() ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

std::string emit_itinerarium(std::span<const ItineraryLeg> legs, const Biography& bio, TableFormat format) {
  if (legs.empty()) throw std::invalid_argument("itinerary is empty");
  const auto rows = leg_rows(legs);

  if (format == TableFormat::csv) {
    std::string out = "index,start,end,place,label,lat,lon,leg_km,cum_km\n";
    for (std::size_t i = 0; i < legs.size(); ++i) {
      const auto& leg = legs[i];
      const LifeEvent& ev = bio.events[leg.event_index];
      out += fmt::format("{},{},{},{},{},{},{},{},{}\n", leg.index, format_date(leg.when.start),
                         format_date(leg.when.end), csv_field(leg.place_key), csv_field(ev.label),
                         coord(leg.point.lat()), coord(leg.point.lon()), rows[i].leg, rows[i].cum);
    }
    return out;
  }

  // Text table: left-aligned text columns, right-aligned numbers.
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"#", "START", "END", "PLACE", "LAT", "LON", "LEG_KM", "CUM_KM"});
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const auto& leg = legs[i];
    cells.push_back({std::to_string(leg.index), format_date(leg.when.start), format_date(leg.when.end),
                     display_label(bio.events[leg.event_index]), coord(leg.point.lat()),
                     coord(leg.point.lon()), rows[i].leg, rows[i].cum});
  }
  constexpr bool kRightAligned[] = {true, false, false, false, true, true, true, true};
  std::vector<std::size_t> width(8, 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], detail::display_width(row[c]));
  }

  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      const std::string pad(width[c] - detail::display_width(row[c]), ' ');
      line += kRightAligned[c] ? pad + row[c] : row[c] + pad;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

std::string emit_leg_listing(std::span<const ItineraryLeg> legs, const Biography& bio) {
  const auto rows = leg_rows(legs);
  std::string out = "index,from,to,leg_km,cum_km\n";
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const std::string from = i == 0 ? "" : bio.events[legs[i - 1].event_index].label;
    const std::string& to = bio.events[legs[i].event_index].label;
    out += fmt::format("{},{},{},{},{}\n", legs[i].index, csv_field(from), csv_field(to), rows[i].leg, rows[i].cum);
  }
  return out;
}

std::string emit_distance_matrix(std::span<const PlaceRef> places) {
  const auto m = distance_matrix(places);
  const std::size_t n = places.size();
  std::string out = "place";
  for (const auto& p : places) out += "," + csv_field(p.name);
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out += csv_field(places[i].name);
    for (std::size_t j = 0; j < n; ++j) out += "," + format_km(m[i * n + j]);
    out += '\n';
  }
  return out;
}

std::string emit_route_stats(const RouteStats& s, const Biography& bio) {
  std::string out;
  out += fmt::format("title: {}\n", bio.title);
  out += fmt::format("event_count: {}\n", s.event_count);
  out += fmt::format("distinct_place_count: {}\n", s.distinct_place_count);
  out += fmt::format("first_start: {}\n", format_date(s.first_start));
  out += fmt::format("last_end: {}\n", format_date(s.last_end));
  out += fmt::format("span: {}..{}\n", s.first_start.year, s.last_end.year);
  out += fmt::format("total_km: {}\n", format_km(s.total_km));
  out += fmt::format("bbox: {},{},{},{}\n", coord(s.box.min_lat), coord(s.box.min_lon), coord(s.box.max_lat),
                     coord(s.box.max_lon));
  return out;
}

}  // namespace vita
