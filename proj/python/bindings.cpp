#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fmt/format.h>

#include "vita/corpora.hpp"
#include "vita/emit.hpp"
#include "vita/gazetteer.hpp"
#include "vita/geo.hpp"
#include "vita/model.hpp"
#include "vita/vita_format.hpp"

namespace py = pybind11;

namespace {

/// Raised to Python as vita.ParseError (a ValueError).
struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<vita::ParseDiagnostic>& diags) {
  std::string msg;
  for (const auto& d : diags) msg += fmt::format("{}{}:{}: {}", msg.empty() ? "" : "\n", d.line, d.column, d.message);
  return msg;
}

template <typename T>
T unwrap(std::variant<T, std::vector<vita::ParseDiagnostic>> result) {
  if (auto* diags = std::get_if<std::vector<vita::ParseDiagnostic>>(&result)) throw ParseFailure(join(*diags));
  return std::move(std::get<T>(result));
}

}  // namespace

PYBIND11_MODULE(_vita, m) {
  m.doc() = "Georeferenced biography timelines: VITA parsing, gazetteer lookup, great-circle itineraries and KML/GeoJSON emission.";

  py::register_exception<ParseFailure>(m, "ParseError", PyExc_ValueError);
  py::register_exception<vita::UnknownPlace>(m, "UnknownPlace", PyExc_KeyError);
  py::register_exception<vita::EmitError>(m, "EmitError", PyExc_ValueError);

  py::class_<vita::GeoPoint>(m, "GeoPoint")
      .def(py::init<double, double>(), py::arg("lat"), py::arg("lon"))
      .def_property_readonly("lat", &vita::GeoPoint::lat)
      .def_property_readonly("lon", &vita::GeoPoint::lon)
      .def(py::self == py::self)
      .def("__repr__", [](const vita::GeoPoint& p) { return fmt::format("GeoPoint({}, {})", p.lat(), p.lon()); });

  py::class_<vita::CalendarDate>(m, "CalendarDate")
      .def(py::init(&vita::make_date), py::arg("year"), py::arg("month"), py::arg("day"))
      .def_readonly("year", &vita::CalendarDate::year)
      .def_readonly("month", &vita::CalendarDate::month)
      .def_readonly("day", &vita::CalendarDate::day)
      .def(py::self == py::self)
      .def("__str__", &vita::format_date)
      .def("__repr__", [](const vita::CalendarDate& d) { return fmt::format("CalendarDate('{}')", vita::format_date(d)); });

  py::class_<vita::DateInterval>(m, "DateInterval")
      .def_readonly("start", &vita::DateInterval::start)
      .def_readonly("end", &vita::DateInterval::end)
      .def_readonly("circa", &vita::DateInterval::circa)
      .def(py::self == py::self);

  py::class_<vita::LifeEvent>(m, "LifeEvent")
      .def_readonly("id", &vita::LifeEvent::id)
      .def_property_readonly("kind", [](const vita::LifeEvent& e) { return std::string(vita::to_string(e.kind)); })
      .def_readonly("when", &vita::LifeEvent::when)
      .def_readonly("place_key", &vita::LifeEvent::place_key)
      .def_readonly("point", &vita::LifeEvent::point)
      .def_readonly("label", &vita::LifeEvent::label)
      .def_readonly("note", &vita::LifeEvent::note)
      .def_readonly("attachments", &vita::LifeEvent::attachments);

  py::class_<vita::Biography>(m, "Biography")
      .def_readonly("title", &vita::Biography::title)
      .def_readonly("id", &vita::Biography::id)
      .def_readonly("events", &vita::Biography::events)
      .def_readonly("gazetteer_hint", &vita::Biography::gazetteer_hint)
      .def(py::self == py::self);

  py::class_<vita::GazetteerEntry>(m, "GazetteerEntry")
      .def_readonly("key", &vita::GazetteerEntry::key)
      .def_readonly("display_name", &vita::GazetteerEntry::display_name)
      .def_readonly("point", &vita::GazetteerEntry::point)
      .def_readonly("region", &vita::GazetteerEntry::region);

  py::class_<vita::ItineraryLeg>(m, "ItineraryLeg")
      .def_readonly("index", &vita::ItineraryLeg::index)
      .def_readonly("event_id", &vita::ItineraryLeg::event_id)
      .def_readonly("point", &vita::ItineraryLeg::point)
      .def_readonly("leg_km", &vita::ItineraryLeg::leg_km)
      .def_readonly("cum_km", &vita::ItineraryLeg::cum_km)
      .def_readonly("place_key", &vita::ItineraryLeg::place_key);

  py::class_<vita::BoundingBox>(m, "BoundingBox")
      .def_readonly("min_lat", &vita::BoundingBox::min_lat)
      .def_readonly("max_lat", &vita::BoundingBox::max_lat)
      .def_readonly("min_lon", &vita::BoundingBox::min_lon)
      .def_readonly("max_lon", &vita::BoundingBox::max_lon);

  py::class_<vita::RouteStats>(m, "RouteStats")
      .def_readonly("event_count", &vita::RouteStats::event_count)
      .def_readonly("distinct_place_count", &vita::RouteStats::distinct_place_count)
      .def_readonly("first_start", &vita::RouteStats::first_start)
      .def_readonly("last_end", &vita::RouteStats::last_end)
      .def_readonly("total_km", &vita::RouteStats::total_km)
      .def_readonly("box", &vita::RouteStats::box)
      .def_readonly("crosses_antimeridian", &vita::RouteStats::crosses_antimeridian);

  m.def("to_day_number", &vita::to_day_number, py::arg("date"));
  m.def("from_day_number", &vita::from_day_number, py::arg("n"));
  m.def("parse_date_expr", &vita::parse_date_expr, py::arg("expr"));

  m.def("parse_biography", [](std::string_view text) { return unwrap(vita::parse_biography(text)); },
        py::arg("source"), "Parse VITA text; raises ParseError listing every diagnostic.");
  m.def("serialize_biography", &vita::serialize_biography, py::arg("bio"));
  m.def(
      "validate_biography",
      [](const vita::Biography& bio, std::optional<std::filesystem::path> base_dir) {
        py::list out;
        for (const auto& d : vita::validate_biography(bio, base_dir))
          out.append(py::make_tuple(std::string(vita::to_string(d.severity)), d.event_id, d.message));
        return out;
      },
      py::arg("bio"), py::arg("base_dir") = py::none(),
      "List of (severity, event_id, message) tuples; empty when the biography is clean.");

  m.def("load_gazetteer", [](std::string_view text) { return unwrap(vita::load_gazetteer(text)); },
        py::arg("source"));
  m.def("normalize_key", &vita::normalize_key, py::arg("name"));
  m.def("resolve", &vita::resolve, py::arg("event"), py::arg("gazetteer"));

  m.def("haversine_km", &vita::haversine_km, py::arg("a"), py::arg("b"));
  m.def("build_itinerary", &vita::build_itinerary, py::arg("bio"), py::arg("gazetteer"));
  m.def("bounding_box", [](const std::vector<vita::GeoPoint>& pts) { return vita::bounding_box(pts); },
        py::arg("points"));
  m.def("route_stats", [](const std::vector<vita::ItineraryLeg>& legs) { return vita::route_stats(legs); },
        py::arg("legs"));
  m.attr("EARTH_RADIUS_KM") = vita::kEarthRadiusKm;

  m.def("timeline_bucket", &vita::timeline_bucket, py::arg("event"), py::arg("bio"), py::arg("bucket_count"));
  m.def(
      "emit_kml",
      [](const vita::Biography& bio, const vita::Gazetteer& g, int buckets,
         std::optional<std::vector<std::string>> palette, bool include_attachments) {
        vita::EmitConfig cfg;
        cfg.bucket_count = buckets;
        if (palette) cfg.palette = *palette;
        cfg.include_attachments = include_attachments;
        return vita::emit_kml(bio, g, cfg);
      },
      py::arg("bio"), py::arg("gazetteer"), py::arg("bucket_count") = 5, py::arg("palette") = py::none(),
      py::arg("include_attachments") = true);
  m.def("emit_geojson", &vita::emit_geojson, py::arg("bio"), py::arg("gazetteer"));
  m.def(
      "emit_itinerarium",
      [](const std::vector<vita::ItineraryLeg>& legs, const vita::Biography& bio, const std::string& format) {
        if (format != "text" && format != "csv") throw py::value_error("format must be 'text' or 'csv'");
        return vita::emit_itinerarium(legs, bio, format == "csv" ? vita::TableFormat::csv : vita::TableFormat::text);
      },
      py::arg("legs"), py::arg("bio"), py::arg("format") = "text");

  m.def("newton_corpus", [] {
    auto c = vita::newton_corpus();
    return py::make_tuple(std::string(c.vita), std::string(c.gazetteer));
  });
  m.def("schiaparelli_corpus", [] {
    auto c = vita::schiaparelli_corpus();
    return py::make_tuple(std::string(c.vita), std::string(c.gazetteer));
  });
}
