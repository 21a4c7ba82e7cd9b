#include "vita/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

#include <fmt/format.h>

namespace vita {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string place_identity(const ItineraryLeg& leg) {
  if (!leg.place_key.empty()) return leg.place_key;
  return fmt::format("{:.6f} {:.6f}", leg.point.lat(), leg.point.lon());
}

}  // namespace

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
  // Evaluate in a fixed argument order so the result is bitwise symmetric.
  const GeoPoint* p = &a;
  const GeoPoint* q = &b;
  if (std::pair(q->lat(), q->lon()) < std::pair(p->lat(), p->lon())) std::swap(p, q);

  const double phi1 = p->lat() * kDegToRad;
  const double phi2 = q->lat() * kDegToRad;
  const double dphi = phi2 - phi1;
  const double dlambda = (q->lon() - p->lon()) * kDegToRad;

  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

std::vector<std::size_t> chronological_order(const Biography& bio) {
  std::vector<std::size_t> order(bio.events.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const DateInterval& a = bio.events[x].when;
    const DateInterval& b = bio.events[y].when;
    return std::tuple(to_day_number(a.start), to_day_number(a.end)) <
           std::tuple(to_day_number(b.start), to_day_number(b.end));
  });
  return order;
}

std::vector<ItineraryLeg> build_itinerary(const Biography& bio, const Gazetteer& gazetteer) {
  std::vector<ItineraryLeg> legs;
  legs.reserve(bio.events.size());
  for (std::size_t idx : chronological_order(bio)) {
    const LifeEvent& ev = bio.events[idx];
    ResolvedPlace place = resolve_place(ev, gazetteer);

    ItineraryLeg leg;
    leg.index = legs.size();
    leg.event_id = ev.id;
    leg.point = place.point;
    leg.event_index = idx;
    leg.place_key = std::move(place.key);
    leg.when = ev.when;
    if (!legs.empty()) {
      leg.leg_km = haversine_km(legs.back().point, leg.point);
      leg.cum_km = legs.back().cum_km + leg.leg_km;
    }
    legs.push_back(std::move(leg));
  }
  return legs;
}

BoundingBox bounding_box(std::span<const GeoPoint> points) {
  if (points.empty()) throw std::invalid_argument("bounding box of an empty point list");
  BoundingBox box{points[0].lat(), points[0].lat(), points[0].lon(), points[0].lon()};
  for (const GeoPoint& p : points.subspan(1)) {
    box.min_lat = std::min(box.min_lat, p.lat());
    box.max_lat = std::max(box.max_lat, p.lat());
    box.min_lon = std::min(box.min_lon, p.lon());
    box.max_lon = std::max(box.max_lon, p.lon());
  }
  return box;
}

RouteStats route_stats(std::span<const ItineraryLeg> legs) {
  if (legs.empty()) throw std::invalid_argument("route statistics of an empty itinerary");

  RouteStats stats;
  stats.event_count = legs.size();
  stats.total_km = legs.back().cum_km;
  stats.first_start = legs.front().when.start;
  stats.last_end = legs.front().when.end;

  std::set<std::string> places;
  std::vector<GeoPoint> points;
  for (std::size_t i = 0; i < legs.size(); ++i) {
    places.insert(place_identity(legs[i]));
    points.push_back(legs[i].point);
    if (to_day_number(legs[i].when.end) > to_day_number(stats.last_end)) stats.last_end = legs[i].when.end;
    if (i > 0 && std::abs(legs[i].point.lon() - legs[i - 1].point.lon()) > 180.0)
      stats.crosses_antimeridian = true;
  }
  stats.distinct_place_count = places.size();
  stats.box = bounding_box(points);
  if (stats.crosses_antimeridian) {
    stats.box.min_lon = -180.0;
    stats.box.max_lon = 180.0;
  }
  return stats;
}

std::vector<PlaceRef> distinct_places(std::span<const ItineraryLeg> legs) {
  std::vector<PlaceRef> out;
  std::set<std::string> seen;
  for (const auto& leg : legs) {
    std::string name = place_identity(leg);
    if (seen.insert(name).second) out.push_back({std::move(name), leg.point});
  }
  return out;
}

std::vector<double> distance_matrix(std::span<const PlaceRef> places) {
  const std::size_t n = places.size();
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = haversine_km(places[i].point, places[j].point);
      m[i * n + j] = d;
      m[j * n + i] = d;
    }
  }
  return m;
}

}  // namespace vita
