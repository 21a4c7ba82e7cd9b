#pragma once

#include <span>
#include <string>
#include <vector>

#include "vita/gazetteer.hpp"
#include "vita/model.hpp"

namespace vita {

/// IUGG mean Earth radius.
inline constexpr double kEarthRadiusKm = 6371.0088;

/// Great-circle distance on a sphere of radius kEarthRadiusKm. Exactly
/// symmetric in its arguments.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

/// Authoring indices sorted by (start day, end day, authoring index).
std::vector<std::size_t> chronological_order(const Biography& bio);

/// One leg per event in chronological order; leg 0 has zero distance.
/// Throws UnknownPlace naming the event that failed to resolve.
std::vector<ItineraryLeg> build_itinerary(const Biography& bio, const Gazetteer& gazetteer);

struct BoundingBox {
  double min_lat = 0.0;
  double max_lat = 0.0;
  double min_lon = 0.0;
  double max_lon = 0.0;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Componentwise min/max. Throws std::invalid_argument for an empty list.
BoundingBox bounding_box(std::span<const GeoPoint> points);

struct RouteStats {
  std::size_t event_count = 0;
  std::size_t distinct_place_count = 0;
  CalendarDate first_start;
  CalendarDate last_end;
  double total_km = 0.0;
  BoundingBox box;
  // Set when some leg is shorter going across the antimeridian; the box then
  // spans the full longitude range.
  bool crosses_antimeridian = false;
};

/// Throws std::invalid_argument for an empty itinerary.
RouteStats route_stats(std::span<const ItineraryLeg> legs);

/// A resolved place as seen by the distance matrix: gazetteer key, or the
/// coordinate pair for inline points.
struct PlaceRef {
  std::string name;
  GeoPoint point;
};

/// Distinct places in order of first appearance along the itinerary.
std::vector<PlaceRef> distinct_places(std::span<const ItineraryLeg> legs);

/// Row-major symmetric matrix of pairwise distances with a zero diagonal.
std::vector<double> distance_matrix(std::span<const PlaceRef> places);

}  // namespace vita
