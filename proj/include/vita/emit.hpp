#pragma once

// Deterministic text emitters. Every function here is pure: identical input
// produces byte-identical output, with `\n` line endings and `.` as the
// decimal point regardless of locale.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vita/gazetteer.hpp"
#include "vita/geo.hpp"
#include "vita/model.hpp"

namespace vita {

/// KML colors in aabbggrr order: red, orange, yellow, green, blue.
std::vector<std::string> default_palette();

struct EmitConfig {
  int bucket_count = 5;
  std::vector<std::string> palette = default_palette();
  bool include_attachments = true;
};

/// Thrown when the biography carries validation errors; emitters refuse to
/// produce output for it.
class EmitError : public std::runtime_error {
 public:
  explicit EmitError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Era index in [0, n-1] of the event's start day relative to the earliest
/// and latest start days of the biography.
int timeline_bucket(const LifeEvent& event, const Biography& bio, int bucket_count);

std::string emit_kml(const Biography& bio, const Gazetteer& gazetteer, const EmitConfig& cfg = {});
std::string emit_geojson(const Biography& bio, const Gazetteer& gazetteer);

enum class TableFormat { text, csv };

/// Leg and cumulative distances with three decimals. The cumulative column
/// is rounded half-even; printed legs are differences of printed cumulative
/// values so every column re-sums exactly.
std::string emit_itinerarium(std::span<const ItineraryLeg> legs, const Biography& bio, TableFormat fmt);

/// CSV `index,from,to,leg_km,cum_km` with the same numbers as the itinerarium.
std::string emit_leg_listing(std::span<const ItineraryLeg> legs, const Biography& bio);

/// Symmetric CSV matrix over distinct places, zero diagonal.
std::string emit_distance_matrix(std::span<const PlaceRef> places);

/// `key: value` lines in a fixed order.
std::string emit_route_stats(const RouteStats& stats, const Biography& bio);

/// Three decimals, half-even on the exact binary value.
std::string format_km(double km);

}  // namespace vita
