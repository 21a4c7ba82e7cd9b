#pragma once

// Domain model for georeferenced biographies: points, calendar days,
// intervals, life events and the validation pass run before any emitter.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vita {

/// Normalizes a longitude into (-180, 180]. -180 maps to +180.
double normalize_longitude(double lon);

/// Latitude/longitude in decimal degrees (WGS84). Longitude is normalized on
/// construction; latitude outside [-90, 90] or non-finite input throws
/// std::out_of_range.
class GeoPoint {
 public:
  GeoPoint(double lat, double lon);

  double lat() const noexcept { return lat_; }
  double lon() const noexcept { return lon_; }

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

 private:
  double lat_;
  double lon_;
};

bool is_leap_year(int year) noexcept;
int days_in_month(int year, int month) noexcept;

/// Proleptic Gregorian calendar day. Plain aggregate; use is_valid() or
/// make_date() when the fields come from untrusted input.
struct CalendarDate {
  int year = 1600;
  int month = 1;
  int day = 1;

  bool is_valid() const noexcept;
  friend auto operator<=>(const CalendarDate&, const CalendarDate&) = default;
};

/// Throws std::out_of_range naming the offending field.
CalendarDate make_date(int year, int month, int day);

/// Day count with 1600-01-01 as day 0.
std::int64_t to_day_number(const CalendarDate& d);
/// Inverse of to_day_number; throws std::out_of_range outside years 1..9999.
CalendarDate from_day_number(std::int64_t n);

/// YYYY-MM-DD
std::string format_date(const CalendarDate& d);

/// Inclusive [start, end] interval of days.
struct DateInterval {
  CalendarDate start;
  CalendarDate end;
  bool circa = false;

  bool is_ordered() const { return to_day_number(start) <= to_day_number(end); }
  friend bool operator==(const DateInterval&, const DateInterval&) = default;
};

enum class EventKind { birth, death, residence, study, work, visit, excavation, other };

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> parse_event_kind(std::string_view text) noexcept;

/// `[a-z0-9][a-z0-9-]*`
bool is_token(std::string_view text) noexcept;

struct LifeEvent {
  std::string id;
  EventKind kind = EventKind::other;
  DateInterval when;
  std::string place_key;             // empty when only an inline point is given
  std::optional<GeoPoint> point;     // inline point, overrides the gazetteer
  std::string label;
  std::string note;
  std::vector<std::string> attachments;
  int source_line = 0;               // 1-based line of the [event] header, 0 if not parsed

  /// Field-wise equality; source_line is provenance and not compared.
  friend bool operator==(const LifeEvent& a, const LifeEvent& b) {
    return a.id == b.id && a.kind == b.kind && a.when == b.when && a.place_key == b.place_key &&
           a.point == b.point && a.label == b.label && a.note == b.note &&
           a.attachments == b.attachments;
  }
};

struct Biography {
  std::string title;
  std::string id;
  std::vector<LifeEvent> events;      // authoring order
  std::optional<std::string> gazetteer_hint;

  friend bool operator==(const Biography&, const Biography&) = default;
};

struct ItineraryLeg {
  std::size_t index = 0;
  std::string event_id;
  GeoPoint point{0.0, 0.0};
  double leg_km = 0.0;
  double cum_km = 0.0;
  // Carried along so downstream consumers need not look the event up again.
  std::size_t event_index = 0;       // authoring index in the biography
  std::string place_key;             // normalized gazetteer key, empty for inline points
  DateInterval when;
};

enum class Severity { error, warning };

std::string_view to_string(Severity s) noexcept;

struct Diagnostic {
  Severity severity = Severity::error;
  std::string event_id;   // empty for biography-level findings
  std::string message;
  int line = 0;           // source line when known

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Checks duplicate ids, interval order, overlapping residences, chronological
/// authoring order and (when base_dir is given) missing attachment files.
/// Results are ordered by event authoring order, then by check.
std::vector<Diagnostic> validate_biography(
    const Biography& bio, const std::optional<std::filesystem::path>& base_dir = std::nullopt);

bool has_errors(const std::vector<Diagnostic>& diags) noexcept;

/// Raised when an event's place can be resolved neither inline nor through
/// the gazetteer.
class UnknownPlace : public std::runtime_error {
 public:
  UnknownPlace(std::string key, std::string event_id = {});

  const std::string& key() const noexcept { return key_; }
  const std::string& event_id() const noexcept { return event_id_; }

 private:
  std::string key_;
  std::string event_id_;
};

}  // namespace vita
