#include "vita/model.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <set>
#include <system_error>

#include <fmt/format.h>

namespace vita {

namespace {

constexpr std::chrono::sys_days kEpoch{std::chrono::year{1600} / 1 / 1};

bool overlaps(const DateInterval& a, const DateInterval& b) {
  return to_day_number(a.start) <= to_day_number(b.end) &&
         to_day_number(b.start) <= to_day_number(a.end);
}

}  // namespace

double normalize_longitude(double lon) {
  double r = std::fmod(lon, 360.0);
  if (r <= -180.0) r += 360.0;
  if (r > 180.0) r -= 360.0;
  return r;
}

GeoPoint::GeoPoint(double lat, double lon) {
  if (!std::isfinite(lat) || !std::isfinite(lon))
    throw std::out_of_range("coordinates must be finite");
  if (lat < -90.0 || lat > 90.0) throw std::out_of_range("latitude out of range");
  lat_ = lat;
  lon_ = normalize_longitude(lon);
}

bool is_leap_year(int year) noexcept {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) noexcept {
  static constexpr std::array<int, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) return 0;
  if (month == 2 && is_leap_year(year)) return 29;
  return kDays[month - 1];
}

bool CalendarDate::is_valid() const noexcept {
  return year >= 1 && year <= 9999 && month >= 1 && month <= 12 && day >= 1 &&
         day <= days_in_month(year, month);
}

CalendarDate make_date(int year, int month, int day) {
  if (year < 1 || year > 9999) throw std::out_of_range("year out of range");
  if (month < 1 || month > 12) throw std::out_of_range("month out of range");
  if (day < 1 || day > days_in_month(year, month)) throw std::out_of_range("day out of range");
  return {year, month, day};
}

std::int64_t to_day_number(const CalendarDate& d) {
  using namespace std::chrono;
  const year_month_day ymd{year{d.year}, month{static_cast<unsigned>(d.month)},
                           day{static_cast<unsigned>(d.day)}};
  return (sys_days{ymd} - kEpoch).count();
}

CalendarDate from_day_number(std::int64_t n) {
  using namespace std::chrono;
  // Guard before converting so the chrono arithmetic cannot overflow.
  constexpr std::int64_t kMin = -584022;   // 0001-01-01
  constexpr std::int64_t kMax = 3068036;   // 9999-12-31
  if (n < kMin || n > kMax) throw std::out_of_range("day number outside years 1..9999");
  const year_month_day ymd{kEpoch + days{n}};
  return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
          static_cast<int>(static_cast<unsigned>(ymd.day()))};
}

std::string format_date(const CalendarDate& d) {
  return fmt::format("{:04d}-{:02d}-{:02d}", d.year, d.month, d.day);
}

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::birth: return "birth";
    case EventKind::death: return "death";
    case EventKind::residence: return "residence";
    case EventKind::study: return "study";
    case EventKind::work: return "work";
    case EventKind::visit: return "visit";
    case EventKind::excavation: return "excavation";
    case EventKind::other: return "other";
  }
  return "other";
}

std::optional<EventKind> parse_event_kind(std::string_view text) noexcept {
  for (auto k : {EventKind::birth, EventKind::death, EventKind::residence, EventKind::study,
                 EventKind::work, EventKind::visit, EventKind::excavation, EventKind::other}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

bool is_token(std::string_view text) noexcept {
  if (text.empty()) return false;
  auto alnum = [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); };
  if (!alnum(text.front())) return false;
  for (char c : text) {
    if (!alnum(c) && c != '-') return false;
  }
  return true;
}

std::string_view to_string(Severity s) noexcept {
  return s == Severity::error ? "error" : "warning";
}

std::vector<Diagnostic> validate_biography(const Biography& bio,
                                           const std::optional<std::filesystem::path>& base_dir) {
  std::vector<Diagnostic> out;
  if (bio.events.empty()) out.push_back({Severity::error, "", "biography has no events", 0});

  std::set<std::string> seen;
  for (std::size_t i = 0; i < bio.events.size(); ++i) {
    const LifeEvent& ev = bio.events[i];
    auto report = [&](Severity s, std::string msg) {
      out.push_back({s, ev.id, std::move(msg), ev.source_line});
    };

    if (!seen.insert(ev.id).second) report(Severity::error, "duplicate event id");
    if (!ev.when.is_ordered()) report(Severity::error, "interval end precedes start");

    if (ev.kind == EventKind::residence && ev.when.is_ordered()) {
      for (std::size_t j = 0; j < i; ++j) {
        const LifeEvent& other = bio.events[j];
        if (other.kind == EventKind::residence && other.when.is_ordered() &&
            overlaps(other.when, ev.when)) {
          report(Severity::warning, fmt::format("overlapping residences: '{}' and '{}'", other.id, ev.id));
        }
      }
    }

    if (i > 0 && to_day_number(ev.when.start) < to_day_number(bio.events[i - 1].when.start))
      report(Severity::warning, "event out of chronological order");

    if (base_dir) {
      for (const auto& rel : ev.attachments) {
        std::error_code ec;
        if (!std::filesystem::exists(*base_dir / rel, ec))
          report(Severity::warning, fmt::format("missing attachment '{}'", rel));
      }
    }
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) noexcept {
  for (const auto& d : diags) {
    if (d.severity == Severity::error) return true;
  }
  return false;
}

UnknownPlace::UnknownPlace(std::string key, std::string event_id)
    : std::runtime_error(event_id.empty()
                             ? fmt::format("unknown place '{}'", key)
                             : fmt::format("unknown place '{}' in event '{}'", key, event_id)),
      key_(std::move(key)),
      event_id_(std::move(event_id)) {}

}  // namespace vita
