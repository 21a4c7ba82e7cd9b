#include "vita/vita_format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

#include "text_util.hpp"

namespace vita {

namespace {

using detail::trim;

struct Value {
  std::string text;
  int line = 0;
  int column = 0;
};

/// Raw key/value lines of one block, before interpretation.
struct RawBlock {
  enum class Kind { biography, event } kind = Kind::event;
  int line = 0;
  std::multimap<std::string, Value> entries;

  const Value* find(const std::string& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  }
};

constexpr std::string_view kBiographyKeys[] = {"title", "id", "gazetteer"};
constexpr std::string_view kEventKeys[] = {"id",  "kind",  "start", "end",  "place",
                                           "lat", "lon",   "label", "note", "attach"};

bool known_key(RawBlock::Kind kind, std::string_view key) {
  if (kind == RawBlock::Kind::biography)
    return std::find(std::begin(kBiographyKeys), std::end(kBiographyKeys), key) !=
           std::end(kBiographyKeys);
  return std::find(std::begin(kEventKeys), std::end(kEventKeys), key) != std::end(kEventKeys);
}

std::optional<int> parse_fixed_digits(std::string_view s, std::size_t width) {
  if (s.size() != width) return std::nullopt;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

class Parser {
 public:
  explicit Parser(std::string_view source) : source_(source) {}

  BiographyParse run() {
    if (source_.substr(0, 3) == "\xEF\xBB\xBF") source_.remove_prefix(3);

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= source_.size()) {
      std::size_t nl = source_.find('\n', pos);
      std::string_view line =
          source_.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no;
      handle_line(line, line_no);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    close_block();

    if (!saw_biography_) diags_.push_back({1, 1, "missing [biography] header"});
    if (!diags_.empty()) {
      std::stable_sort(diags_.begin(), diags_.end(), [](const auto& a, const auto& b) {
        return std::tie(a.line, a.column) < std::tie(b.line, b.column);
      });
      return diags_;
    }
    return bio_;
  }

 private:
  void error(int line, int column, std::string message) {
    diags_.push_back({line, column, std::move(message)});
  }

  void handle_line(std::string_view raw, int line_no) {
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    std::string_view body = trim(raw);
    if (body.empty()) return;
    const int col = static_cast<int>(body.data() - raw.data()) + 1;

    if (body.front() == '[') {
      close_block();
      if (body.back() != ']') {
        error(line_no, col, "malformed block header");
        skipping_ = true;
        return;
      }
      std::string_view name = trim(body.substr(1, body.size() - 2));
      if (name == "biography") {
        if (saw_biography_) {
          error(line_no, col, "duplicate [biography] block");
          skipping_ = true;
          return;
        }
        saw_biography_ = true;
        block_ = RawBlock{RawBlock::Kind::biography, line_no, {}};
      } else if (name == "event") {
        block_ = RawBlock{RawBlock::Kind::event, line_no, {}};
      } else {
        error(line_no, col, fmt::format("unknown block [{}]", name));
        skipping_ = true;
      }
      return;
    }

    if (skipping_) return;

    auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      error(line_no, col, "expected 'key = value'");
      return;
    }
    std::string_view key = trim(body.substr(0, eq));
    std::string_view rest = body.substr(eq + 1);
    std::string_view value = trim(rest);
    const int value_col = value.empty() ? col + static_cast<int>(body.size())
                                        : static_cast<int>(value.data() - raw.data()) + 1;

    if (key.empty()) {
      error(line_no, col, "missing key before '='");
      return;
    }
    if (!block_) {
      error(line_no, col, fmt::format("key '{}' outside of any block", key));
      return;
    }
    if (!known_key(block_->kind, key)) {
      error(line_no, col, fmt::format("unknown key '{}'", key));
      return;
    }
    if (key != "attach" && block_->find(std::string(key))) {
      error(line_no, col, fmt::format("duplicate key '{}'", key));
      return;
    }
    block_->entries.emplace(std::string(key), Value{std::string(value), line_no, value_col});
  }

  void close_block() {
    skipping_ = false;
    if (!block_) return;
    RawBlock block = std::move(*block_);
    block_.reset();
    if (block.kind == RawBlock::Kind::biography)
      finish_biography(block);
    else
      finish_event(block);
  }

  const Value* require(const RawBlock& block, const char* key) {
    const Value* v = block.find(key);
    if (!v) error(block.line, 1, fmt::format("missing key '{}'", key));
    return v;
  }

  void finish_biography(const RawBlock& block) {
    if (const Value* v = require(block, "title")) {
      if (v->text.empty())
        error(v->line, v->column, "empty value for 'title'");
      else
        bio_.title = v->text;
    }
    if (const Value* v = require(block, "id")) {
      if (!is_token(v->text))
        error(v->line, v->column, fmt::format("invalid id '{}'", v->text));
      else
        bio_.id = v->text;
    }
    if (const Value* v = block.find("gazetteer")) {
      if (v->text.empty())
        error(v->line, v->column, "empty value for 'gazetteer'");
      else
        bio_.gazetteer_hint = v->text;
    }
  }

  std::optional<DateInterval> date_value(const Value& v) {
    try {
      return parse_date_expr(v.text);
    } catch (const std::invalid_argument& e) {
      error(v.line, v.column, e.what());
      return std::nullopt;
    }
  }

  void finish_event(const RawBlock& block) {
    const std::size_t errors_before = diags_.size();
    LifeEvent ev;
    ev.source_line = block.line;

    if (const Value* v = require(block, "id")) {
      if (!is_token(v->text))
        error(v->line, v->column, fmt::format("invalid id '{}'", v->text));
      else
        ev.id = v->text;
    }

    if (const Value* v = block.find("kind")) {
      if (auto k = parse_event_kind(v->text))
        ev.kind = *k;
      else
        error(v->line, v->column, fmt::format("unknown kind '{}'", v->text));
    }

    std::optional<DateInterval> start;
    if (const Value* v = require(block, "start")) start = date_value(*v);
    std::optional<DateInterval> end = start;
    if (const Value* v = block.find("end")) end = date_value(*v);
    if (start && end) {
      ev.when = DateInterval{start->start, end->end, start->circa || end->circa};
      if (!ev.when.is_ordered()) {
        const Value* v = block.find("end");
        error(v->line, v->column, "interval end precedes start");
      }
    }

    if (const Value* v = block.find("place")) {
      if (v->text.empty())
        error(v->line, v->column, "empty value for 'place'");
      else
        ev.place_key = v->text;
    }

    const Value* lat = block.find("lat");
    const Value* lon = block.find("lon");
    if ((lat == nullptr) != (lon == nullptr)) {
      const Value* given = lat ? lat : lon;
      error(given->line, given->column, "lat and lon must be given together");
    } else if (lat && lon) {
      auto la = parse_double(lat->text);
      auto lo = parse_double(lon->text);
      if (!la) error(lat->line, lat->column, fmt::format("malformed number '{}'", lat->text));
      if (!lo) error(lon->line, lon->column, fmt::format("malformed number '{}'", lon->text));
      if (la && (*la < -90.0 || *la > 90.0)) {
        error(lat->line, lat->column, "latitude out of range");
      } else if (la && lo) {
        ev.point = GeoPoint(*la, *lo);
      }
    }

    if (!block.find("place") && !(lat && lon))
      error(block.line, 1, "event needs a place or lat/lon");

    if (const Value* v = block.find("label"))
      ev.label = v->text;
    else
      ev.label = ev.place_key.empty() ? ev.id : ev.place_key;

    if (const Value* v = block.find("note")) ev.note = v->text;

    // multimap keeps equal keys in insertion order
    auto [first, last] = block.entries.equal_range("attach");
    for (auto it = first; it != last; ++it) {
      const Value& v = it->second;
      if (v.text.empty())
        error(v.line, v.column, "empty value for 'attach'");
      else
        ev.attachments.push_back(v.text);
    }

    if (diags_.size() == errors_before) bio_.events.push_back(std::move(ev));
  }

  std::string_view source_;
  Biography bio_;
  std::optional<RawBlock> block_;
  bool saw_biography_ = false;
  bool skipping_ = false;
  std::vector<ParseDiagnostic> diags_;
};

std::string start_expr(const CalendarDate& d) {
  if (d.month == 1 && d.day == 1) return fmt::format("{:04d}", d.year);
  if (d.day == 1) return fmt::format("{:04d}-{:02d}", d.year, d.month);
  return format_date(d);
}

std::string end_expr(const CalendarDate& d) {
  if (d.month == 12 && d.day == 31) return fmt::format("{:04d}", d.year);
  if (d.day == days_in_month(d.year, d.month)) return fmt::format("{:04d}-{:02d}", d.year, d.month);
  return format_date(d);
}

void put(std::string& out, std::string_view key, std::string_view value) {
  out += key;
  out += value.empty() ? " =" : " = ";
  out += value;
  out += '\n';
}

}  // namespace

DateInterval parse_date_expr(std::string_view expr) {
  const std::string token(trim(expr));
  std::string_view s = token;
  bool circa = false;
  if (s.substr(0, 2) == "c.") {
    circa = true;
    s = trim(s.substr(2));
  }

  auto malformed = [&] { return std::invalid_argument(fmt::format("malformed date '{}'", token)); };

  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t dash = s.find('-', pos);
    parts.push_back(s.substr(pos, dash == std::string_view::npos ? std::string_view::npos : dash - pos));
    if (dash == std::string_view::npos) break;
    pos = dash + 1;
  }
  if (parts.size() > 3) throw malformed();

  auto year = parse_fixed_digits(parts[0], 4);
  if (!year) throw malformed();
  if (*year < 1) throw std::invalid_argument(fmt::format("year out of range in '{}'", token));

  std::optional<int> month;
  if (parts.size() >= 2) {
    month = parse_fixed_digits(parts[1], 2);
    if (!month) throw malformed();
    if (*month < 1 || *month > 12)
      throw std::invalid_argument(fmt::format("month out of range in '{}'", token));
  }
  std::optional<int> day;
  if (parts.size() == 3) {
    day = parse_fixed_digits(parts[2], 2);
    if (!day) throw malformed();
    if (*day < 1 || *day > days_in_month(*year, *month))
      throw std::invalid_argument(fmt::format("day out of range in '{}'", token));
  }

  DateInterval out;
  out.circa = circa;
  if (day) {
    out.start = out.end = CalendarDate{*year, *month, *day};
  } else if (month) {
    out.start = CalendarDate{*year, *month, 1};
    out.end = CalendarDate{*year, *month, days_in_month(*year, *month)};
  } else {
    out.start = CalendarDate{*year, 1, 1};
    out.end = CalendarDate{*year, 12, 31};
  }
  return out;
}

BiographyParse parse_biography(std::string_view source) { return Parser(source).run(); }

std::string serialize_biography(const Biography& bio) {
  std::string out;
  out += "[biography]\n";
  put(out, "title", bio.title);
  put(out, "id", bio.id);
  if (bio.gazetteer_hint) put(out, "gazetteer", *bio.gazetteer_hint);

  for (const LifeEvent& ev : bio.events) {
    out += "\n[event]\n";
    put(out, "id", ev.id);
    put(out, "kind", to_string(ev.kind));

    std::string start = start_expr(ev.when.start);
    std::string end = end_expr(ev.when.end);
    put(out, "start", ev.when.circa ? "c." + start : start);
    // An omitted end defaults to the end of the start expression's range.
    if (parse_date_expr(start).end != ev.when.end) put(out, "end", end);

    if (!ev.place_key.empty()) put(out, "place", ev.place_key);
    if (ev.point) {
      put(out, "lat", fmt::format("{}", ev.point->lat()));
      put(out, "lon", fmt::format("{}", ev.point->lon()));
    }
    const std::string& default_label = ev.place_key.empty() ? ev.id : ev.place_key;
    if (ev.label != default_label) put(out, "label", ev.label);
    if (!ev.note.empty()) put(out, "note", ev.note);
    for (const auto& a : ev.attachments) put(out, "attach", a);
  }
  return out;
}

}  // namespace vita
