#include "vita/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vita/emit.hpp"
#include "vita/gazetteer.hpp"
#include "vita/geo.hpp"
#include "vita/vita_format.hpp"

namespace vita::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string input;
  std::optional<std::string> gazetteer;
  std::optional<std::string> output;
  std::string format;
  bool strict = false;
  int buckets = 5;
  std::vector<std::string> palette;
  bool no_attachments = false;
  bool matrix = false;
  std::string name;
  std::optional<std::string> endpoint;
};

/// Failure that maps directly to an exit code; the message is already printed.
struct Exit {
  int code;
};

std::optional<std::string> read_file(const fs::path& path) {
  std::error_code ec;
  if (fs::is_directory(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(ss).str();
}

std::optional<std::string> getenv_opt(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

/// Everything the pipeline commands share: parsed, validated, resolvable.
struct Loaded {
  Biography bio;
  Gazetteer gazetteer;
  std::vector<ItineraryLeg> legs;
};

class Pipeline {
 public:
  Pipeline(const Options& opt, std::ostream& err) : opt_(opt), err_(err) {}

  Loaded load() {
    const fs::path input = opt_.input;
    auto source = read_file(input);
    if (!source) {
      err_ << fmt::format("error: cannot read input '{}'\n", opt_.input);
      throw Exit{kExitUsage};
    }

    auto parsed = parse_biography(*source);
    if (auto* diags = std::get_if<std::vector<ParseDiagnostic>>(&parsed)) {
      for (const auto& d : *diags)
        err_ << fmt::format("error {}:{} {} (column {})\n", opt_.input, d.line, d.message, d.column);
      throw Exit{kExitDomain};
    }
    Loaded loaded;
    loaded.bio = std::move(std::get<Biography>(parsed));

    const fs::path input_dir = input.parent_path();
    GazetteerChoice choice =
        choose_gazetteer(opt_.gazetteer, getenv_opt(kGazetteerEnv), loaded.bio.gazetteer_hint, input_dir);
    if (auto text = read_file(choice.path)) {
      auto g = load_gazetteer(*text);
      if (auto* diags = std::get_if<std::vector<ParseDiagnostic>>(&g)) {
        for (const auto& d : *diags)
          err_ << fmt::format("error {}:{} {}\n", choice.path.string(), d.line, d.message);
        throw Exit{kExitDomain};
      }
      loaded.gazetteer = std::move(std::get<Gazetteer>(g));
    } else if (choice.explicit_choice) {
      err_ << fmt::format("error: cannot read gazetteer '{}'\n", choice.path.string());
      throw Exit{kExitUsage};
    }

    auto diags = validate_biography(loaded.bio, input_dir.empty() ? fs::path(".") : input_dir);
    bool failed = false;
    for (const auto& d : diags) {
      const bool fatal = d.severity == Severity::error || opt_.strict;
      failed = failed || fatal;
      const std::string where = d.event_id.empty() ? "" : fmt::format("event '{}': ", d.event_id);
      err_ << fmt::format("{} {}:{} {}{}\n", to_string(d.severity), opt_.input, d.line, where, d.message);
    }
    if (failed) throw Exit{kExitDomain};

    // Resolve every event up front so the first unknown place is reported
    // with its source line.
    for (const auto& ev : loaded.bio.events) {
      try {
        resolve_place(ev, loaded.gazetteer);
      } catch (const UnknownPlace& e) {
        err_ << fmt::format("error {}:{} {}\n", opt_.input, ev.source_line, e.what());
        throw Exit{kExitDomain};
      }
    }
    loaded.legs = build_itinerary(loaded.bio, loaded.gazetteer);
    return loaded;
  }

  void deliver(const std::string& payload, std::ostream& out) {
    if (!opt_.output) {
      out << payload;
      return;
    }
    try {
      write_file_atomically(*opt_.output, payload);
    } catch (const std::exception& e) {
      err_ << fmt::format("error: {}\n", e.what());
      throw Exit{kExitUsage};
    }
  }

 private:
  const Options& opt_;
  std::ostream& err_;
};

int cmd_validate(const Options& opt, std::ostream&, std::ostream& err) {
  Pipeline(opt, err).load();
  return kExitOk;
}

int cmd_compile(const Options& opt, std::ostream& out, std::ostream& err) {
  Pipeline p(opt, err);
  Loaded l = p.load();
  std::string payload;
  if (opt.format.empty() || opt.format == "kml") {
    EmitConfig cfg;
    cfg.bucket_count = opt.buckets;
    if (!opt.palette.empty()) cfg.palette = opt.palette;
    cfg.include_attachments = !opt.no_attachments;
    payload = emit_kml(l.bio, l.gazetteer, cfg);
  } else {
    payload = emit_geojson(l.bio, l.gazetteer);
  }
  p.deliver(payload, out);
  return kExitOk;
}

int cmd_itinerary(const Options& opt, std::ostream& out, std::ostream& err) {
  Pipeline p(opt, err);
  Loaded l = p.load();
  const auto fmt_kind = opt.format == "csv" ? TableFormat::csv : TableFormat::text;
  p.deliver(emit_itinerarium(l.legs, l.bio, fmt_kind), out);
  return kExitOk;
}

int cmd_distances(const Options& opt, std::ostream& out, std::ostream& err) {
  Pipeline p(opt, err);
  Loaded l = p.load();
  if (opt.matrix) {
    const auto places = distinct_places(l.legs);
    p.deliver(emit_distance_matrix(places), out);
  } else {
    p.deliver(emit_leg_listing(l.legs, l.bio), out);
  }
  return kExitOk;
}

int cmd_stats(const Options& opt, std::ostream& out, std::ostream& err) {
  Pipeline p(opt, err);
  Loaded l = p.load();
  const RouteStats stats = route_stats(l.legs);
  if (stats.crosses_antimeridian)
    err << "warning: route crosses the antimeridian; bounding box spans all longitudes\n";
  p.deliver(emit_route_stats(stats, l.bio), out);
  return kExitOk;
}

int cmd_geocode(const Options& opt, std::ostream& out, std::ostream& err) {
  if (!opt.endpoint) {
    err << "error: geocode needs --endpoint\n";
    return kExitUsage;
  }
  try {
    out << format_gazetteer_row(remote_resolve(opt.name, *opt.endpoint));
    return kExitOk;
  } catch (const GeocodeError& e) {
    err << fmt::format("error: {}\n", e.what());
    switch (e.kind()) {
      case GeocodeError::Kind::bad_endpoint:
      case GeocodeError::Kind::network:
        return kExitUsage;
      default:
        return kExitDomain;
    }
  }
}

}  // namespace

GazetteerChoice choose_gazetteer(const std::optional<std::string>& flag,
                                 const std::optional<std::string>& env,
                                 const std::optional<std::string>& hint,
                                 const fs::path& input_dir) {
  if (flag) return {*flag, true};
  if (env) return {*env, true};
  if (hint) return {input_dir / *hint, true};
  return {kDefaultGazetteer, false};
}

void write_file_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    f << content;
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw std::runtime_error(fmt::format("cannot write '{}': {}", path.string(), ec.message()));
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile biography timelines into KML, GeoJSON and itinerary tables", "vita"};
  app.require_subcommand(1);
  Options opt;

  auto add_pipeline = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("input", opt.input, "Biography file (.vita)")->required();
    sub->add_option("-g,--gazetteer", opt.gazetteer, "Gazetteer TSV (overrides $VITA_GAZETTEER)");
    sub->add_flag("--strict", opt.strict, "Treat warnings as errors");
    return sub;
  };

  add_pipeline("validate", "Check a biography and report diagnostics");

  CLI::App* compile = add_pipeline("compile", "Write a KML or GeoJSON placemark file");
  compile->add_option("-o,--output", opt.output, "Output file (default: stdout)");
  compile->add_option("--format", opt.format, "kml or geojson")->check(CLI::IsMember({"kml", "geojson"}));
  compile->add_option("--buckets", opt.buckets, "Number of timeline color buckets")->check(CLI::PositiveNumber);
  compile->add_option("--palette", opt.palette, "KML colors (aabbggrr), comma separated")->delimiter(',');
  compile->add_flag("--no-attachments", opt.no_attachments, "Leave attachment links out of descriptions");

  CLI::App* itinerary = add_pipeline("itinerary", "Print the itinerarium: places in order with distances");
  itinerary->add_option("-o,--output", opt.output, "Output file (default: stdout)");
  itinerary->add_option("--format", opt.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  CLI::App* distances = add_pipeline("distances", "Print leg distances or a pairwise matrix");
  distances->add_option("-o,--output", opt.output, "Output file (default: stdout)");
  distances->add_flag("--matrix", opt.matrix, "Pairwise distance matrix over distinct places");

  CLI::App* stats = add_pipeline("stats", "Print route statistics");
  stats->add_option("-o,--output", opt.output, "Output file (default: stdout)");

  CLI::App* geocode = app.add_subcommand("geocode", "Ask a geocoder for a suggested gazetteer row");
  geocode->add_option("name", opt.name, "Place name")->required();
  geocode->add_option("--endpoint", opt.endpoint, "Geocoder URL (http only)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("validate")) return cmd_validate(opt, out, err);
    if (app.got_subcommand("compile")) return cmd_compile(opt, out, err);
    if (app.got_subcommand("itinerary")) return cmd_itinerary(opt, out, err);
    if (app.got_subcommand("distances")) return cmd_distances(opt, out, err);
    if (app.got_subcommand("stats")) return cmd_stats(opt, out, err);
    if (app.got_subcommand("geocode")) return cmd_geocode(opt, out, err);
  } catch (const Exit& e) {
    return e.code;
  } catch (const UnknownPlace& e) {
    err << fmt::format("error: {}\n", e.what());
    return kExitDomain;
  } catch (const EmitError& e) {
    err << fmt::format("error: {}\n", e.what());
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << fmt::format("error: {}\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace vita::cli
