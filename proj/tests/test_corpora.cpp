#include <doctest.h>

#include <set>

#include "support/workspace.hpp"
#include "vita/corpora.hpp"
#include "vita/emit.hpp"
#include "vita/vita_format.hpp"

using namespace vita;

TEST_SUITE("corpora") {

TEST_CASE("embedded corpora match the files on disk") {
  CHECK(newton_corpus().vita == work::slurp(work::corpus_path("newton.vita")));
  CHECK(schiaparelli_corpus().vita == work::slurp(work::corpus_path("schiaparelli.vita")));
  CHECK(newton_corpus().gazetteer == work::slurp(work::corpus_path("gazetteer.tsv")));
  CHECK(schiaparelli_corpus().gazetteer == newton_corpus().gazetteer);
}

TEST_CASE("corpora parse, validate cleanly and resolve") {
  const auto g = std::get<Gazetteer>(load_gazetteer(newton_corpus().gazetteer));
  for (auto files : {newton_corpus(), schiaparelli_corpus()}) {
    auto parsed = parse_biography(files.vita);
    REQUIRE(std::holds_alternative<Biography>(parsed));
    const Biography& bio = std::get<Biography>(parsed);
    CAPTURE(bio.id);
    CHECK(validate_biography(bio, work::source_dir() / "corpora").empty());
    CHECK(bio.gazetteer_hint == std::optional<std::string>("gazetteer.tsv"));
    for (const auto& ev : bio.events) CHECK_NOTHROW(resolve(ev, g));
    CHECK(std::get<Biography>(parse_biography(serialize_biography(bio))) == bio);
  }
}

TEST_CASE("Newton places") {
  const Biography bio = std::get<Biography>(parse_biography(newton_corpus().vita));
  std::multiset<std::string> places;
  for (const auto& ev : bio.events) places.insert(ev.place_key);
  CHECK(places.count("woolsthorpe-manor") == 2);
  for (const char* key : {"cambridge", "london", "tower-of-london", "southampton"}) CHECK(places.count(key) >= 1);
  CHECK(bio.events.front().when.start == CalendarDate{1643, 1, 4});
}

TEST_CASE("Schiaparelli places") {
  const Biography bio = std::get<Biography>(parse_biography(schiaparelli_corpus().vita));
  std::set<std::string> places;
  for (const auto& ev : bio.events) places.insert(ev.place_key);
  for (const char* key : {"giza", "hermopolis", "assiut", "qau-el-kebir", "gebelien", "aswan", "deir-el-medina", "luxor"})
    CHECK(places.count(key) == 1);
}

TEST_CASE("golden outputs") {
  const auto g = std::get<Gazetteer>(load_gazetteer(newton_corpus().gazetteer));
  for (auto [name, files] : {std::pair{"newton", newton_corpus()}, std::pair{"schiaparelli", schiaparelli_corpus()}}) {
    CAPTURE(name);
    const Biography bio = std::get<Biography>(parse_biography(files.vita));
    const auto golden = work::source_dir() / "corpora" / "golden";
    const std::string stem = name;
    CHECK(emit_kml(bio, g) == work::slurp(golden / (stem + ".kml")));
    CHECK(emit_geojson(bio, g) == work::slurp(golden / (stem + ".geojson")));
    CHECK(emit_itinerarium(build_itinerary(bio, g), bio, TableFormat::csv) ==
          work::slurp(golden / (stem + ".itinerary.csv")));
  }
}

}  // TEST_SUITE
