#include <doctest.h>

#include "support/generators.hpp"
#include "support/stub_geocoder.hpp"
#include "vita/corpora.hpp"
#include "vita/gazetteer.hpp"

using namespace vita;

namespace {

Gazetteer ok(const GazetteerLoad& r) {
  if (auto* d = std::get_if<std::vector<ParseDiagnostic>>(&r)) {
    for (const auto& x : *d) MESSAGE(x.line << " " << x.message);
    FAIL("expected a gazetteer");
  }
  return std::get<Gazetteer>(r);
}

std::vector<ParseDiagnostic> bad(const GazetteerLoad& r) {
  REQUIRE(std::holds_alternative<std::vector<ParseDiagnostic>>(r));
  return std::get<std::vector<ParseDiagnostic>>(r);
}

LifeEvent at_place(std::string key) {
  LifeEvent ev;
  ev.id = "e";
  ev.place_key = std::move(key);
  return ev;
}

}  // namespace

TEST_SUITE("gazetteer") {

TEST_CASE("load a row") {
  auto g = ok(load_gazetteer("giza\tGiza\t29.9773\t31.1325\tEgypt\n"));
  REQUIRE(g.size() == 1);
  const auto& e = g.at("giza");
  CHECK(e.display_name == "Giza");
  CHECK(e.point.lat() == 29.9773);
  CHECK(e.point.lon() == 31.1325);
  CHECK(e.region == "Egypt");
  CHECK(e.line == 1);
}

TEST_CASE("empty input and comments") {
  CHECK(ok(load_gazetteer("")).empty());
  CHECK(ok(load_gazetteer("# only a comment\n\n")).empty());
  auto g = ok(load_gazetteer("# header comment\nluxor\tLuxor\t25.6872\t32.6396\t\r\n"));
  CHECK(g.at("luxor").region.empty());
}

TEST_CASE("malformed rows carry their line numbers") {
  auto d = bad(load_gazetteer("# c\ngiza\tGiza\t95.0\t31.1\tEgypt\n"));
  REQUIRE(d.size() == 1);
  CHECK(d[0].line == 2);
  CHECK(d[0].message == "latitude out of range");

  CHECK(bad(load_gazetteer("giza\tGiza\t29.9\n"))[0].message == "expected 5 tab-separated columns, found 3");
  CHECK(bad(load_gazetteer("giza\tGiza\tabc\t31\tEgypt\n"))[0].message == "malformed latitude 'abc'");
  CHECK(bad(load_gazetteer("giza\tGiza\t29\t181\tEgypt\n"))[0].message == "longitude out of range");
  CHECK(bad(load_gazetteer("Giza\tGiza\t29\t31\tEgypt\n"))[0].message == "invalid key 'Giza'");
  CHECK(bad(load_gazetteer("giza\t\t29\t31\tEgypt\n"))[0].message == "empty display name");

  auto dup = bad(load_gazetteer("giza\tGiza\t29\t31\tEgypt\n# x\ngiza\tGiza 2\t29\t31\tEgypt\n"));
  REQUIRE(dup.size() == 1);
  CHECK(dup[0].line == 3);
  CHECK(dup[0].message == "duplicate key 'giza' (lines 1 and 3)");
}

TEST_CASE("re-serialization is lossless") {
  const auto g = ok(load_gazetteer(newton_corpus().gazetteer));
  CHECK(g.size() >= 15);
  CHECK(ok(load_gazetteer(serialize_gazetteer(g))) == g);

  gen::Rng rng(31);
  Gazetteer random;
  for (int i = 0; i < 300; ++i) {
    GazetteerEntry e{gen::token(rng), gen::text(rng, 4, false), GeoPoint(gen::uniform_real(rng, -90, 90),
                                                                            gen::uniform_real(rng, -180, 180)),
                     "", 0};
    if (e.display_name.find('\t') != std::string::npos) continue;
    random.emplace(e.key, e);
  }
  CHECK(ok(load_gazetteer(serialize_gazetteer(random))) == random);
}

TEST_CASE("normalize_key") {
  CHECK(normalize_key("Deir el-Medina") == "deir-el-medina");
  CHECK(normalize_key("  GIZA ") == "giza");
  CHECK(normalize_key("Occhieppo Inferiore") == "occhieppo-inferiore");
  CHECK(normalize_key("Qau_el   Kebir") == "qau-el-kebir");
  CHECK(normalize_key("-Tower of London-") == "tower-of-london");
  CHECK(normalize_key("ÉCOLE Ñandú") == "école-ñandú");
  CHECK(normalize_key("ΑΘΗΝΑ") == "αθηνα");
  CHECK(normalize_key("МОСКВА") == "москва");
  CHECK(normalize_key("東京") == "東京");
  CHECK_THROWS_WITH_AS(normalize_key("  _ - "), "name normalizes to empty key", std::invalid_argument);
  CHECK_THROWS_AS(normalize_key(""), std::invalid_argument);
}

TEST_CASE("normalize_key is idempotent") {
  gen::Rng rng(5);
  for (int i = 0; i < 5000; ++i) {
    std::string s = gen::text(rng, 8);
    if (gen::uniform(rng, 0, 4) == 0) s += static_cast<char>(gen::uniform(rng, 128, 255));
    try {
      const std::string once = normalize_key(s);
      REQUIRE(normalize_key(once) == once);
      REQUIRE(once.front() != '-');
      REQUIRE(once.back() != '-');
    } catch (const std::invalid_argument&) {
    }
  }
}

TEST_CASE("resolve") {
  const auto g = ok(load_gazetteer(newton_corpus().gazetteer));

  LifeEvent inline_ev = at_place("");
  inline_ev.point = GeoPoint(41.0, -200.0);
  CHECK(resolve(inline_ev, g) == GeoPoint(41.0, 160.0));
  CHECK(resolve(inline_ev, g).lon() == 160.0);

  const GeoPoint tower = resolve(at_place("tower-of-london"), g);
  CHECK(tower == g.at("tower-of-london").point);
  CHECK(resolve(at_place("Tower of London"), g) == tower);

  // inline point wins over a resolvable key
  LifeEvent both = at_place("tower-of-london");
  both.point = GeoPoint(1.0, 2.0);
  CHECK(resolve(both, g) == GeoPoint(1.0, 2.0));
  CHECK(resolve_place(both, g).key.empty());
  CHECK(resolve_place(at_place("Tower of London"), g).key == "tower-of-london");

  try {
    resolve(at_place("atlantis"), g);
    FAIL("expected UnknownPlace");
  } catch (const UnknownPlace& e) {
    CHECK(e.key() == "atlantis");
    CHECK(e.event_id() == "e");
  }
  CHECK_THROWS_AS(resolve(at_place("   "), g), UnknownPlace);
}

TEST_CASE("url encoding") {
  CHECK(url_encode("Qau el-Kebir") == "Qau%20el-Kebir");
  CHECK(url_encode("a&b=c") == "a%26b%3Dc");
  CHECK(url_encode("é") == "%C3%A9");
}

TEST_CASE("remote_resolve against a local stub") {
  stub::Geocoder server;

  const GazetteerEntry e = remote_resolve("Assiut", server.url("/ok"));
  CHECK(e.key == "assiut");
  CHECK(e.display_name == "Assiut");
  CHECK(e.point == GeoPoint(27.18, 31.18));
  CHECK(server.last_query() == "Assiut");
  CHECK(format_gazetteer_row(e) == "assiut\tAssiut\t27.18\t31.18\t\n");

  remote_resolve("Qau el-Kebir", server.url("/ok"));
  CHECK(server.last_query() == "Qau el-Kebir");

  auto kind_of = [&](const std::string& url) {
    try {
      remote_resolve("Assiut", url);
    } catch (const GeocodeError& err) {
      return std::pair(err.kind(), std::string(err.what()));
    }
    FAIL("expected GeocodeError");
    return std::pair(GeocodeError::Kind::network, std::string());
  };

  auto [k404, m404] = kind_of(server.url("/missing"));
  CHECK(k404 == GeocodeError::Kind::not_found);
  CHECK(m404 == "place not found at endpoint");

  auto [k500, m500] = kind_of(server.url("/broken"));
  CHECK(k500 == GeocodeError::Kind::http_status);
  CHECK(m500 == "endpoint returned HTTP 500");

  auto [klat, mlat] = kind_of(server.url("/nolat"));
  CHECK(klat == GeocodeError::Kind::malformed);
  CHECK(mlat.starts_with("malformed geocoder response"));

  CHECK(kind_of(server.url("/extra")).first == GeocodeError::Kind::malformed);
  CHECK(kind_of(server.url("/notjson")).first == GeocodeError::Kind::malformed);
  CHECK(kind_of("https://127.0.0.1/x").first == GeocodeError::Kind::bad_endpoint);
  CHECK(kind_of("not a url").first == GeocodeError::Kind::bad_endpoint);
  CHECK(kind_of("http://127.0.0.1:" + std::to_string(stub::closed_port()) + "/x").first ==
        GeocodeError::Kind::network);
}

}  // TEST_SUITE
