#pragma once

// Strict XML read-back of emitted KML through expat, with namespace
// processing. Used to check well-formedness and to pull out placemarks.

#include <expat.h>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace kmlread {

inline constexpr std::string_view kKmlNs = "http://www.opengis.net/kml/2.2";

struct Placemark {
  std::string id;
  std::string name;
  std::string description;
  std::string begin;
  std::string end;
  std::string style_url;
  std::string coordinates;
  std::map<std::string, std::string> data;  // ExtendedData name -> value
};

struct Document {
  bool well_formed = false;
  std::string error;
  std::string root;  // "<namespace> <local>"
  std::string name;  // Document/name
  std::vector<std::string> style_ids;
  std::map<std::string, std::string> style_colors;
  std::vector<Placemark> placemarks;
};

namespace detail {

struct State {
  Document doc;
  std::vector<std::string> stack;  // local names
  std::string text;
  std::string data_name;
  Placemark current;
  std::string style_id;
};

inline std::string local(const char* qname) {
  std::string_view q(qname);
  auto sp = q.rfind(' ');
  return std::string(sp == std::string_view::npos ? q : q.substr(sp + 1));
}

inline void XMLCALL on_start(void* ud, const char* name, const char** attrs) {
  auto& s = *static_cast<State*>(ud);
  if (s.stack.empty()) s.doc.root = name;
  const std::string el = local(name);
  s.stack.push_back(el);
  s.text.clear();
  auto attr = [&](std::string_view key) -> std::string {
    for (int i = 0; attrs[i]; i += 2) {
      if (key == attrs[i]) return attrs[i + 1];
    }
    return {};
  };
  if (el == "Placemark") {
    s.current = Placemark{};
    s.current.id = attr("id");
  } else if (el == "Style") {
    s.style_id = attr("id");
    s.doc.style_ids.push_back(s.style_id);
  } else if (el == "Data") {
    s.data_name = attr("name");
  }
}

inline void XMLCALL on_end(void* ud, const char* name) {
  auto& s = *static_cast<State*>(ud);
  const std::string el = local(name);
  const std::string parent = s.stack.size() >= 2 ? s.stack[s.stack.size() - 2] : "";
  const bool in_placemark = [&] {
    for (const auto& e : s.stack) if (e == "Placemark") return true;
    return false;
  }();

  if (in_placemark) {
    if (el == "name" && parent == "Placemark") s.current.name = s.text;
    else if (el == "description") s.current.description = s.text;
    else if (el == "begin") s.current.begin = s.text;
    else if (el == "end") s.current.end = s.text;
    else if (el == "styleUrl") s.current.style_url = s.text;
    else if (el == "coordinates") s.current.coordinates = s.text;
    else if (el == "value") s.current.data[s.data_name] = s.text;
    else if (el == "Placemark") s.doc.placemarks.push_back(s.current);
  } else if (el == "name" && parent == "Document") {
    s.doc.name = s.text;
  } else if (el == "color" && parent == "IconStyle") {
    s.doc.style_colors[s.style_id] = s.text;
  }
  s.stack.pop_back();
  s.text.clear();
}

inline void XMLCALL on_text(void* ud, const char* data, int len) {
  static_cast<State*>(ud)->text.append(data, static_cast<std::size_t>(len));
}

}  // namespace detail

inline Document read(std::string_view xml) {
  detail::State state;
  XML_Parser p = XML_ParserCreateNS("UTF-8", ' ');
  XML_SetUserData(p, &state);
  XML_SetElementHandler(p, detail::on_start, detail::on_end);
  XML_SetCharacterDataHandler(p, detail::on_text);
  const bool ok = XML_Parse(p, xml.data(), static_cast<int>(xml.size()), XML_TRUE) == XML_STATUS_OK;
  state.doc.well_formed = ok;
  if (!ok) {
    state.doc.error = std::string(XML_ErrorString(XML_GetErrorCode(p))) + " at line " +
                      std::to_string(XML_GetCurrentLineNumber(p));
  }
  XML_ParserFree(p);
  return std::move(state.doc);
}

}  // namespace kmlread
