#pragma once

// Small text helpers shared by the parsers and emitters. Not installed.

#include <string>
#include <string_view>

namespace vita::detail {

inline bool is_ascii_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

inline std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_ascii_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_space(s.back())) s.remove_suffix(1);
  return s;
}

/// Escapes the five XML special characters.
std::string xml_escape(std::string_view s);

/// Body of a JSON string literal, without the surrounding quotes.
std::string json_escape(std::string_view s);

/// RFC 4180 field: quoted when it contains a comma, quote or line break.
std::string csv_field(std::string_view s);

/// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t display_width(std::string_view s) noexcept;

}  // namespace vita::detail
