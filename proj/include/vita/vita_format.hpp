#pragma once

// Reader and writer for the line-oriented VITA biography format:
//
//   # comment
//   [biography]
//   title = Isaac Newton
//   id = newton
//   gazetteer = gazetteer.tsv
//
//   [event]
//   id = birth
//   kind = birth
//   start = 1643-01-04
//   place = woolsthorpe-manor
//
// Values are taken verbatim after trimming ASCII whitespace. A `#` anywhere
// starts a comment, so values cannot contain one; nor can they span lines.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vita/model.hpp"

namespace vita {

struct ParseDiagnostic {
  int line = 1;    // 1-based
  int column = 1;  // 1-based, in bytes
  std::string message;

  friend bool operator==(const ParseDiagnostic&, const ParseDiagnostic&) = default;
};

/// Either a biography or at least one diagnostic, never both.
using BiographyParse = std::variant<Biography, std::vector<ParseDiagnostic>>;

BiographyParse parse_biography(std::string_view source);

/// Parses `YYYY`, `YYYY-MM` or `YYYY-MM-DD`, optionally prefixed with `c.`.
/// Year and month forms expand to the whole year or month.
/// Throws std::invalid_argument with a message naming the offending token.
DateInterval parse_date_expr(std::string_view expr);

/// Canonical VITA text. Keys appear in grammar order; empty optionals and
/// defaulted values are omitted.
std::string serialize_biography(const Biography& bio);

}  // namespace vita
