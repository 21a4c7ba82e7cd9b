#pragma once

// The `vita` command line: validate, compile, itinerary, distances, stats
// and geocode. Exit codes: 0 success, 1 domain failure (validation,
// resolution, geocoder answer), 2 usage or I/O error.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vita::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kGazetteerEnv = "VITA_GAZETTEER";
inline constexpr const char* kDefaultGazetteer = "gazetteer.tsv";

struct GazetteerChoice {
  std::filesystem::path path;
  bool explicit_choice = false;  // false only for the built-in default
};

/// Precedence: --gazetteer flag, then $VITA_GAZETTEER, then the biography's
/// own `gazetteer` key (relative to the biography file), then
/// ./gazetteer.tsv.
GazetteerChoice choose_gazetteer(const std::optional<std::string>& flag,
                                 const std::optional<std::string>& env,
                                 const std::optional<std::string>& hint,
                                 const std::filesystem::path& input_dir);

/// Writes through a sibling temporary file and renames it into place.
/// Throws std::runtime_error on failure, leaving no partial file behind.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

/// Runs one invocation. args excludes the program name. Payload goes to
/// out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vita::cli
