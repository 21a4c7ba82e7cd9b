#pragma once

// Bundled biographies compiled into the library. The files themselves live
// under corpora/ in the source tree.

#include <string_view>

namespace vita {

struct CorpusFiles {
  std::string_view vita;       // biography source
  std::string_view gazetteer;  // shared gazetteer TSV
};

CorpusFiles newton_corpus() noexcept;
CorpusFiles schiaparelli_corpus() noexcept;

}  // namespace vita
