// corpus.hpp — the bundled test symbols every suite runs over.

#pragma once

#include <string>
#include <vector>

#include "indexlab/trig_symbol.hpp"

namespace indexlab {

struct CorpusEntry {
  std::string id;
  TrigSymbol symbol;
  int winding;  // winding of det, fixed by construction
};

// 1; e^{+-i theta}; e^{+-2i theta}; 2 + e^{i theta};
// e^{-2i theta}(3 + e^{i theta}); diag(e^{i theta}, 3 + e^{i theta}).
const std::vector<CorpusEntry>& symbol_corpus();

// Margin-certified homotopy pair (2 + e^{i theta}, 2.1 + e^{i theta}).
std::pair<TrigSymbol, TrigSymbol> homotopy_pair();

// Lookup by id; throws ConfigError for unknown names.
const CorpusEntry& corpus_symbol(const std::string& id);

}  // namespace indexlab
