#include "indexlab/corpus.hpp"

namespace indexlab {

namespace {

std::vector<CorpusEntry> make_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back({"one", TrigSymbol::identity(1), 0});
  out.push_back({"e_plus", TrigSymbol::monomial(1), 1});
  out.push_back({"e_minus", TrigSymbol::monomial(-1), -1});
  out.push_back({"e_plus2", TrigSymbol::monomial(2), 2});
  out.push_back({"e_minus2", TrigSymbol::monomial(-2), -2});
  out.push_back({"two_plus_e", TrigSymbol::monomial(0, 2.0) + TrigSymbol::monomial(1), 0});
  // e^{-2i theta} (3 + e^{i theta}) = 3 e^{-2i theta} + e^{-i theta}
  out.push_back(
      {"em2_times_3pe", TrigSymbol::monomial(-2, 3.0) + TrigSymbol::monomial(-1), -2});
  out.push_back({"diag_mix",
                 TrigSymbol::diag(TrigSymbol::monomial(1),
                                  TrigSymbol::monomial(0, 3.0) + TrigSymbol::monomial(1)),
                 1});
  return out;
}

}  // namespace

const std::vector<CorpusEntry>& symbol_corpus() {
  static const std::vector<CorpusEntry> corpus = make_corpus();
  return corpus;
}

std::pair<TrigSymbol, TrigSymbol> homotopy_pair() {
  return {TrigSymbol::monomial(0, 2.0) + TrigSymbol::monomial(1),
          TrigSymbol::monomial(0, 2.1) + TrigSymbol::monomial(1)};
}

const CorpusEntry& corpus_symbol(const std::string& id) {
  for (const auto& entry : symbol_corpus()) {
    if (entry.id == id) return entry;
  }
  throw ConfigError("unknown corpus symbol '" + id + "'");
}

}  // namespace indexlab
