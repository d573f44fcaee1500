#pragma once

#include <string>
#include <vector>

#include "nalab/decide.hpp"

namespace nalab {

struct CorpusItem {
  std::string label;
  std::string formula;
  std::size_t m = 0;
  std::size_t n = 0;
  Verdict expected = Verdict::Unknown;
  /// Largest countermodel accepted for a Refuted item; 0 means any size within the bound.
  std::size_t max_model_size = 0;
};

struct CorpusRow {
  CorpusItem item;
  Verdict verdict = Verdict::Unknown;
  /// The proof passes check_proof, or the countermodel passes verify_countermodel.
  bool certificate_ok = false;
  std::size_t model_size = 0;
  bool pass = false;
};

const std::vector<CorpusItem>& curated_corpus();
CorpusRow run_corpus_item(const CorpusItem& item, const DecideOptions& opts = {});
std::vector<CorpusRow> run_corpus(const DecideOptions& opts = {});

}  // namespace nalab
