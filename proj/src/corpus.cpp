#include "nalab/corpus.hpp"

#include "nalab/parser.hpp"

namespace nalab {

const std::vector<CorpusItem>& curated_corpus() {
  static const std::vector<CorpusItem> items = {
      {"acc", "[][]p -> []p", 1, 2, Verdict::Provable},
      {"acc", "[]p -> [][]p", 2, 1, Verdict::Provable},
      {"acc", "[][][]p -> []p", 1, 3, Verdict::Provable},
      {"acc", "[]p -> [][][]p", 3, 1, Verdict::Provable},
      {"acc", "[][][]p -> [][]p", 2, 3, Verdict::Provable},
      {"nec-taut", "[](p -> p)", 1, 1, Verdict::Provable},
      {"box-bot", "[]bot", 1, 0, Verdict::Refuted},
      {"box-bot", "[]bot", 2, 0, Verdict::Refuted},
      {"box-bot", "[][]bot", 1, 0, Verdict::Refuted},
      {"box-bot", "[][]bot", 2, 0, Verdict::Refuted},
      {"k-axiom", "[](p -> q) -> ([]p -> []q)", 1, 1, Verdict::Refuted},
      {"reflexivity", "[]p -> p", 1, 2, Verdict::Refuted, 3},
      {"p-box-p", "p -> []p", 2, 1, Verdict::Refuted, 3},
  };
  return items;
}

CorpusRow run_corpus_item(const CorpusItem& item, const DecideOptions& opts) {
  CorpusRow row{item};
  Formula a = parse_formula(item.formula);
  Decision d = decide(a, item.m, item.n, opts);
  row.verdict = d.verdict;
  if (d.proof) {
    ProofVerdict pv = check_proof(*d.proof);
    row.certificate_ok = pv.accepted && pv.theorem && *pv.theorem == a && d.proof->m == item.m && d.proof->n == item.n;
  } else if (d.countermodel) {
    row.certificate_ok = verify_countermodel(a, item.m, item.n, d.countermodel->model, d.countermodel->world);
    row.model_size = d.countermodel->model.worlds().size();
  }
  row.pass = row.verdict == item.expected && row.certificate_ok &&
             (item.max_model_size == 0 || row.model_size <= item.max_model_size);
  return row;
}

std::vector<CorpusRow> run_corpus(const DecideOptions& opts) {
  std::vector<CorpusRow> rows;
  for (const auto& item : curated_corpus()) rows.push_back(run_corpus_item(item, opts));
  return rows;
}

}  // namespace nalab
