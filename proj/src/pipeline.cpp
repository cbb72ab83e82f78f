#include "fsieve/pipeline.hpp"

namespace fsieve {

PipelineResult run_pipeline(const RunConfig& config) {
  std::vector<ActionRecord> records =
      read_corpus_file(config.input_path, config.columns, config.delimiter);
  if (!config.recode_path.empty()) {
    records = recode_traits(std::move(records), RecodeMap::load(config.recode_path));
  }

  PipelineResult result;
  result.stats = validate_corpus(records);
  result.table = build_table(records, build_schema(records));
  result.plan =
      make_split(result.table.rows.size(), config.train_fraction, config.seed);
  KnnConfig knn;
  knn.k = config.k;
  result.outcomes = classify_split(result.table, result.plan, knn);
  result.report = mine_failures(result.outcomes);
  return result;
}

}  // namespace fsieve
