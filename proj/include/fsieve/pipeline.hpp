#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fsieve/corpus.hpp"
#include "fsieve/knn.hpp"
#include "fsieve/mining.hpp"
#include "fsieve/report.hpp"

namespace fsieve {

// Configuration for a full ingest -> table -> classify -> failures run.
// Defaults replicate the reference setup: k = 1, 70/30 split, top-10 lists.
struct RunConfig {
  std::string input_path;
  std::string recode_path;  // empty = no recoding
  char delimiter = ',';
  ColumnConfig columns;
  std::uint64_t seed = 42;
  int k = 1;
  double train_fraction = 0.7;
  std::size_t top_n = 10;
  ReportFormat format = ReportFormat::Markdown;
};

struct PipelineResult {
  CorpusStats stats;
  ContingencyTable table;
  SplitPlan plan;
  std::vector<PredictionOutcome> outcomes;
  FailureReport report;
};

// Executes the chain in memory. File artifacts and manifests are the CLI's
// concern; this function only loads inputs and computes.
PipelineResult run_pipeline(const RunConfig& config);

}  // namespace fsieve
