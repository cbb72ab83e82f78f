#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fsieve/knn.hpp"

namespace fsieve {

struct ConfusionMatrix {
  // Cells are keyed (true label, predicted label).
  std::size_t active_active = 0;
  std::size_t active_passive = 0;   // false passives
  std::size_t passive_active = 0;   // false actives
  std::size_t passive_passive = 0;

  std::size_t total() const {
    return active_active + active_passive + passive_active + passive_passive;
  }
  double accuracy() const;
  // Correct among true-Active / true-Passive rows; 0 when the class is
  // absent from the test split.
  double recall_active() const;
  double recall_passive() const;

  bool operator==(const ConfusionMatrix&) const = default;
};

struct RankedVerb {
  std::string verb;
  std::int64_t usage_count = 0;

  bool operator==(const RankedVerb&) const = default;
};

// The deliverable of a run: confusion statistics plus frequency-ranked
// misprediction lists. Lists are sorted by usage_count descending, ties
// lexicographic by verb, and partition the test rows.
struct FailureReport {
  ConfusionMatrix confusion;
  std::vector<RankedVerb> false_passives;  // true Active, predicted Passive
  std::vector<RankedVerb> false_actives;   // true Passive, predicted Active
  std::vector<RankedVerb> correct;

  bool operator==(const FailureReport&) const = default;
};

struct TopEntry {
  std::string verb;
  std::int64_t usage_count = 0;
  bool correct = false;
};

struct TopFrequent {
  std::vector<TopEntry> entries;   // top n by usage, ties lexicographic
  std::size_t correct_count = 0;
};

ConfusionMatrix confusion(const std::vector<PredictionOutcome>& outcomes);

FailureReport mine_failures(const std::vector<PredictionOutcome>& outcomes);

// Top n outcomes by usage_count with their correctness. Throws ConfigError
// when n exceeds the outcome count.
TopFrequent top_frequent_correctness(const std::vector<PredictionOutcome>& outcomes,
                                     std::size_t n);

// Per-verb (unweighted) accuracy over the outcomes that remain after
// dropping the top n by usage_count. Requires n < outcomes.size().
double accuracy_excluding_top(const std::vector<PredictionOutcome>& outcomes,
                              std::size_t n);

struct RunStats {
  int k = 1;
  std::uint64_t seed = 0;
  ConfusionMatrix confusion;
};

struct SweepEntry {
  int k = 1;
  double mean_accuracy = 0.0;
  double sd_accuracy = 0.0;  // population sd; 0 for a single seed
  double mean_recall_active = 0.0;
  double mean_recall_passive = 0.0;
};

struct SweepResult {
  std::vector<int> k_values;
  std::vector<std::uint64_t> seeds;  // identical across k values
  std::vector<SweepEntry> entries;   // one per requested k
  std::vector<RunStats> runs;        // every (k, seed) pipeline run
};

// Full pipeline (normalize -> split -> predict -> confusion) per (k, seed),
// aggregated per k. Runs are independent; jobs > 1 distributes them over a
// worker pool with order-independent aggregation.
SweepResult sweep_k(const ContingencyTable& table,
                    const std::vector<int>& k_values,
                    const std::vector<std::uint64_t>& seeds,
                    double train_fraction = 0.7, int jobs = 1);

struct StatSummary {
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;  // population sd
};

struct VerbFailureRate {
  std::string verb;
  std::size_t test_appearances = 0;
  std::size_t mispredictions = 0;
  double rate = 0.0;  // mispredictions / test_appearances
};

// Distribution of single-split results over many seeds, plus how often each
// verb is mispredicted when it lands in the test split.
struct EvalSummary {
  std::vector<RunStats> runs;  // one per seed, in seed order
  StatSummary accuracy;
  StatSummary recall_active;
  StatSummary recall_passive;
  std::vector<VerbFailureRate> verb_rates;  // ordered by verb
};

EvalSummary multi_seed_eval(const ContingencyTable& table,
                            const KnnConfig& config,
                            const std::vector<std::uint64_t>& seeds,
                            double train_fraction = 0.7, int jobs = 1);

// Delimited exports. Sweep/eval: one row per (k, seed) plus aggregate rows.
void write_sweep(std::ostream& out, const SweepResult& sweep,
                 char delimiter = ',');
void write_eval(std::ostream& out, const EvalSummary& summary, int k,
                char delimiter = ',');
void write_verb_rates(std::ostream& out, const EvalSummary& summary,
                      char delimiter = ',');
// The three report lists as one table: outcome, rank, verb, usage_count.
void write_failure_lists(std::ostream& out, const FailureReport& report,
                         char delimiter = ',');

}  // namespace fsieve
