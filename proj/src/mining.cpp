#include "fsieve/mining.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "fsieve/csv.hpp"
#include "fsieve/errors.hpp"

namespace fsieve {

namespace {

bool ranked_before(const RankedVerb& a, const RankedVerb& b) {
  if (a.usage_count != b.usage_count) return a.usage_count > b.usage_count;
  return a.verb < b.verb;
}

// Indices of outcomes ordered by usage_count descending, verb ties
// lexicographic. Shared by the top-frequency operations so their notion of
// "top" cannot drift apart.
std::vector<std::size_t> usage_ranking(
    const std::vector<PredictionOutcome>& outcomes) {
  std::vector<std::size_t> order(outcomes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (outcomes[a].usage_count != outcomes[b].usage_count) {
                       return outcomes[a].usage_count > outcomes[b].usage_count;
                     }
                     return outcomes[a].verb < outcomes[b].verb;
                   });
  return order;
}

std::string fixed(double value, int places) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(places) << value;
  return out.str();
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

// Population sd; a single observation has sd 0.
double sd_of(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double mean = mean_of(values);
  double sum = 0.0;
  for (double v : values) sum += (v - mean) * (v - mean);
  return std::sqrt(sum / static_cast<double>(values.size()));
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

StatSummary summarize(const std::vector<double>& values) {
  return {mean_of(values), median_of(values), sd_of(values)};
}

// Runs (k, seed) tasks over a fixed-size worker pool. Results land in
// preallocated slots, so aggregation order never depends on scheduling.
template <typename Task>
void run_indexed(std::size_t count, int jobs, Task&& task) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  const std::size_t pool = std::min<std::size_t>(jobs, count);
  workers.reserve(pool);
  for (std::size_t w = 0; w < pool; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        task(i);
      }
    });
  }
  for (auto& worker : workers) worker.join();
}

}  // namespace

double ConfusionMatrix::accuracy() const {
  const std::size_t n = total();
  if (n == 0) return 0.0;
  return static_cast<double>(active_active + passive_passive) /
         static_cast<double>(n);
}

double ConfusionMatrix::recall_active() const {
  const std::size_t n = active_active + active_passive;
  if (n == 0) return 0.0;
  return static_cast<double>(active_active) / static_cast<double>(n);
}

double ConfusionMatrix::recall_passive() const {
  const std::size_t n = passive_active + passive_passive;
  if (n == 0) return 0.0;
  return static_cast<double>(passive_passive) / static_cast<double>(n);
}

ConfusionMatrix confusion(const std::vector<PredictionOutcome>& outcomes) {
  if (outcomes.empty()) throw DataError("no prediction outcomes");
  ConfusionMatrix matrix;
  for (const auto& outcome : outcomes) {
    if (outcome.true_label == Voice::Active) {
      if (outcome.predicted_label == Voice::Active) {
        matrix.active_active++;
      } else {
        matrix.active_passive++;
      }
    } else {
      if (outcome.predicted_label == Voice::Active) {
        matrix.passive_active++;
      } else {
        matrix.passive_passive++;
      }
    }
  }
  return matrix;
}

FailureReport mine_failures(const std::vector<PredictionOutcome>& outcomes) {
  FailureReport report;
  report.confusion = confusion(outcomes);
  for (const auto& outcome : outcomes) {
    RankedVerb entry{outcome.verb, outcome.usage_count};
    if (outcome.true_label == outcome.predicted_label) {
      report.correct.push_back(std::move(entry));
    } else if (outcome.true_label == Voice::Active) {
      report.false_passives.push_back(std::move(entry));
    } else {
      report.false_actives.push_back(std::move(entry));
    }
  }
  std::sort(report.correct.begin(), report.correct.end(), ranked_before);
  std::sort(report.false_passives.begin(), report.false_passives.end(),
            ranked_before);
  std::sort(report.false_actives.begin(), report.false_actives.end(),
            ranked_before);
  return report;
}

TopFrequent top_frequent_correctness(
    const std::vector<PredictionOutcome>& outcomes, std::size_t n) {
  if (n > outcomes.size()) {
    throw ConfigError("top-n of " + std::to_string(n) + " exceeds " +
                      std::to_string(outcomes.size()) + " outcomes");
  }
  const auto order = usage_ranking(outcomes);
  TopFrequent top;
  top.entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& outcome = outcomes[order[i]];
    const bool correct = outcome.true_label == outcome.predicted_label;
    top.entries.push_back({outcome.verb, outcome.usage_count, correct});
    if (correct) top.correct_count++;
  }
  return top;
}

double accuracy_excluding_top(const std::vector<PredictionOutcome>& outcomes,
                              std::size_t n) {
  if (n >= outcomes.size()) {
    throw ConfigError("cannot exclude top " + std::to_string(n) + " of " +
                      std::to_string(outcomes.size()) + " outcomes");
  }
  const auto order = usage_ranking(outcomes);
  std::size_t correct = 0;
  for (std::size_t i = n; i < order.size(); ++i) {
    const auto& outcome = outcomes[order[i]];
    if (outcome.true_label == outcome.predicted_label) ++correct;
  }
  return static_cast<double>(correct) /
         static_cast<double>(outcomes.size() - n);
}

SweepResult sweep_k(const ContingencyTable& table,
                    const std::vector<int>& k_values,
                    const std::vector<std::uint64_t>& seeds,
                    double train_fraction, int jobs) {
  if (k_values.empty()) throw ConfigError("no k values requested");
  if (seeds.empty()) throw ConfigError("no seeds requested");
  const auto n_train = static_cast<std::size_t>(std::llround(
      train_fraction * static_cast<double>(table.rows.size())));
  for (int k : k_values) {
    if (k < 1 || static_cast<std::size_t>(k) > n_train) {
      throw ConfigError("k = " + std::to_string(k) +
                        " is invalid for a training split of " +
                        std::to_string(n_train) + " rows");
    }
  }

  SweepResult result;
  result.k_values = k_values;
  result.seeds = seeds;
  result.runs.resize(k_values.size() * seeds.size());

  run_indexed(result.runs.size(), jobs, [&](std::size_t i) {
    const int k = k_values[i / seeds.size()];
    const std::uint64_t seed = seeds[i % seeds.size()];
    const SplitPlan plan = make_split(table.rows.size(), train_fraction, seed);
    KnnConfig config;
    config.k = k;
    const auto outcomes = classify_split(table, plan, config);
    result.runs[i] = {k, seed, confusion(outcomes)};
  });

  for (std::size_t ki = 0; ki < k_values.size(); ++ki) {
    std::vector<double> accuracies, recalls_active, recalls_passive;
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const ConfusionMatrix& m = result.runs[ki * seeds.size() + si].confusion;
      accuracies.push_back(m.accuracy());
      recalls_active.push_back(m.recall_active());
      recalls_passive.push_back(m.recall_passive());
    }
    result.entries.push_back({k_values[ki], mean_of(accuracies),
                              sd_of(accuracies), mean_of(recalls_active),
                              mean_of(recalls_passive)});
  }
  return result;
}

EvalSummary multi_seed_eval(const ContingencyTable& table,
                            const KnnConfig& config,
                            const std::vector<std::uint64_t>& seeds,
                            double train_fraction, int jobs) {
  if (seeds.empty()) throw ConfigError("no seeds requested");

  EvalSummary summary;
  summary.runs.resize(seeds.size());
  std::vector<std::vector<PredictionOutcome>> per_seed(seeds.size());

  run_indexed(seeds.size(), jobs, [&](std::size_t i) {
    const SplitPlan plan =
        make_split(table.rows.size(), train_fraction, seeds[i]);
    per_seed[i] = classify_split(table, plan, config);
    summary.runs[i] = {config.k, seeds[i], confusion(per_seed[i])};
  });

  std::vector<double> accuracies, recalls_active, recalls_passive;
  for (const RunStats& run : summary.runs) {
    accuracies.push_back(run.confusion.accuracy());
    recalls_active.push_back(run.confusion.recall_active());
    recalls_passive.push_back(run.confusion.recall_passive());
  }
  summary.accuracy = summarize(accuracies);
  summary.recall_active = summarize(recalls_active);
  summary.recall_passive = summarize(recalls_passive);

  std::map<std::string, std::pair<std::size_t, std::size_t>> rates;
  for (const auto& outcomes : per_seed) {
    for (const auto& outcome : outcomes) {
      auto& [appearances, misses] = rates[outcome.verb];
      appearances++;
      if (outcome.true_label != outcome.predicted_label) misses++;
    }
  }
  summary.verb_rates.reserve(rates.size());
  for (const auto& [verb, counts] : rates) {
    summary.verb_rates.push_back(
        {verb, counts.first, counts.second,
         static_cast<double>(counts.second) /
             static_cast<double>(counts.first)});
  }
  return summary;
}

void write_sweep(std::ostream& out, const SweepResult& sweep, char delimiter) {
  out << csv_join({"k", "seed", "accuracy", "recall_active", "recall_passive"},
                  delimiter)
      << "\n";
  for (const RunStats& run : sweep.runs) {
    out << csv_join({std::to_string(run.k), std::to_string(run.seed),
                     fixed(run.confusion.accuracy(), 6),
                     fixed(run.confusion.recall_active(), 6),
                     fixed(run.confusion.recall_passive(), 6)},
                    delimiter)
        << "\n";
  }
  for (const SweepEntry& entry : sweep.entries) {
    out << csv_join({std::to_string(entry.k), "mean",
                     fixed(entry.mean_accuracy, 6),
                     fixed(entry.mean_recall_active, 6),
                     fixed(entry.mean_recall_passive, 6)},
                    delimiter)
        << "\n";
    out << csv_join({std::to_string(entry.k), "sd", fixed(entry.sd_accuracy, 6),
                     "", ""},
                    delimiter)
        << "\n";
  }
}

void write_eval(std::ostream& out, const EvalSummary& summary, int k,
                char delimiter) {
  out << csv_join({"k", "seed", "accuracy", "recall_active", "recall_passive"},
                  delimiter)
      << "\n";
  for (const RunStats& run : summary.runs) {
    out << csv_join({std::to_string(run.k), std::to_string(run.seed),
                     fixed(run.confusion.accuracy(), 6),
                     fixed(run.confusion.recall_active(), 6),
                     fixed(run.confusion.recall_passive(), 6)},
                    delimiter)
        << "\n";
  }
  const auto aggregate = [&](const char* name, const StatSummary& stat_a,
                             const StatSummary& stat_ra,
                             const StatSummary& stat_rp,
                             double StatSummary::*member) {
    out << csv_join({std::to_string(k), name, fixed(stat_a.*member, 6),
                     fixed(stat_ra.*member, 6), fixed(stat_rp.*member, 6)},
                    delimiter)
        << "\n";
  };
  aggregate("mean", summary.accuracy, summary.recall_active,
            summary.recall_passive, &StatSummary::mean);
  aggregate("median", summary.accuracy, summary.recall_active,
            summary.recall_passive, &StatSummary::median);
  aggregate("sd", summary.accuracy, summary.recall_active,
            summary.recall_passive, &StatSummary::sd);
}

void write_verb_rates(std::ostream& out, const EvalSummary& summary,
                      char delimiter) {
  out << csv_join({"verb", "test_appearances", "mispredictions", "failure_rate"},
                  delimiter)
      << "\n";
  for (const VerbFailureRate& rate : summary.verb_rates) {
    out << csv_join({rate.verb, std::to_string(rate.test_appearances),
                     std::to_string(rate.mispredictions),
                     fixed(rate.rate, 4)},
                    delimiter)
        << "\n";
  }
}

void write_failure_lists(std::ostream& out, const FailureReport& report,
                         char delimiter) {
  out << csv_join({"outcome", "rank", "verb", "usage_count"}, delimiter) << "\n";
  const auto write_list = [&](const char* name,
                              const std::vector<RankedVerb>& list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      out << csv_join({name, std::to_string(i + 1), list[i].verb,
                       std::to_string(list[i].usage_count)},
                      delimiter)
          << "\n";
    }
  };
  write_list("correct", report.correct);
  write_list("false_passive", report.false_passives);
  write_list("false_active", report.false_actives);
}

}  // namespace fsieve
