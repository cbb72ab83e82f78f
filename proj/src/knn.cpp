#include "fsieve/knn.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fsieve/csv.hpp"
#include "fsieve/errors.hpp"
#include "fsieve/rng.hpp"

namespace fsieve {

namespace {

// Squared Euclidean distance. Terms are summed in ascending order so the
// result does not depend on column order; without this, consistent column
// permutations could flip float ties and with them predictions.
double squared_distance(const std::vector<double>& a,
                        const std::vector<double>& b,
                        std::vector<double>& term_buffer) {
  term_buffer.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    term_buffer[i] = d * d;
  }
  std::sort(term_buffer.begin(), term_buffer.end());
  double sum = 0.0;
  for (double t : term_buffer) sum += t;
  return sum;
}

}  // namespace

NormalizationParams fit_normalization(const Matrix& features) {
  if (features.empty()) throw DataError("cannot fit normalization: no rows");
  NormalizationParams params;
  const std::size_t cols = features.front().size();
  params.min.assign(cols, 0.0);
  params.max.assign(cols, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    double lo = features[0][c];
    double hi = features[0][c];
    for (const auto& row : features) {
      lo = std::min(lo, row[c]);
      hi = std::max(hi, row[c]);
    }
    params.min[c] = lo;
    params.max[c] = hi;
  }
  return params;
}

Matrix apply_normalization(const Matrix& features,
                           const NormalizationParams& params) {
  Matrix normalized(features.size());
  for (std::size_t r = 0; r < features.size(); ++r) {
    const auto& row = features[r];
    if (row.size() != params.size()) {
      throw DataError("normalization width mismatch: row has " +
                      std::to_string(row.size()) + " columns, params have " +
                      std::to_string(params.size()));
    }
    auto& out = normalized[r];
    out.resize(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      const double range = params.max[c] - params.min[c];
      out[c] = range == 0.0 ? 0.0 : (row[c] - params.min[c]) / range;
    }
  }
  return normalized;
}

SplitPlan make_split(std::size_t n_rows, double train_fraction,
                     std::uint64_t seed) {
  if (n_rows < 2) {
    throw DataError("cannot split " + std::to_string(n_rows) +
                    " rows into train and test");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must lie in (0, 1)");
  }
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n_rows)));
  if (n_train == 0 || n_train == n_rows) {
    throw ConfigError("train fraction " + std::to_string(train_fraction) +
                      " leaves an empty train or test set for " +
                      std::to_string(n_rows) + " rows");
  }

  std::vector<std::size_t> indices(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) indices[i] = i;
  Xoshiro256StarStar rng(seed);
  rng.shuffle(indices);

  SplitPlan plan;
  plan.seed = seed;
  plan.train_fraction = train_fraction;
  plan.train_indices.assign(indices.begin(), indices.begin() + n_train);
  plan.test_indices.assign(indices.begin() + n_train, indices.end());
  std::sort(plan.train_indices.begin(), plan.train_indices.end());
  std::sort(plan.test_indices.begin(), plan.test_indices.end());
  return plan;
}

std::vector<PredictionFragment> knn_predict(const Matrix& train_features,
                                            const std::vector<Voice>& train_labels,
                                            const Matrix& test_features,
                                            const KnnConfig& config) {
  if (train_features.size() != train_labels.size()) {
    throw DataError("train features and labels disagree on row count");
  }
  if (config.k < 1 ||
      static_cast<std::size_t>(config.k) > train_features.size()) {
    throw ConfigError("k = " + std::to_string(config.k) +
                      " is out of range for " +
                      std::to_string(train_features.size()) + " training rows");
  }
  const std::size_t width =
      train_features.empty() ? 0 : train_features.front().size();
  for (const auto& row : train_features) {
    if (row.size() != width) throw DataError("ragged train feature matrix");
  }
  for (const auto& row : test_features) {
    if (row.size() != width) {
      throw DataError("test feature width " + std::to_string(row.size()) +
                      " does not match train width " + std::to_string(width));
    }
  }

  const auto k = static_cast<std::size_t>(config.k);
  std::vector<PredictionFragment> fragments;
  fragments.reserve(test_features.size());

  std::vector<double> term_buffer;
  std::vector<std::pair<double, std::size_t>> ranked(train_features.size());
  for (const auto& query : test_features) {
    for (std::size_t i = 0; i < train_features.size(); ++i) {
      ranked[i] = {squared_distance(query, train_features[i], term_buffer), i};
    }
    std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end(),
                      [](const auto& a, const auto& b) {
                        if (a.first != b.first) return a.first < b.first;
                        return a.second < b.second;
                      });

    PredictionFragment fragment;
    fragment.neighbors.reserve(k);
    std::size_t active_votes = 0;
    std::size_t lowest_index = train_features.size();
    for (std::size_t j = 0; j < k; ++j) {
      const auto [dist2, index] = ranked[j];
      fragment.neighbors.push_back({index, std::sqrt(dist2)});
      if (train_labels[index] == Voice::Active) ++active_votes;
      lowest_index = std::min(lowest_index, index);
    }
    const std::size_t passive_votes = k - active_votes;
    if (active_votes != passive_votes) {
      fragment.predicted =
          active_votes > passive_votes ? Voice::Active : Voice::Passive;
    } else {
      fragment.predicted = train_labels[lowest_index];
    }
    fragments.push_back(std::move(fragment));
  }
  return fragments;
}

std::vector<PredictionOutcome> classify_split(const ContingencyTable& table,
                                              const SplitPlan& plan,
                                              const KnnConfig& config) {
  Matrix counts(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    counts[r].assign(table.rows[r].features.begin(),
                     table.rows[r].features.end());
  }
  const NormalizationParams params = fit_normalization(counts);
  const Matrix normalized = apply_normalization(counts, params);

  Matrix train, test;
  std::vector<Voice> train_labels;
  train.reserve(plan.train_indices.size());
  test.reserve(plan.test_indices.size());
  for (std::size_t index : plan.train_indices) {
    train.push_back(normalized[index]);
    train_labels.push_back(table.rows[index].label);
  }
  for (std::size_t index : plan.test_indices) test.push_back(normalized[index]);

  const auto fragments = knn_predict(train, train_labels, test, config);

  std::vector<PredictionOutcome> outcomes;
  outcomes.reserve(fragments.size());
  for (std::size_t t = 0; t < fragments.size(); ++t) {
    const VerbProfile& row = table.rows[plan.test_indices[t]];
    PredictionOutcome outcome;
    outcome.verb = row.verb;
    outcome.true_label = row.label;
    outcome.predicted_label = fragments[t].predicted;
    outcome.usage_count = row.usage_count;
    outcome.neighbor_verbs.reserve(fragments[t].neighbors.size());
    for (const Neighbor& neighbor : fragments[t].neighbors) {
      outcome.neighbor_verbs.push_back(
          {table.rows[plan.train_indices[neighbor.train_index]].verb,
           neighbor.distance});
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

void write_predictions(std::ostream& out,
                       const std::vector<PredictionOutcome>& outcomes,
                       char delimiter) {
  out << csv_join({"verb", "true_label", "predicted_label", "usage_count",
                   "nearest_verb", "nearest_distance"},
                  delimiter)
      << "\n";
  for (const auto& outcome : outcomes) {
    std::ostringstream distance;
    distance << std::fixed << std::setprecision(6);
    std::string nearest_verb;
    if (!outcome.neighbor_verbs.empty()) {
      nearest_verb = outcome.neighbor_verbs.front().verb;
      distance << outcome.neighbor_verbs.front().distance;
    }
    out << csv_join({outcome.verb, std::string(voice_name(outcome.true_label)),
                     std::string(voice_name(outcome.predicted_label)),
                     std::to_string(outcome.usage_count), nearest_verb,
                     distance.str()},
                    delimiter)
        << "\n";
  }
}

}  // namespace fsieve
