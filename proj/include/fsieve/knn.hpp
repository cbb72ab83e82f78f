#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fsieve/featurize.hpp"

namespace fsieve {

using Matrix = std::vector<std::vector<double>>;

// Seeded, portable partition of table rows. |train| == round(fraction * n);
// identical (n, fraction, seed) triples produce identical plans everywhere
// (see rng.hpp for the pinned generator).
struct SplitPlan {
  std::uint64_t seed = 0;
  double train_fraction = 0.7;
  std::vector<std::size_t> train_indices;  // ascending
  std::vector<std::size_t> test_indices;   // ascending
};

struct NormalizationParams {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t size() const { return min.size(); }
};

enum class DistanceMetric { Euclidean };
enum class TiePolicy { FirstInRowOrder };

struct KnnConfig {
  int k = 1;
  DistanceMetric distance = DistanceMetric::Euclidean;
  TiePolicy tie_policy = TiePolicy::FirstInRowOrder;
};

struct Neighbor {
  std::size_t train_index = 0;
  double distance = 0.0;
};

// Per test row: predicted label plus the k selected neighbors, ascending by
// (distance, train index).
struct PredictionFragment {
  Voice predicted = Voice::Active;
  std::vector<Neighbor> neighbors;
};

struct NeighborVerb {
  std::string verb;
  double distance = 0.0;
};

struct PredictionOutcome {
  std::string verb;
  Voice true_label = Voice::Active;
  Voice predicted_label = Voice::Active;
  std::int64_t usage_count = 0;  // full-corpus usage of the verb row
  std::vector<NeighborVerb> neighbor_verbs;  // ascending distance, size k
};

// Per-column min/max over all rows. Throws DataError on an empty matrix.
NormalizationParams fit_normalization(const Matrix& features);

// x' = (x - min) / (max - min); constant columns map to 0. Values lie in
// [0, 1] whenever the fit covered the rows being transformed. Throws
// DataError on column-count mismatch.
Matrix apply_normalization(const Matrix& features,
                           const NormalizationParams& params);

// Uniform random partition. Throws DataError when n_rows < 2 and ConfigError
// for fractions outside (0,1) or fractions that leave train or test empty.
SplitPlan make_split(std::size_t n_rows, double train_fraction,
                     std::uint64_t seed);

// Brute-force k-nearest-neighbors with Euclidean distance and majority vote.
// Distance ties at the k-th boundary admit the lowest training row index;
// vote ties go to the label of the lowest-index selected neighbor.
//
// Squared distances accumulate in sorted term order, so consistently
// permuting feature columns of train and test cannot perturb ties.
std::vector<PredictionFragment> knn_predict(const Matrix& train_features,
                                            const std::vector<Voice>& train_labels,
                                            const Matrix& test_features,
                                            const KnnConfig& config);

// Full single-split run over a contingency table: min-max normalization is
// fitted on the whole table before splitting (faithful to the recipe this
// pipeline replicates; the leakage is deliberate and documented), then the
// plan's test rows are classified against its train rows. Outcomes are
// ordered by test row index.
std::vector<PredictionOutcome> classify_split(const ContingencyTable& table,
                                              const SplitPlan& plan,
                                              const KnnConfig& config);

// Delimited export: verb, true_label, predicted_label, usage_count,
// nearest_verb, nearest_distance (6 decimal places).
void write_predictions(std::ostream& out,
                       const std::vector<PredictionOutcome>& outcomes,
                       char delimiter = ',');

}  // namespace fsieve
