#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fsieve/corpus.hpp"
#include "fsieve/mining.hpp"

namespace fsieve {

// Recipe for a synthetic corpus with planted "clean" and "ambiguous" verbs.
// Clean verbs carry trait profiles that the signal rule maps to their label;
// ambiguous verbs draw label-independent profiles and get their label from a
// fair coin. The harness then checks whether mispredictions enrich for the
// planted ambiguity.
struct SynthSpec {
  int n_verbs = 700;
  double ambiguous_fraction = 0.3;
  double mean_usage = 5.0;  // geometric usage distribution, minimum 1
  std::array<int, kCategoryCount> vocab_sizes = {4, 4, 4, 4, 4};

  // Signal rule: label == Active iff the marker value's count exceeds half
  // of usage_count. The marker is value 0 of marker_category.
  Category marker_category = Category::Gender;
  double marker_rate_active = 0.92;
  double marker_rate_passive = 0.04;
  // Clean verbs also tilt the remaining categories toward value 0 for
  // actives, away for passives.
  double typical_rate_active = 0.70;
  double typical_rate_passive = 0.10;

  std::uint64_t seed = 1;
};

struct GroundTruth {
  std::map<std::string, bool> ambiguous_by_verb;  // verb -> planted-ambiguous

  bool contains(const std::string& verb) const {
    return ambiguous_by_verb.count(verb) != 0;
  }
};

struct SynthCorpus {
  std::vector<ActionRecord> records;
  GroundTruth truth;
};

// Deterministic in the spec (seed included). The number of ambiguous verbs
// is exactly round(ambiguous_fraction * n_verbs). Throws ConfigError on an
// invalid spec.
SynthCorpus generate(const SynthSpec& spec);

// INI file with a single [synth] section; keys match the field names.
SynthSpec load_synth_spec(const std::string& path);

struct Enrichment {
  double value = 0.0;
  bool defined = false;  // false when there are no mispredictions or no
                         // ambiguous verbs in the test split
};

// (ambiguous share among mispredicted) / (ambiguous share among all test
// verbs). Throws DataError when a test verb lacks ground truth.
Enrichment enrichment(const FailureReport& report, const GroundTruth& truth);

// Sidecar format: verb,flag with flag in {clean, ambiguous}.
void write_ground_truth(std::ostream& out, const GroundTruth& truth,
                        char delimiter = ',');
GroundTruth read_ground_truth(std::istream& in, char delimiter = ',');

}  // namespace fsieve
