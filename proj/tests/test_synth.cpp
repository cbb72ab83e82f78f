#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "fsieve/errors.hpp"
#include "fsieve/knn.hpp"
#include "fsieve/synth.hpp"

using namespace fsieve;

namespace {

// Usage-weighted marker share per verb, for auditing the signal rule.
std::map<std::string, std::pair<int, int>> marker_tallies(
    const SynthCorpus& corpus, Category marker_category) {
  const std::string marker =
      std::string(category_name(marker_category).substr(0, 1)) + "0";
  std::map<std::string, std::pair<int, int>> tallies;  // verb -> (marker, total)
  for (const auto& record : corpus.records) {
    auto& [count, total] = tallies[record.verb];
    if (record.trait(marker_category) == marker) ++count;
    ++total;
  }
  return tallies;
}

double knn_accuracy(const SynthCorpus& corpus, std::uint64_t seed) {
  const auto table =
      build_table(corpus.records, build_schema(corpus.records));
  const auto plan = make_split(table.rows.size(), 0.7, seed);
  KnnConfig config;
  config.k = 1;
  const auto outcomes = classify_split(table, plan, config);
  std::size_t correct = 0;
  for (const auto& outcome : outcomes) {
    if (outcome.true_label == outcome.predicted_label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(outcomes.size());
}

}  // namespace

TEST_CASE("generate is deterministic in the spec") {
  SynthSpec spec;
  spec.n_verbs = 60;
  spec.seed = 9;
  const auto a = generate(spec);
  const auto b = generate(spec);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].verb == b.records[i].verb);
    CHECK(a.records[i].voice == b.records[i].voice);
    CHECK(a.records[i].traits == b.records[i].traits);
  }
  CHECK(a.truth.ambiguous_by_verb == b.truth.ambiguous_by_verb);
}

TEST_CASE("generate plants exactly round(fraction * n) ambiguous verbs") {
  SynthSpec spec;
  spec.n_verbs = 101;
  spec.ambiguous_fraction = 0.3;
  spec.seed = 4;
  const auto corpus = generate(spec);
  std::size_t ambiguous = 0;
  for (const auto& [verb, flag] : corpus.truth.ambiguous_by_verb) {
    if (flag) ++ambiguous;
  }
  CHECK(corpus.truth.ambiguous_by_verb.size() == 101);
  CHECK(ambiguous == 30);  // round(0.3 * 101)
}

TEST_CASE("clean verbs satisfy the signal rule exactly") {
  SynthSpec spec;
  spec.n_verbs = 120;
  spec.ambiguous_fraction = 0.25;
  spec.seed = 21;
  const auto corpus = generate(spec);
  const auto tallies = marker_tallies(corpus, spec.marker_category);

  std::map<std::string, Voice> voice_of;
  for (const auto& record : corpus.records) {
    voice_of[record.verb] = record.voice;
  }
  for (const auto& [verb, flag] : corpus.truth.ambiguous_by_verb) {
    if (flag) continue;
    const auto& [count, total] = tallies.at(verb);
    const bool rule_active = 2 * count > total;
    CHECK(rule_active == (voice_of.at(verb) == Voice::Active));
  }
}

TEST_CASE("generate rejects invalid specs") {
  SynthSpec spec;
  spec.n_verbs = 1;
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec.n_verbs = 10;
  spec.ambiguous_fraction = 1.5;
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec.ambiguous_fraction = 0.3;
  spec.mean_usage = 0.0;
  CHECK_THROWS_AS(generate(spec), ConfigError);
}

TEST_CASE("separable corpus classifies nearly perfectly") {
  SynthSpec spec;
  spec.n_verbs = 300;
  spec.ambiguous_fraction = 0.0;
  spec.seed = 33;
  const auto corpus = generate(spec);
  CHECK(knn_accuracy(corpus, 1) >= 0.95);
}

TEST_CASE("fully ambiguous corpus is near chance over seeds") {
  double total = 0.0;
  const int trials = 20;
  for (int i = 0; i < trials; ++i) {
    SynthSpec spec;
    spec.n_verbs = 300;
    spec.ambiguous_fraction = 1.0;
    spec.seed = 100 + i;
    total += knn_accuracy(generate(spec), 7 + i);
  }
  const double mean = total / trials;
  CHECK(mean > 0.4);
  CHECK(mean < 0.6);
}

TEST_CASE("enrichment arithmetic") {
  GroundTruth truth;
  truth.ambiguous_by_verb = {{"a", true}, {"b", true}, {"c", false}, {"d", false}};
  FailureReport report;
  report.false_passives = {{"a", 5}};
  report.false_actives = {{"b", 4}};
  report.correct = {{"c", 3}, {"d", 2}};
  // Mispredictions all ambiguous, test set half ambiguous -> 2.0.
  const auto result = enrichment(report, truth);
  CHECK(result.defined);
  CHECK(result.value == doctest::Approx(2.0));
}

TEST_CASE("enrichment is undefined without mispredictions") {
  GroundTruth truth;
  truth.ambiguous_by_verb = {{"a", true}, {"b", false}};
  FailureReport report;
  report.correct = {{"a", 2}, {"b", 1}};
  CHECK_FALSE(enrichment(report, truth).defined);
}

TEST_CASE("enrichment requires full coverage") {
  GroundTruth truth;
  truth.ambiguous_by_verb = {{"a", true}};
  FailureReport report;
  report.correct = {{"a", 2}};
  report.false_actives = {{"mystery", 1}};
  CHECK_THROWS_AS(enrichment(report, truth), DataError);
}

TEST_CASE("ground truth sidecar round-trips") {
  GroundTruth truth;
  truth.ambiguous_by_verb = {{"va", true}, {"vb", false}};
  std::ostringstream out;
  write_ground_truth(out, truth);
  CHECK(out.str() == "verb,flag\nva,ambiguous\nvb,clean\n");
  std::istringstream in(out.str());
  const auto parsed = read_ground_truth(in);
  CHECK(parsed.ambiguous_by_verb == truth.ambiguous_by_verb);
}

TEST_CASE("load_synth_spec parses keys and validates") {
  const char* path = "synth_spec_test.ini";
  {
    std::ofstream out(path);
    out << "[synth]\n"
           "n_verbs = 50\n"
           "ambiguous_fraction = 0.4\n"
           "mean_usage = 3.5\n"
           "seed = 77\n"
           "vocab_sizes = 3, 4, 5, 4, 3\n";
  }
  const auto spec = load_synth_spec(path);
  CHECK(spec.n_verbs == 50);
  CHECK(spec.ambiguous_fraction == doctest::Approx(0.4));
  CHECK(spec.mean_usage == doctest::Approx(3.5));
  CHECK(spec.seed == 77);
  CHECK(spec.vocab_sizes == std::array<int, 5>{3, 4, 5, 4, 3});
  std::remove(path);

  CHECK_THROWS_AS(load_synth_spec("does_not_exist.ini"), ConfigError);
}
