#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "fsieve/errors.hpp"
#include "fsieve/mining.hpp"
#include "fsieve/rng.hpp"
#include "support/random_corpus.hpp"

using namespace fsieve;

namespace {

PredictionOutcome outcome_of(const std::string& verb, Voice truth,
                             Voice predicted, std::int64_t usage) {
  PredictionOutcome outcome;
  outcome.verb = verb;
  outcome.true_label = truth;
  outcome.predicted_label = predicted;
  outcome.usage_count = usage;
  return outcome;
}

std::vector<PredictionOutcome> random_outcomes(Xoshiro256StarStar& rng,
                                               std::size_t max_size = 60) {
  const std::size_t n = 1 + rng.next_below(max_size);
  std::vector<PredictionOutcome> outcomes;
  for (std::size_t i = 0; i < n; ++i) {
    outcomes.push_back(outcome_of(
        "verb" + std::to_string(rng.next_below(40)),
        rng.next_bool() ? Voice::Active : Voice::Passive,
        rng.next_bool() ? Voice::Active : Voice::Passive,
        static_cast<std::int64_t>(1 + rng.next_below(60))));
  }
  return outcomes;
}

ContingencyTable small_table(Xoshiro256StarStar& rng, std::size_t min_rows = 12) {
  for (;;) {
    const auto records = testing::random_corpus(rng, 120);
    const auto table = build_table(records, build_schema(records));
    if (table.rows.size() >= min_rows) return table;
  }
}

}  // namespace

TEST_CASE("confusion counts cells and derives ratios") {
  const std::vector<PredictionOutcome> outcomes = {
      outcome_of("a", Voice::Active, Voice::Active, 1),
      outcome_of("b", Voice::Active, Voice::Passive, 1),
      outcome_of("c", Voice::Passive, Voice::Passive, 1),
      outcome_of("d", Voice::Passive, Voice::Passive, 1),
  };
  const auto matrix = confusion(outcomes);
  CHECK(matrix.active_active == 1);
  CHECK(matrix.active_passive == 1);
  CHECK(matrix.passive_active == 0);
  CHECK(matrix.passive_passive == 2);
  CHECK(matrix.accuracy() == doctest::Approx(0.75));
  CHECK(matrix.recall_active() == doctest::Approx(0.5));
  CHECK(matrix.recall_passive() == doctest::Approx(1.0));
}

TEST_CASE("confusion of all-correct outcomes has accuracy 1") {
  const std::vector<PredictionOutcome> outcomes = {
      outcome_of("a", Voice::Active, Voice::Active, 1),
      outcome_of("b", Voice::Passive, Voice::Passive, 1),
  };
  CHECK(confusion(outcomes).accuracy() == doctest::Approx(1.0));
}

TEST_CASE("confusion rejects empty input") {
  CHECK_THROWS_AS(confusion({}), DataError);
}

TEST_CASE("mine_failures partitions and ranks") {
  const std::vector<PredictionOutcome> outcomes = {
      outcome_of("learning", Voice::Active, Voice::Passive, 27),
      outcome_of("protecting", Voice::Active, Voice::Passive, 19),
      outcome_of("attacking", Voice::Active, Voice::Passive, 17),
      outcome_of("spying", Voice::Active, Voice::Passive, 17),
      outcome_of("scanned", Voice::Passive, Voice::Active, 61),
      outcome_of("searching", Voice::Active, Voice::Active, 43),
  };
  const auto report = mine_failures(outcomes);
  REQUIRE(report.false_passives.size() == 4);
  CHECK(report.false_passives[0].verb == "learning");
  CHECK(report.false_passives[1].verb == "protecting");
  // 17-17 tie resolves lexicographically.
  CHECK(report.false_passives[2].verb == "attacking");
  CHECK(report.false_passives[3].verb == "spying");
  REQUIRE(report.false_actives.size() == 1);
  CHECK(report.false_actives[0] == RankedVerb{"scanned", 61});
  REQUIRE(report.correct.size() == 1);
  CHECK(report.correct[0].verb == "searching");
}

TEST_CASE("mine_failures with all-correct outcomes leaves failures empty") {
  const std::vector<PredictionOutcome> outcomes = {
      outcome_of("a", Voice::Active, Voice::Active, 2),
      outcome_of("b", Voice::Passive, Voice::Passive, 1),
  };
  const auto report = mine_failures(outcomes);
  CHECK(report.false_passives.empty());
  CHECK(report.false_actives.empty());
  CHECK(report.correct.size() == 2);
}

TEST_CASE("failure lists partition the outcomes and rank monotonically") {
  Xoshiro256StarStar rng(83);
  for (int trial = 0; trial < 200; ++trial) {
    const auto outcomes = random_outcomes(rng);
    const auto report = mine_failures(outcomes);
    CHECK(report.correct.size() + report.false_passives.size() +
              report.false_actives.size() ==
          outcomes.size());
    for (const auto* list :
         {&report.correct, &report.false_passives, &report.false_actives}) {
      for (std::size_t i = 1; i < list->size(); ++i) {
        const auto& prev = (*list)[i - 1];
        const auto& here = (*list)[i];
        const bool ordered = prev.usage_count > here.usage_count ||
                             (prev.usage_count == here.usage_count &&
                              prev.verb <= here.verb);
        CHECK(ordered);
      }
    }
  }
}

TEST_CASE("top_frequent_correctness ranks by usage then verb") {
  const std::vector<PredictionOutcome> outcomes = {
      outcome_of("hacking", Voice::Active, Voice::Active, 38),
      outcome_of("classified", Voice::Passive, Voice::Passive, 38),
      outcome_of("scanned", Voice::Passive, Voice::Active, 61),
      outcome_of("learning", Voice::Active, Voice::Passive, 27),
  };
  const auto top = top_frequent_correctness(outcomes, 3);
  REQUIRE(top.entries.size() == 3);
  CHECK(top.entries[0].verb == "scanned");
  CHECK(top.entries[1].verb == "classified");  // ties: c before h
  CHECK(top.entries[2].verb == "hacking");
  CHECK(top.correct_count == 2);
  CHECK_FALSE(top.entries[0].correct);
}

TEST_CASE("top_frequent_correctness consistency property") {
  Xoshiro256StarStar rng(89);
  for (int trial = 0; trial < 100; ++trial) {
    const auto outcomes = random_outcomes(rng);
    const std::size_t n = rng.next_below(outcomes.size() + 1);
    const auto top = top_frequent_correctness(outcomes, n);
    std::size_t mispredicted = 0;
    for (const auto& entry : top.entries) {
      if (!entry.correct) ++mispredicted;
    }
    CHECK(top.correct_count + mispredicted == n);
  }
}

TEST_CASE("top_frequent_correctness over everything matches confusion") {
  Xoshiro256StarStar rng(97);
  const auto outcomes = random_outcomes(rng);
  const auto top = top_frequent_correctness(outcomes, outcomes.size());
  const auto matrix = confusion(outcomes);
  CHECK(top.correct_count == matrix.active_active + matrix.passive_passive);
}

TEST_CASE("top_frequent_correctness n=1 on a single correct outcome") {
  const auto top = top_frequent_correctness(
      {outcome_of("a", Voice::Active, Voice::Active, 3)}, 1);
  CHECK(top.correct_count == 1);
}

TEST_CASE("top_frequent_correctness rejects out-of-range n") {
  CHECK_THROWS_AS(top_frequent_correctness(
                      {outcome_of("a", Voice::Active, Voice::Active, 1)}, 2),
                  ConfigError);
}

TEST_CASE("accuracy_excluding_top") {
  SUBCASE("hand-countable example") {
    // Top row removed was correct; remainder is half correct.
    const std::vector<PredictionOutcome> outcomes = {
        outcome_of("big", Voice::Active, Voice::Active, 50),
        outcome_of("mid", Voice::Active, Voice::Active, 5),
        outcome_of("low", Voice::Active, Voice::Passive, 2),
    };
    CHECK(accuracy_excluding_top(outcomes, 1) == doctest::Approx(0.5));
  }
  SUBCASE("n = 0 equals confusion accuracy exactly") {
    Xoshiro256StarStar rng(103);
    for (int trial = 0; trial < 50; ++trial) {
      const auto outcomes = random_outcomes(rng);
      CHECK(accuracy_excluding_top(outcomes, 0) == confusion(outcomes).accuracy());
    }
  }
  SUBCASE("n out of range") {
    const std::vector<PredictionOutcome> outcomes = {
        outcome_of("a", Voice::Active, Voice::Active, 1)};
    CHECK_THROWS_AS(accuracy_excluding_top(outcomes, 1), ConfigError);
  }
}

TEST_CASE("sweep_k single (k, seed) reproduces the single-run confusion") {
  Xoshiro256StarStar rng(113);
  const auto table = small_table(rng);
  const std::uint64_t seed = 4242;
  const auto sweep = sweep_k(table, {1}, {seed}, 0.7, 1);
  REQUIRE(sweep.entries.size() == 1);
  REQUIRE(sweep.runs.size() == 1);

  KnnConfig config;
  config.k = 1;
  const auto plan = make_split(table.rows.size(), 0.7, seed);
  const auto single = confusion(classify_split(table, plan, config));
  CHECK(sweep.runs[0].confusion == single);
  CHECK(sweep.entries[0].mean_accuracy == doctest::Approx(single.accuracy()));
  CHECK(sweep.entries[0].sd_accuracy == 0.0);
}

TEST_CASE("sweep_k validates k against the train size") {
  Xoshiro256StarStar rng(127);
  const auto table = small_table(rng);
  CHECK_THROWS_AS(sweep_k(table, {10000}, {1}, 0.7, 1), ConfigError);
  CHECK_THROWS_AS(sweep_k(table, {}, {1}, 0.7, 1), ConfigError);
  CHECK_THROWS_AS(sweep_k(table, {1}, {}, 0.7, 1), ConfigError);
}

TEST_CASE("sweep_k is deterministic and job-count independent") {
  Xoshiro256StarStar rng(131);
  const auto table = small_table(rng, 20);
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7};
  const auto serial = sweep_k(table, {1, 3}, seeds, 0.7, 1);
  const auto parallel = sweep_k(table, {1, 3}, seeds, 0.7, 4);
  REQUIRE(serial.runs.size() == parallel.runs.size());
  for (std::size_t i = 0; i < serial.runs.size(); ++i) {
    CHECK(serial.runs[i].confusion == parallel.runs[i].confusion);
  }
}

TEST_CASE("multi_seed_eval single seed equals that run") {
  Xoshiro256StarStar rng(137);
  const auto table = small_table(rng);
  KnnConfig config;
  config.k = 1;
  const auto summary = multi_seed_eval(table, config, {77}, 0.7, 1);
  REQUIRE(summary.runs.size() == 1);
  const auto plan = make_split(table.rows.size(), 0.7, 77);
  const auto single = confusion(classify_split(table, plan, config));
  CHECK(summary.runs[0].confusion == single);
  CHECK(summary.accuracy.mean == doctest::Approx(single.accuracy()));
  CHECK(summary.accuracy.median == doctest::Approx(single.accuracy()));
  CHECK(summary.accuracy.sd == 0.0);
}

TEST_CASE("multi_seed_eval verb rates count test appearances") {
  Xoshiro256StarStar rng(139);
  const auto table = small_table(rng, 15);
  KnnConfig config;
  config.k = 1;
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  const auto summary = multi_seed_eval(table, config, seeds, 0.7, 2);

  std::size_t total_appearances = 0;
  for (const auto& rate : summary.verb_rates) {
    total_appearances += rate.test_appearances;
    CHECK(rate.mispredictions <= rate.test_appearances);
    CHECK(rate.rate == doctest::Approx(static_cast<double>(rate.mispredictions) /
                                       static_cast<double>(rate.test_appearances)));
  }
  const auto plan = make_split(table.rows.size(), 0.7, 1);
  CHECK(total_appearances == plan.test_indices.size() * seeds.size());
  CHECK(std::is_sorted(summary.verb_rates.begin(), summary.verb_rates.end(),
                       [](const auto& a, const auto& b) { return a.verb < b.verb; }));
}

TEST_CASE("multi_seed_eval runs twice produce identical exports") {
  Xoshiro256StarStar rng(149);
  const auto table = small_table(rng, 15);
  KnnConfig config;
  config.k = 1;
  const std::vector<std::uint64_t> seeds = {10, 20, 30};
  std::ostringstream a, b;
  write_eval(a, multi_seed_eval(table, config, seeds, 0.7, 2), 1);
  write_eval(b, multi_seed_eval(table, config, seeds, 0.7, 1), 1);
  CHECK(a.str() == b.str());
}
