#include "fsieve/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "fsieve/csv.hpp"
#include "fsieve/errors.hpp"
#include "fsieve/rng.hpp"

namespace fsieve {

namespace {

void check_spec(const SynthSpec& spec) {
  if (spec.n_verbs < 2) throw ConfigError("synth spec: n_verbs must be >= 2");
  if (spec.ambiguous_fraction < 0.0 || spec.ambiguous_fraction > 1.0) {
    throw ConfigError("synth spec: ambiguous_fraction must lie in [0, 1]");
  }
  if (spec.mean_usage < 1.0) {
    throw ConfigError("synth spec: mean_usage must be >= 1");
  }
  for (int size : spec.vocab_sizes) {
    if (size < 2) throw ConfigError("synth spec: vocab sizes must be >= 2");
  }
  const auto check_rate = [](double rate, const char* name) {
    if (rate < 0.0 || rate > 1.0) {
      throw ConfigError(std::string("synth spec: ") + name +
                        " must lie in [0, 1]");
    }
  };
  check_rate(spec.marker_rate_active, "marker_rate_active");
  check_rate(spec.marker_rate_passive, "marker_rate_passive");
  check_rate(spec.typical_rate_active, "typical_rate_active");
  check_rate(spec.typical_rate_passive, "typical_rate_passive");
}

std::string value_token(Category category, int index) {
  return std::string(category_name(category).substr(0, 1)) +
         std::to_string(index);
}

// Usage ~ 1 + geometric; mean = mean_usage.
std::int64_t sample_usage(Xoshiro256StarStar& rng, double mean_usage) {
  if (mean_usage <= 1.0) return 1;
  const double p = 1.0 / mean_usage;
  const double u = rng.next_unit();
  const auto failures = static_cast<std::int64_t>(
      std::floor(std::log1p(-u) / std::log1p(-p)));
  return 1 + std::max<std::int64_t>(0, failures);
}

// Value index for one record and category. Tilted categories pick value 0
// with the given rate and fall back to a uniform choice among the rest.
int sample_value(Xoshiro256StarStar& rng, int vocab, double rate_for_zero) {
  if (rng.next_unit() < rate_for_zero) return 0;
  return 1 + static_cast<int>(rng.next_below(vocab - 1));
}

int marker_count(const std::vector<std::array<int, kCategoryCount>>& profile,
                 Category marker_category) {
  int count = 0;
  for (const auto& record : profile) {
    if (record[static_cast<std::size_t>(marker_category)] == 0) ++count;
  }
  return count;
}

}  // namespace

SynthCorpus generate(const SynthSpec& spec) {
  check_spec(spec);
  Xoshiro256StarStar rng(spec.seed);

  const int n_ambiguous = static_cast<int>(
      std::llround(spec.ambiguous_fraction * spec.n_verbs));

  // Decide which verbs are ambiguous by shuffling the verb indices.
  std::vector<int> verb_order(spec.n_verbs);
  for (int i = 0; i < spec.n_verbs; ++i) verb_order[i] = i;
  rng.shuffle(verb_order);
  std::set<int> ambiguous_set(verb_order.begin(),
                              verb_order.begin() + n_ambiguous);

  SynthCorpus corpus;
  for (int v = 0; v < spec.n_verbs; ++v) {
    std::ostringstream name;
    name << "v" << std::setw(4) << std::setfill('0') << v;
    const std::string verb = name.str();
    const bool ambiguous = ambiguous_set.count(v) != 0;
    const std::int64_t usage = sample_usage(rng, spec.mean_usage);
    const Voice label = rng.next_bool() ? Voice::Active : Voice::Passive;

    std::vector<std::array<int, kCategoryCount>> profile;
    const int max_attempts = 10000;
    for (int attempt = 0;; ++attempt) {
      profile.clear();
      for (std::int64_t r = 0; r < usage; ++r) {
        std::array<int, kCategoryCount> record{};
        for (Category category : kCategories) {
          const auto c = static_cast<std::size_t>(category);
          const int vocab = spec.vocab_sizes[c];
          double rate_for_zero = 1.0 / vocab;  // ambiguous background
          if (!ambiguous) {
            if (category == spec.marker_category) {
              rate_for_zero = label == Voice::Active ? spec.marker_rate_active
                                                     : spec.marker_rate_passive;
            } else {
              rate_for_zero = label == Voice::Active
                                  ? spec.typical_rate_active
                                  : spec.typical_rate_passive;
            }
          }
          record[c] = sample_value(rng, vocab, rate_for_zero);
        }
        profile.push_back(record);
      }
      if (ambiguous) break;
      // Clean verbs must satisfy the signal rule exactly: Active iff the
      // marker value covers more than half of the usages.
      const bool rule_active =
          2 * marker_count(profile, spec.marker_category) > usage;
      if (rule_active == (label == Voice::Active)) break;
      if (attempt >= max_attempts) {
        throw ConfigError("synth spec: signal rule unsatisfiable for the "
                          "configured marker rates");
      }
    }

    for (const auto& values : profile) {
      ActionRecord record;
      record.work_id = "synthetic";
      record.genre = Genre::Unknown;
      record.verb = verb;
      record.voice = label;
      for (Category category : kCategories) {
        const auto c = static_cast<std::size_t>(category);
        record.trait(category) = value_token(category, values[c]);
      }
      corpus.records.push_back(std::move(record));
    }
    corpus.truth.ambiguous_by_verb.emplace(verb, ambiguous);
  }
  return corpus;
}

SynthSpec load_synth_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open synth spec: " + path);

  SynthSpec spec;
  std::string line;
  std::size_t line_number = 0;
  bool in_section = false;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string text = line.substr(first, last - first + 1);
    if (text[0] == '#' || text[0] == ';') continue;
    if (text == "[synth]") {
      in_section = true;
      continue;
    }
    if (text.front() == '[') {
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": unknown section " + text);
    }
    if (!in_section) {
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": expected [synth] section");
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": expected \"key = value\"");
    }
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = strip(text.substr(0, eq));
    const std::string value = strip(text.substr(eq + 1));
    try {
      if (key == "n_verbs") {
        spec.n_verbs = std::stoi(value);
      } else if (key == "ambiguous_fraction") {
        spec.ambiguous_fraction = std::stod(value);
      } else if (key == "mean_usage") {
        spec.mean_usage = std::stod(value);
      } else if (key == "seed") {
        spec.seed = std::stoull(value);
      } else if (key == "marker_category") {
        const auto category = category_from_name(value);
        if (!category) throw ConfigError("unknown category " + value);
        spec.marker_category = *category;
      } else if (key == "marker_rate_active") {
        spec.marker_rate_active = std::stod(value);
      } else if (key == "marker_rate_passive") {
        spec.marker_rate_passive = std::stod(value);
      } else if (key == "typical_rate_active") {
        spec.typical_rate_active = std::stod(value);
      } else if (key == "typical_rate_passive") {
        spec.typical_rate_passive = std::stod(value);
      } else if (key == "vocab_sizes") {
        std::istringstream parts(value);
        std::string part;
        std::size_t i = 0;
        while (std::getline(parts, part, ',')) {
          if (i >= kCategoryCount) throw ConfigError("too many vocab sizes");
          spec.vocab_sizes[i++] = std::stoi(strip(part));
        }
        if (i != kCategoryCount) throw ConfigError("expected 5 vocab sizes");
      } else {
        throw ConfigError("unknown key \"" + key + "\"");
      }
    } catch (const std::invalid_argument&) {
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": malformed value for " + key);
    } catch (const std::out_of_range&) {
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": value out of range for " + key);
    }
  }
  check_spec(spec);
  return spec;
}

Enrichment enrichment(const FailureReport& report, const GroundTruth& truth) {
  const auto require_flag = [&](const RankedVerb& entry) {
    const auto it = truth.ambiguous_by_verb.find(entry.verb);
    if (it == truth.ambiguous_by_verb.end()) {
      throw DataError("verb \"" + entry.verb + "\" has no ground truth");
    }
    return it->second;
  };

  std::size_t test_total = 0, test_ambiguous = 0;
  std::size_t miss_total = 0, miss_ambiguous = 0;
  const auto tally = [&](const std::vector<RankedVerb>& list, bool missed) {
    for (const auto& entry : list) {
      const bool ambiguous = require_flag(entry);
      test_total++;
      if (ambiguous) test_ambiguous++;
      if (missed) {
        miss_total++;
        if (ambiguous) miss_ambiguous++;
      }
    }
  };
  tally(report.correct, false);
  tally(report.false_passives, true);
  tally(report.false_actives, true);

  Enrichment result;
  if (miss_total == 0 || test_ambiguous == 0 || test_total == 0) {
    return result;  // undefined, flagged
  }
  const double miss_share =
      static_cast<double>(miss_ambiguous) / static_cast<double>(miss_total);
  const double test_share =
      static_cast<double>(test_ambiguous) / static_cast<double>(test_total);
  result.value = miss_share / test_share;
  result.defined = true;
  return result;
}

void write_ground_truth(std::ostream& out, const GroundTruth& truth,
                        char delimiter) {
  out << csv_join({"verb", "flag"}, delimiter) << "\n";
  for (const auto& [verb, ambiguous] : truth.ambiguous_by_verb) {
    out << csv_join({verb, ambiguous ? "ambiguous" : "clean"}, delimiter)
        << "\n";
  }
}

GroundTruth read_ground_truth(std::istream& in, char delimiter) {
  CsvReader reader(in, delimiter);
  const auto header = reader.next_row();
  if (!header || header->size() < 2 || (*header)[0] != "verb") {
    throw SchemaError("ground truth file must start with a verb,flag header");
  }
  GroundTruth truth;
  while (auto row = reader.next_row()) {
    if (row->size() != 2) {
      throw SchemaError("ground truth row " +
                        std::to_string(reader.row_number()) +
                        ": expected 2 fields");
    }
    const std::string& flag = (*row)[1];
    if (flag != "ambiguous" && flag != "clean") {
      throw DataError("ground truth row " +
                      std::to_string(reader.row_number()) +
                      ": flag must be clean or ambiguous");
    }
    truth.ambiguous_by_verb[(*row)[0]] = flag == "ambiguous";
  }
  return truth;
}

}  // namespace fsieve
