#include "fsieve/sample_corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fsieve/errors.hpp"
#include "fsieve/rng.hpp"

namespace fsieve {

namespace {

// ---------------------------------------------------------------------------
// Shape constants. The corpus totals and the usage counts of the pinned verbs
// are fixed; the pair counts and mixing rates below were calibrated so that a
// k=1 run over many seeds lands where the replication bands expect it
// (accuracy in the mid 0.5s, actives noticeably easier than passives, larger
// k not improving matters).
// ---------------------------------------------------------------------------

constexpr std::uint64_t kSeed = 0x7A3F9B2C51E6D402ULL;

constexpr int kTotalVerbs = 747;
constexpr int kTotalUsages = 3439;
constexpr int kActiveRows = 411;

// Verb pairs that share a dominant trait tuple. Same-voice pairs give the
// nearest-neighbor rank genuine local signal; cross-voice pairs plant the
// ambiguous cases that end up in the failure lists.
constexpr int kActiveActivePairs = 140;
constexpr int kActivePassivePairs = 66;
constexpr int kPassivePassivePairs = 0;

// Paired verbs need at least two usages to bind (single-usage profiles
// collapse into exact-tie groups where pairing cannot matter), so the
// usage-one stratum is built from singletons alone. Its voice mix is forced
// to match the corpus-wide active share to keep that stratum's
// neighborhoods unbiased.
constexpr int kUsageOneActives = 33;
constexpr int kUsageOnePassives = 27;

constexpr int kWorks = 500;
constexpr int kMaxRestUsage = 22;  // keeps the pinned top-10 strictly on top
constexpr double kGeometricP = 0.32;

constexpr double kAlphaPair = 0.86;    // record-level adherence to the tuple
constexpr double kAlphaSingle = 0.82;
constexpr double kAlphaTop = 0.80;
constexpr double kAlphaShadow = 0.88;

using Tuple = std::array<std::string, kCategoryCount>;

struct ValueWeight {
  const char* value;
  double weight;
};

// Shared trait-value marginal. Deliberately identical for both voices: all
// label signal in this corpus is carried by tuple sharing between verbs, not
// by a global trait tilt, so that deep neighbor ranks stay uninformative.
const std::vector<ValueWeight>& background(Category category) {
  static const std::array<std::vector<ValueWeight>, kCategoryCount> tables = {{
      {{"Female", 0.27}, {"Male", 0.38}, {"Genderqueer", 0.02}, {"Unknown", 0.33}},
      {{"Human", 0.52},
       {"Robot", 0.08},
       {"Cyborg", 0.06},
       {"AI", 0.08},
       {"Animal", 0.03},
       {"Fictional", 0.05},
       {"Unknown", 0.18}},
      {{"White", 0.30}, {"Asian", 0.11}, {"PoC", 0.12}, {"Unknown", 0.47}},
      {{"Child", 0.04},
       {"Young adult", 0.12},
       {"Adult", 0.47},
       {"Elderly", 0.03},
       {"Unknown", 0.34}},
      {{"Heterosexual", 0.17},
       {"Homosexual", 0.04},
       {"Bisexual", 0.03},
       {"Unknown", 0.76}},
  }};
  return tables[static_cast<std::size_t>(category)];
}

std::string pick_weighted(Xoshiro256StarStar& rng,
                          const std::vector<ValueWeight>& table) {
  double u = rng.next_unit();
  for (const auto& entry : table) {
    if (u < entry.weight) return entry.value;
    u -= entry.weight;
  }
  return table.back().value;
}

// Dominant tuples are drawn uniformly over the vocabulary, not from the
// skewed background: with the background weights a handful of tuples would
// collect dozens of verbs each and paired verbs would lose their partners
// inside those crowds. Only the off-tuple record draws use the background,
// so the corpus-wide marginals end up flatter than the background tables.
Tuple draw_tuple(Xoshiro256StarStar& rng) {
  Tuple tuple;
  for (Category category : kCategories) {
    const auto& values = background(category);
    tuple[static_cast<std::size_t>(category)] =
        values[rng.next_below(values.size())].value;
  }
  return tuple;
}

// 1 + geometric usage, redrawn until it fits [min_usage, max_usage].
int sample_usage(Xoshiro256StarStar& rng, int min_usage, int max_usage) {
  for (;;) {
    const double u = rng.next_unit();
    const auto draw = 1 + static_cast<int>(std::floor(
                              std::log1p(-u) / std::log1p(-kGeometricP)));
    if (draw >= min_usage && draw <= max_usage) return draw;
  }
}

// Pronounceable synthetic verb, suffixed by voice ("-ing" active, "-ed"
// passive). Collisions with already-used names are redrawn.
std::string make_name(Xoshiro256StarStar& rng, Voice voice,
                      std::set<std::string>& used) {
  static const std::vector<std::string> onsets = {
      "b",  "c",  "d",  "f",  "g",  "h",  "j",  "k",  "l",  "m",
      "n",  "p",  "r",  "s",  "t",  "v",  "w",  "br", "ch", "cl",
      "cr", "dr", "fl", "gr", "pl", "pr", "sc", "sh", "sk", "sl",
      "sm", "sn", "sp", "st", "str", "sw", "th", "tr", "tw"};
  static const std::vector<std::string> nuclei = {
      "a", "e", "i", "o", "u", "ai", "ea", "ee", "oa", "oo", "ou"};
  static const std::vector<std::string> codas = {
      "",  "b", "ck", "d",  "g",  "l",  "m",  "n",  "p",
      "r", "s", "t",  "st", "nk", "mp", "nd", "rm", "rt"};
  for (;;) {
    std::string stem;
    const std::size_t syllables = 1 + rng.next_below(2);
    for (std::size_t s = 0; s < syllables; ++s) {
      stem += onsets[rng.next_below(onsets.size())];
      stem += nuclei[rng.next_below(nuclei.size())];
      if (s + 1 == syllables) stem += codas[rng.next_below(codas.size())];
    }
    std::string name = stem + (voice == Voice::Active ? "ing" : "ed");
    if (used.insert(name).second) return name;
  }
}

enum class TupleSource { TopActive, TopPassive, Own };

struct PinnedVerb {
  const char* verb;
  Voice voice;
  int usage;
  TupleSource source;
  bool shadowed;  // gets a same-tuple, opposite-voice partner verb
};

// The frequent verbs the replication bands talk about. "scanned" rides the
// active top cluster (so its neighbors vote Active) and "learning" rides the
// passive one; the shadowed verbs get a close opposite-voice partner, which
// is what keeps them showing up in the failure lists.
const std::array<PinnedVerb, 28>& pinned_verbs() {
  static const std::array<PinnedVerb, 28> table = {{
      {"scanned", Voice::Passive, 61, TupleSource::TopActive, false},
      {"searching", Voice::Active, 43, TupleSource::TopActive, false},
      {"analysed", Voice::Passive, 42, TupleSource::TopPassive, false},
      {"analysing", Voice::Active, 39, TupleSource::TopActive, false},
      {"classified", Voice::Passive, 38, TupleSource::TopPassive, false},
      {"hacking", Voice::Active, 38, TupleSource::TopActive, false},
      {"investigating", Voice::Active, 28, TupleSource::TopActive, false},
      {"learning", Voice::Active, 27, TupleSource::TopPassive, false},
      {"helping", Voice::Active, 25, TupleSource::TopActive, false},
      {"hunted", Voice::Passive, 23, TupleSource::Own, false},
      {"protecting", Voice::Active, 19, TupleSource::Own, true},
      {"manipulating", Voice::Active, 18, TupleSource::Own, true},
      {"attacking", Voice::Active, 17, TupleSource::Own, true},
      {"spying", Voice::Active, 17, TupleSource::Own, true},
      {"exposed", Voice::Passive, 12, TupleSource::Own, true},
      {"projected", Voice::Passive, 12, TupleSource::Own, true},
      {"destroying", Voice::Active, 11, TupleSource::Own, true},
      {"revealing", Voice::Active, 11, TupleSource::Own, true},
      {"targeted", Voice::Passive, 11, TupleSource::Own, true},
      {"deceived", Voice::Passive, 9, TupleSource::Own, true},
      {"running", Voice::Active, 9, TupleSource::Own, true},
      {"chasing", Voice::Active, 8, TupleSource::Own, true},
      {"oppressed", Voice::Passive, 7, TupleSource::Own, true},
      {"assisted", Voice::Passive, 6, TupleSource::Own, true},
      {"copied", Voice::Passive, 6, TupleSource::Own, true},
      {"explaining", Voice::Active, 6, TupleSource::Own, true},
      {"questioned", Voice::Passive, 6, TupleSource::Own, true},
      {"alerted", Voice::Passive, 3, TupleSource::Own, true},
  }};
  return table;
}

struct VerbSpec {
  std::string verb;
  Voice voice = Voice::Active;
  int usage = 1;
  int min_usage = 1;
  Tuple tuple;
  double alpha = kAlphaSingle;
  bool adjustable = false;  // participates in the usage-sum fix-up
  bool trans_carrier = false;
};

Genre genre_of_work(int work) {
  if (work < 100) return Genre::Artwork;
  if (work < 240) return Genre::Game;
  if (work < 340) return Genre::Movie;
  return Genre::Novel;
}

std::string work_name(int work) {
  std::ostringstream out;
  out << "work_" << (work + 1 < 100 ? (work + 1 < 10 ? "00" : "0") : "")
      << (work + 1);
  return out.str();
}

}  // namespace

std::vector<ActionRecord> make_sample_records() {
  Xoshiro256StarStar rng(kSeed);

  std::set<std::string> used_names;
  for (const auto& pinned : pinned_verbs()) used_names.insert(pinned.verb);

  Tuple top_active = draw_tuple(rng);
  Tuple top_passive = draw_tuple(rng);
  while (top_passive == top_active) top_passive = draw_tuple(rng);

  std::vector<VerbSpec> verbs;
  verbs.reserve(kTotalVerbs);

  int active_rows = 0;
  int passive_rows = 0;
  const auto push = [&](VerbSpec spec) {
    (spec.voice == Voice::Active ? active_rows : passive_rows)++;
    verbs.push_back(std::move(spec));
  };

  // Pinned verbs and their shadows.
  for (const auto& pinned : pinned_verbs()) {
    VerbSpec spec;
    spec.verb = pinned.verb;
    spec.voice = pinned.voice;
    spec.usage = pinned.usage;
    switch (pinned.source) {
      case TupleSource::TopActive: spec.tuple = top_active; break;
      case TupleSource::TopPassive: spec.tuple = top_passive; break;
      case TupleSource::Own: spec.tuple = draw_tuple(rng); break;
    }
    spec.alpha = pinned.shadowed ? kAlphaShadow : kAlphaTop;
    push(spec);
    if (pinned.shadowed) {
      VerbSpec shadow;
      shadow.voice =
          pinned.voice == Voice::Active ? Voice::Passive : Voice::Active;
      shadow.verb = make_name(rng, shadow.voice, used_names);
      const int delta = static_cast<int>(rng.next_below(3)) - 1;
      shadow.usage = std::clamp(pinned.usage + delta, 2, kMaxRestUsage);
      shadow.tuple = verbs.back().tuple;
      shadow.alpha = kAlphaShadow;
      push(shadow);
    }
  }

  // Paired rest verbs.
  const auto push_pair = [&](Voice first, Voice second) {
    const Tuple tuple = draw_tuple(rng);
    const int usage = sample_usage(rng, 2, kMaxRestUsage);
    const int delta = static_cast<int>(rng.next_below(3)) - 1;
    for (int member = 0; member < 2; ++member) {
      VerbSpec spec;
      spec.voice = member == 0 ? first : second;
      spec.verb = make_name(rng, spec.voice, used_names);
      spec.usage = member == 0 ? usage
                               : std::clamp(usage + delta, 2, kMaxRestUsage);
      spec.min_usage = 2;
      spec.tuple = tuple;
      spec.alpha = kAlphaPair;
      spec.adjustable = true;
      push(spec);
    }
  };
  for (int i = 0; i < kActiveActivePairs; ++i) {
    push_pair(Voice::Active, Voice::Active);
  }
  for (int i = 0; i < kActivePassivePairs; ++i) {
    push_pair(Voice::Active, Voice::Passive);
  }
  for (int i = 0; i < kPassivePassivePairs; ++i) {
    push_pair(Voice::Passive, Voice::Passive);
  }

  // Singleton rest verbs fill the remaining row budget per voice.
  const int singles_active = kActiveRows - active_rows;
  const int singles_passive = (kTotalVerbs - kActiveRows) - passive_rows;
  if (singles_active < 0 || singles_passive < 0) {
    throw DataError("sample corpus shape: pair counts exceed the row budget");
  }
  if (singles_active < kUsageOneActives || singles_passive < kUsageOnePassives) {
    throw DataError("sample corpus shape: not enough singletons for the "
                    "usage-one stratum");
  }
  int trans_carriers = 0;
  int active_emitted = 0;
  int passive_emitted = 0;
  for (int i = 0; i < singles_active + singles_passive; ++i) {
    VerbSpec spec;
    spec.voice = i < singles_active ? Voice::Active : Voice::Passive;
    spec.verb = make_name(rng, spec.voice, used_names);
    int& emitted =
        spec.voice == Voice::Active ? active_emitted : passive_emitted;
    const int usage_one_quota =
        spec.voice == Voice::Active ? kUsageOneActives : kUsageOnePassives;
    if (emitted < usage_one_quota) {
      spec.usage = 1;  // pinned stratum; not adjustable
    } else {
      spec.usage = sample_usage(rng, 2, kMaxRestUsage);
      spec.min_usage = 2;
      spec.adjustable = true;
    }
    emitted++;
    spec.tuple = draw_tuple(rng);
    if (spec.voice == Voice::Active && trans_carriers < 3) {
      spec.trans_carrier = true;  // three explicitly trans characters
      trans_carriers++;
    }
    push(spec);
  }

  // Nudge the adjustable usages until the corpus total is exact.
  long long total = 0;
  for (const auto& spec : verbs) total += spec.usage;
  std::vector<std::size_t> adjustable;
  for (std::size_t i = 0; i < verbs.size(); ++i) {
    if (verbs[i].adjustable) adjustable.push_back(i);
  }
  while (total != kTotalUsages) {
    VerbSpec& spec = verbs[adjustable[rng.next_below(adjustable.size())]];
    if (total > kTotalUsages && spec.usage > spec.min_usage) {
      spec.usage--;
      total--;
    } else if (total < kTotalUsages && spec.usage < kMaxRestUsage) {
      spec.usage++;
      total++;
    }
  }

  // Emit interaction records.
  std::vector<ActionRecord> records;
  records.reserve(kTotalUsages);
  for (const auto& spec : verbs) {
    for (int r = 0; r < spec.usage; ++r) {
      ActionRecord record;
      record.verb = spec.verb;
      record.voice = spec.voice;
      const int work = static_cast<int>(rng.next_below(kWorks));
      record.work_id = work_name(work);
      record.genre = genre_of_work(work);
      for (Category category : kCategories) {
        const auto c = static_cast<std::size_t>(category);
        record.traits[c] = rng.next_unit() < spec.alpha
                               ? spec.tuple[c]
                               : pick_weighted(rng, background(category));
      }
      if (spec.trans_carrier && r == 0) {
        record.trait(Category::Gender) = "Trans woman";
      }
      records.push_back(std::move(record));
    }
  }

  // Present a slice of the analysis vocabulary in source terms; the recode
  // map folds these back. Every record keeps its analysis meaning.
  static const std::vector<ValueWeight> race_sources = {{"Black", 0.35},
                                                        {"Indigenous", 0.20},
                                                        {"Latinx", 0.20},
                                                        {"Middle Eastern", 0.15},
                                                        {"PoC", 0.10}};
  static const std::vector<ValueWeight> gender_sources = {{"Non-binary", 0.60},
                                                          {"Genderqueer", 0.40}};
  for (auto& record : records) {
    if (record.trait(Category::RaceEthnicity) == "PoC") {
      record.trait(Category::RaceEthnicity) = pick_weighted(rng, race_sources);
    }
    if (record.trait(Category::Gender) == "Genderqueer") {
      record.trait(Category::Gender) = pick_weighted(rng, gender_sources);
    }
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const ActionRecord& a, const ActionRecord& b) {
                     return a.work_id < b.work_id;
                   });
  return records;
}

std::string render_sample_actions_csv() {
  std::ostringstream out;
  write_corpus(out, make_sample_records());
  return out.str();
}

std::string sample_recode_conf() {
  return
      "# Folds source annotation vocabulary into the analysis vocabulary.\n"
      "# Unlisted values pass through unchanged.\n"
      "\n"
      "[gender]\n"
      "Non-binary = Genderqueer\n"
      "\n"
      "[race_ethnicity]\n"
      "Black = PoC\n"
      "Indigenous = PoC\n"
      "Latinx = PoC\n"
      "Middle Eastern = PoC\n";
}

}  // namespace fsieve
