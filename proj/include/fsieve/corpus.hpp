#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fsieve {

// Whether the character performs the action ("scanning") or is acted upon
// ("scanned"). This is annotated metadata, never inferred from the verb's
// surface form.
enum class Voice { Active, Passive };

enum class Genre { Artwork, Game, Movie, Novel, Unknown };

// The five character-trait categories, in the fixed order used everywhere
// (column schemas, exports, stats).
enum class Category : std::size_t {
  Gender = 0,
  Species = 1,
  RaceEthnicity = 2,
  Age = 3,
  Sexuality = 4,
};

inline constexpr std::size_t kCategoryCount = 5;

inline constexpr std::array<Category, kCategoryCount> kCategories = {
    Category::Gender, Category::Species, Category::RaceEthnicity,
    Category::Age, Category::Sexuality};

// Sentinel for absent/blank trait values. Counted as a real column value so
// that per-category sums always equal usage counts.
inline constexpr const char* kUnknownValue = "Unknown";

std::string_view category_name(Category category);
std::optional<Category> category_from_name(std::string_view name);

std::string_view voice_name(Voice voice);
std::string_view genre_name(Genre genre);

// One character-verb interaction from the machine vision corpus.
struct ActionRecord {
  std::string work_id;
  Genre genre = Genre::Unknown;
  std::string verb;   // lowercase, trimmed, non-empty
  Voice voice = Voice::Active;
  std::array<std::string, kCategoryCount> traits;  // indexed by Category

  const std::string& trait(Category category) const {
    return traits[static_cast<std::size_t>(category)];
  }
  std::string& trait(Category category) {
    return traits[static_cast<std::size_t>(category)];
  }
};

// Maps canonical field names to the source file's column names. Defaults
// match the canonical corpus format. work_id/genre columns are optional in
// the source; everything else must exist.
struct ColumnConfig {
  std::string verb = "verb";
  std::string voice = "voice";
  std::array<std::string, kCategoryCount> traits = {
      "gender", "species", "race_ethnicity", "age", "sexuality"};
  std::string work_id = "work_id";
  std::string genre = "genre";

  // Remap one canonical field ("verb", "voice", "gender", ...) to a source
  // column name. Throws ConfigError for unknown fields or empty names.
  void set(std::string_view field, std::string source_column);
};

// Per-category source-value -> canonical-value mapping, e.g. several
// portrayed ethnicities -> "PoC". Unmapped values pass through unchanged.
class RecodeMap {
 public:
  // INI-style file: one [section] per trait category, "from = to" entries,
  // '#' or ';' comments. Unknown sections are a ConfigError.
  static RecodeMap load(const std::string& path);
  static RecodeMap parse(std::istream& in, const std::string& origin = "<stream>");

  void add(Category category, std::string from, std::string to);

  // The canonical value for `value`, or `value` itself when unmapped.
  const std::string& apply(Category category, const std::string& value) const;

  bool empty() const;
  std::size_t size() const;

 private:
  std::array<std::map<std::string, std::string>, kCategoryCount> by_category_;
};

struct CorpusStats {
  std::size_t unique_verb_count = 0;   // distinct (verb, voice) pairs
  std::size_t total_usage_count = 0;   // number of records
  // Per category: (value, usage count), lexicographically ordered by value.
  std::array<std::vector<std::pair<std::string, std::size_t>>, kCategoryCount>
      value_counts;

  // Stable text rendering; equal corpora produce identical bytes.
  std::string to_text() const;
};

// Reads long-format interaction records from delimited text with a header
// row. Verbs are lowercased and trimmed; blank trait cells become "Unknown".
// Throws SchemaError when a configured column is missing or a row has the
// wrong field count, DataError for malformed voice/genre values and empty
// verbs (with the row number).
std::vector<ActionRecord> parse_actions(std::istream& in,
                                        const ColumnConfig& columns = {},
                                        char delimiter = ',');

// Applies the recode map to every trait value. Pure; preserves order and
// count; idempotent whenever map targets are fixed points.
std::vector<ActionRecord> recode_traits(std::vector<ActionRecord> records,
                                        const RecodeMap& map);

// Counts as defined on CorpusStats. Throws DataError on an empty corpus.
CorpusStats validate_corpus(const std::vector<ActionRecord>& records);

// Convenience: open + parse. Throws ConfigError if the file cannot be read.
std::vector<ActionRecord> read_corpus_file(const std::string& path,
                                           const ColumnConfig& columns = {},
                                           char delimiter = ',');

// Canonical corpus format: header work_id,genre,verb,voice,gender,species,
// race_ethnicity,age,sexuality in that fixed order.
void write_corpus(std::ostream& out, const std::vector<ActionRecord>& records,
                  char delimiter = ',');

}  // namespace fsieve
