#include "fsieve/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "fsieve/csv.hpp"
#include "fsieve/errors.hpp"

namespace fsieve {

namespace {

std::string trim(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
  return std::string(raw.substr(begin, end - begin));
}

std::string lower(std::string value) {
  std::transform(value.begin(), value.end(), value.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return value;
}

Voice parse_voice_cell(const std::string& raw, std::size_t row) {
  const std::string value = lower(trim(raw));
  if (value == "active") return Voice::Active;
  if (value == "passive") return Voice::Passive;
  throw DataError("row " + std::to_string(row) + ": malformed voice value \"" +
                  raw + "\" (expected active or passive)");
}

Genre parse_genre_cell(const std::string& raw, std::size_t row) {
  const std::string value = lower(trim(raw));
  if (value.empty() || value == "unknown") return Genre::Unknown;
  if (value == "artwork" || value == "art") return Genre::Artwork;
  if (value == "game" || value == "videogame" || value == "video game")
    return Genre::Game;
  if (value == "movie" || value == "film") return Genre::Movie;
  if (value == "novel") return Genre::Novel;
  throw DataError("row " + std::to_string(row) + ": malformed genre value \"" +
                  raw + "\"");
}

}  // namespace

std::string_view category_name(Category category) {
  switch (category) {
    case Category::Gender: return "gender";
    case Category::Species: return "species";
    case Category::RaceEthnicity: return "race_ethnicity";
    case Category::Age: return "age";
    case Category::Sexuality: return "sexuality";
  }
  return "unknown";
}

std::optional<Category> category_from_name(std::string_view name) {
  for (Category category : kCategories) {
    if (category_name(category) == name) return category;
  }
  return std::nullopt;
}

std::string_view voice_name(Voice voice) {
  return voice == Voice::Active ? "Active" : "Passive";
}

std::string_view genre_name(Genre genre) {
  switch (genre) {
    case Genre::Artwork: return "Artwork";
    case Genre::Game: return "Game";
    case Genre::Movie: return "Movie";
    case Genre::Novel: return "Novel";
    case Genre::Unknown: return "Unknown";
  }
  return "Unknown";
}

void ColumnConfig::set(std::string_view field, std::string source_column) {
  if (source_column.empty()) {
    throw ConfigError("column mapping for \"" + std::string(field) +
                      "\" is empty");
  }
  if (field == "verb") {
    verb = std::move(source_column);
  } else if (field == "voice") {
    voice = std::move(source_column);
  } else if (field == "work_id") {
    work_id = std::move(source_column);
  } else if (field == "genre") {
    genre = std::move(source_column);
  } else if (auto category = category_from_name(field)) {
    traits[static_cast<std::size_t>(*category)] = std::move(source_column);
  } else {
    throw ConfigError("unknown canonical field \"" + std::string(field) +
                      "\" in column mapping");
  }
}

RecodeMap RecodeMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open recode map: " + path);
  return parse(in, path);
}

RecodeMap RecodeMap::parse(std::istream& in, const std::string& origin) {
  RecodeMap map;
  std::optional<Category> section;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    if (text.front() == '[' && text.back() == ']') {
      const std::string name = trim(text.substr(1, text.size() - 2));
      section = category_from_name(name);
      if (!section) {
        throw ConfigError(origin + ":" + std::to_string(line_number) +
                          ": unknown trait category [" + name + "]");
      }
      continue;
    }
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_number) +
                        ": expected \"from = to\"");
    }
    if (!section) {
      throw ConfigError(origin + ":" + std::to_string(line_number) +
                        ": mapping outside of a [category] section");
    }
    map.add(*section, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
  }
  return map;
}

void RecodeMap::add(Category category, std::string from, std::string to) {
  if (from.empty() || to.empty()) {
    throw ConfigError("recode mappings must not produce empty values");
  }
  by_category_[static_cast<std::size_t>(category)][std::move(from)] =
      std::move(to);
}

const std::string& RecodeMap::apply(Category category,
                                    const std::string& value) const {
  const auto& mapping = by_category_[static_cast<std::size_t>(category)];
  const auto it = mapping.find(value);
  return it == mapping.end() ? value : it->second;
}

bool RecodeMap::empty() const { return size() == 0; }

std::size_t RecodeMap::size() const {
  std::size_t total = 0;
  for (const auto& mapping : by_category_) total += mapping.size();
  return total;
}

std::string CorpusStats::to_text() const {
  std::ostringstream out;
  out << "unique_verbs=" << unique_verb_count
      << " total_usages=" << total_usage_count << "\n";
  for (Category category : kCategories) {
    out << category_name(category) << ":\n";
    for (const auto& [value, count] :
         value_counts[static_cast<std::size_t>(category)]) {
      out << "  " << value << "=" << count << "\n";
    }
  }
  return out.str();
}

std::vector<ActionRecord> parse_actions(std::istream& in,
                                        const ColumnConfig& columns,
                                        char delimiter) {
  CsvReader reader(in, delimiter);
  const auto header = reader.next_row();
  if (!header) throw SchemaError("input is empty; expected a header row");

  std::map<std::string, std::size_t> header_index;
  for (std::size_t i = 0; i < header->size(); ++i) {
    header_index.emplace(trim((*header)[i]), i);
  }

  const auto require = [&](const std::string& name) {
    const auto it = header_index.find(name);
    if (it == header_index.end()) {
      throw SchemaError("missing configured column \"" + name + "\"");
    }
    return it->second;
  };
  const auto optional_column =
      [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = header_index.find(name);
    if (it == header_index.end()) return std::nullopt;
    return it->second;
  };

  const std::size_t verb_col = require(columns.verb);
  const std::size_t voice_col = require(columns.voice);
  std::array<std::size_t, kCategoryCount> trait_cols{};
  for (Category category : kCategories) {
    trait_cols[static_cast<std::size_t>(category)] =
        require(columns.traits[static_cast<std::size_t>(category)]);
  }
  const auto work_col = optional_column(columns.work_id);
  const auto genre_col = optional_column(columns.genre);

  std::vector<ActionRecord> records;
  while (auto row = reader.next_row()) {
    const std::size_t row_number = reader.row_number();
    if (row->size() != header->size()) {
      throw SchemaError("row " + std::to_string(row_number) + ": expected " +
                        std::to_string(header->size()) + " fields, found " +
                        std::to_string(row->size()));
    }
    ActionRecord record;
    record.verb = lower(trim((*row)[verb_col]));
    if (record.verb.empty()) {
      throw DataError("row " + std::to_string(row_number) + ": empty verb");
    }
    record.voice = parse_voice_cell((*row)[voice_col], row_number);
    if (work_col) record.work_id = trim((*row)[*work_col]);
    if (genre_col) record.genre = parse_genre_cell((*row)[*genre_col], row_number);
    for (Category category : kCategories) {
      std::string value =
          trim((*row)[trait_cols[static_cast<std::size_t>(category)]]);
      record.trait(category) = value.empty() ? kUnknownValue : std::move(value);
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<ActionRecord> recode_traits(std::vector<ActionRecord> records,
                                        const RecodeMap& map) {
  for (auto& record : records) {
    for (Category category : kCategories) {
      const std::string& mapped = map.apply(category, record.trait(category));
      if (&mapped != &record.trait(category)) record.trait(category) = mapped;
    }
  }
  return records;
}

CorpusStats validate_corpus(const std::vector<ActionRecord>& records) {
  if (records.empty()) throw DataError("empty corpus");
  CorpusStats stats;
  stats.total_usage_count = records.size();

  std::map<std::pair<std::string, Voice>, std::size_t> rows;
  std::array<std::map<std::string, std::size_t>, kCategoryCount> inventories;
  for (const auto& record : records) {
    rows[{record.verb, record.voice}]++;
    for (Category category : kCategories) {
      inventories[static_cast<std::size_t>(category)][record.trait(category)]++;
    }
  }
  stats.unique_verb_count = rows.size();
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    stats.value_counts[c].assign(inventories[c].begin(), inventories[c].end());
  }
  return stats;
}

std::vector<ActionRecord> read_corpus_file(const std::string& path,
                                           const ColumnConfig& columns,
                                           char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open input file: " + path);
  return parse_actions(in, columns, delimiter);
}

void write_corpus(std::ostream& out, const std::vector<ActionRecord>& records,
                  char delimiter) {
  out << csv_join({"work_id", "genre", "verb", "voice", "gender", "species",
                   "race_ethnicity", "age", "sexuality"},
                  delimiter)
      << "\n";
  for (const auto& record : records) {
    std::vector<std::string> fields = {
        record.work_id, std::string(genre_name(record.genre)), record.verb,
        std::string(voice_name(record.voice))};
    for (Category category : kCategories) {
      fields.push_back(record.trait(category));
    }
    out << csv_join(fields, delimiter) << "\n";
  }
}

}  // namespace fsieve
