#include "fsieve/distribution.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "fsieve/csv.hpp"
#include "fsieve/errors.hpp"

namespace fsieve {

namespace {

constexpr const char* kAllGenres = "All";
constexpr std::size_t kBarWidth = 40;

struct Tally {
  std::int64_t active = 0;
  std::int64_t passive = 0;
};

DistributionRow make_row(Category category, const std::string& value,
                         const std::string& genre, const Tally& tally) {
  DistributionRow row;
  row.category = category;
  row.value = value;
  row.genre = genre;
  row.active_uses = tally.active;
  row.passive_uses = tally.passive;
  const std::int64_t total = tally.active + tally.passive;
  row.has_uses = total > 0;
  row.active_proportion =
      total > 0 ? static_cast<double>(tally.active) / static_cast<double>(total)
                : 0.0;
  return row;
}

}  // namespace

std::vector<DistributionRow> trait_voice_distribution(
    const std::vector<ActionRecord>& records, bool by_genre) {
  if (records.empty()) throw DataError("empty corpus");

  std::set<std::string> genres;
  if (by_genre) {
    for (const auto& record : records) {
      genres.insert(std::string(genre_name(record.genre)));
    }
  }

  std::vector<DistributionRow> rows;
  for (Category category : kCategories) {
    // value -> genre -> tally; every observed value gets a row per genre,
    // zero-use cells included (emitted flagged, proportion 0).
    std::map<std::string, std::map<std::string, Tally>> cells;
    for (const auto& record : records) {
      auto& by_genre_tally = cells[record.trait(category)];
      for (const std::string& genre : genres) by_genre_tally.try_emplace(genre);
      Tally& all = by_genre_tally[kAllGenres];
      const bool active = record.voice == Voice::Active;
      (active ? all.active : all.passive)++;
      if (by_genre) {
        Tally& genre_tally =
            by_genre_tally[std::string(genre_name(record.genre))];
        (active ? genre_tally.active : genre_tally.passive)++;
      }
    }
    // Make the genre inventory identical for every value of the category.
    for (auto& [value, by_genre_tally] : cells) {
      for (const std::string& genre : genres) by_genre_tally.try_emplace(genre);
    }
    for (const auto& [value, by_genre_tally] : cells) {
      const auto all_it = by_genre_tally.find(kAllGenres);
      rows.push_back(make_row(category, value, kAllGenres,
                              all_it == by_genre_tally.end() ? Tally{}
                                                             : all_it->second));
      for (const auto& [genre, tally] : by_genre_tally) {
        if (genre == kAllGenres) continue;
        rows.push_back(make_row(category, value, genre, tally));
      }
    }
  }
  return rows;
}

void write_distribution(std::ostream& out,
                        const std::vector<DistributionRow>& rows,
                        char delimiter) {
  out << csv_join({"trait_category", "trait_value", "genre", "active_uses",
                   "passive_uses", "active_proportion"},
                  delimiter)
      << "\n";
  for (const auto& row : rows) {
    std::ostringstream proportion;
    proportion << std::fixed << std::setprecision(4) << row.active_proportion;
    out << csv_join({std::string(category_name(row.category)), row.value,
                     row.genre, std::to_string(row.active_uses),
                     std::to_string(row.passive_uses), proportion.str()},
                    delimiter)
        << "\n";
  }
}

std::string render_distribution_markdown(
    const std::vector<DistributionRow>& rows) {
  std::ostringstream out;
  out << "# Active vs. passive usage by character trait\n";
  Category current = Category::Gender;
  bool first_section = true;
  std::string current_genre;
  for (const auto& row : rows) {
    if (first_section || row.category != current) {
      out << "\n## " << category_name(row.category) << "\n\n";
      current = row.category;
      current_genre.clear();
      first_section = false;
    }
    if (row.genre != current_genre) {
      current_genre = row.genre;
    }
    const auto filled = static_cast<std::size_t>(
        row.active_proportion * static_cast<double>(kBarWidth) + 0.5);
    std::string bar;
    for (std::size_t i = 0; i < kBarWidth; ++i) {
      bar += i < filled ? "█" : "░";
    }
    out << "- " << row.value << " [" << row.genre << "] " << bar << " ";
    if (row.has_uses) {
      out << std::fixed << std::setprecision(4) << row.active_proportion;
      out << " (" << row.active_uses << " active / " << row.passive_uses
          << " passive)";
    } else {
      out << "no uses";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace fsieve
