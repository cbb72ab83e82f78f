#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fsieve/corpus.hpp"

namespace fsieve {

// Active vs. passive usage for one (trait value, genre) cell. genre is a
// genre name or "All".
struct DistributionRow {
  Category category = Category::Gender;
  std::string value;
  std::string genre;
  std::int64_t active_uses = 0;
  std::int64_t passive_uses = 0;
  double active_proportion = 0.0;  // 0 and flagged when the cell is empty
  bool has_uses = false;
};

// One row per (category, value, "All"), plus per-genre rows when by_genre is
// set. Ordering: category, value, genre ("All" first). Throws DataError on
// an empty corpus.
std::vector<DistributionRow> trait_voice_distribution(
    const std::vector<ActionRecord>& records, bool by_genre);

// Header: trait_category,trait_value,genre,active_uses,passive_uses,
// active_proportion (4 decimals).
void write_distribution(std::ostream& out,
                        const std::vector<DistributionRow>& rows,
                        char delimiter = ',');

// Unicode block-bar rendering for terminal inspection, 40 chars wide.
std::string render_distribution_markdown(
    const std::vector<DistributionRow>& rows);

}  // namespace fsieve
