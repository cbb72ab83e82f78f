#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fsieve/corpus.hpp"

namespace fsieve {

// Ordered (category, value) pairs observed in a corpus: categories in the
// fixed gender/species/race_ethnicity/age/sexuality order, values
// lexicographic within a category. Deterministic for a given corpus.
struct ColumnSchema {
  std::vector<std::pair<Category, std::string>> columns;

  std::size_t size() const { return columns.size(); }
  std::optional<std::size_t> find(Category category,
                                  const std::string& value) const;

  // Export column name, "category=value".
  static std::string column_name(const std::pair<Category, std::string>& col);
};

// One contingency-table row: a distinct (verb, voice) with per-trait-value
// interaction counts.
struct VerbProfile {
  std::string verb;
  Voice label = Voice::Active;
  std::vector<std::int64_t> features;  // aligned to ColumnSchema
  std::int64_t usage_count = 0;        // contributing interaction records
};

struct ContingencyTable {
  ColumnSchema schema;
  std::vector<VerbProfile> rows;  // ordered by (verb, voice)
};

// Throws DataError on an empty corpus.
ColumnSchema build_schema(const std::vector<ActionRecord>& records);

// One row per distinct (verb, voice); features count contributing records
// per trait value. Permutation-invariant in the record order. Throws
// DataError naming any trait value absent from the schema.
ContingencyTable build_table(const std::vector<ActionRecord>& records,
                             const ColumnSchema& schema);

// Delimited export: verb, label, usage_count, then one column per schema
// pair named "category=value".
void write_table(std::ostream& out, const ContingencyTable& table,
                 char delimiter = ',');

}  // namespace fsieve
