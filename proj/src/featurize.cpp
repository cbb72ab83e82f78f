#include "fsieve/featurize.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "fsieve/csv.hpp"
#include "fsieve/errors.hpp"

namespace fsieve {

std::optional<std::size_t> ColumnSchema::find(Category category,
                                              const std::string& value) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].first == category && columns[i].second == value) return i;
  }
  return std::nullopt;
}

std::string ColumnSchema::column_name(
    const std::pair<Category, std::string>& col) {
  return std::string(category_name(col.first)) + "=" + col.second;
}

ColumnSchema build_schema(const std::vector<ActionRecord>& records) {
  if (records.empty()) throw DataError("empty corpus");
  std::array<std::set<std::string>, kCategoryCount> values;
  for (const auto& record : records) {
    for (Category category : kCategories) {
      values[static_cast<std::size_t>(category)].insert(record.trait(category));
    }
  }
  ColumnSchema schema;
  for (Category category : kCategories) {
    for (const auto& value : values[static_cast<std::size_t>(category)]) {
      schema.columns.emplace_back(category, value);
    }
  }
  return schema;
}

ContingencyTable build_table(const std::vector<ActionRecord>& records,
                             const ColumnSchema& schema) {
  if (records.empty()) throw DataError("empty corpus");

  std::map<std::pair<Category, std::string>, std::size_t> column_index;
  for (std::size_t i = 0; i < schema.columns.size(); ++i) {
    column_index.emplace(schema.columns[i], i);
  }

  // Row identity is (verb, voice); the map keeps rows in their final order.
  std::map<std::pair<std::string, Voice>, VerbProfile> rows;
  for (const auto& record : records) {
    auto [it, inserted] =
        rows.try_emplace({record.verb, record.voice}, VerbProfile{});
    VerbProfile& row = it->second;
    if (inserted) {
      row.verb = record.verb;
      row.label = record.voice;
      row.features.assign(schema.size(), 0);
    }
    row.usage_count++;
    for (Category category : kCategories) {
      const auto col = column_index.find({category, record.trait(category)});
      if (col == column_index.end()) {
        throw DataError("trait value not in schema: " +
                        ColumnSchema::column_name(
                            {category, record.trait(category)}));
      }
      row.features[col->second]++;
    }
  }

  ContingencyTable table;
  table.schema = schema;
  table.rows.reserve(rows.size());
  for (auto& [key, row] : rows) table.rows.push_back(std::move(row));
  return table;
}

void write_table(std::ostream& out, const ContingencyTable& table,
                 char delimiter) {
  std::vector<std::string> header = {"verb", "label", "usage_count"};
  for (const auto& col : table.schema.columns) {
    header.push_back(ColumnSchema::column_name(col));
  }
  out << csv_join(header, delimiter) << "\n";
  for (const auto& row : table.rows) {
    std::vector<std::string> fields = {row.verb,
                                       std::string(voice_name(row.label)),
                                       std::to_string(row.usage_count)};
    for (std::int64_t count : row.features) {
      fields.push_back(std::to_string(count));
    }
    out << csv_join(fields, delimiter) << "\n";
  }
}

}  // namespace fsieve
