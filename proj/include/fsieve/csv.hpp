#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fsieve {

// Minimal delimited-text reader. Fields may be quoted with '"'; a doubled
// quote inside a quoted field is a literal quote; quoted fields may contain
// delimiters and newlines. CRLF line endings are tolerated. Fully empty
// lines are skipped.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in, char delimiter = ',');

  // Next record, or nullopt at end of input.
  std::optional<std::vector<std::string>> next_row();

  // 1-based number of the last row returned (the header is row 1).
  std::size_t row_number() const { return row_number_; }

 private:
  std::istream& in_;
  char delimiter_;
  std::size_t row_number_ = 0;
};

// Quotes a field iff it contains the delimiter, a quote, or a newline.
std::string csv_quote(const std::string& field, char delimiter);

std::string csv_join(const std::vector<std::string>& fields, char delimiter);

}  // namespace fsieve
