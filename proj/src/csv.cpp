#include "fsieve/csv.hpp"

#include <istream>

namespace fsieve {

CsvReader::CsvReader(std::istream& in, char delimiter)
    : in_(in), delimiter_(delimiter) {}

std::optional<std::vector<std::string>> CsvReader::next_row() {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool saw_anything = false;

  int ch;
  while ((ch = in_.get()) != std::istream::traits_type::eof()) {
    const char c = static_cast<char>(ch);
    if (in_quotes) {
      if (c == '"') {
        if (in_.peek() == '"') {
          field.push_back('"');
          in_.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      saw_anything = true;
    } else if (c == delimiter_) {
      fields.push_back(std::move(field));
      field.clear();
      saw_anything = true;
    } else if (c == '\n') {
      if (!saw_anything && field.empty() && fields.empty()) {
        continue;  // skip blank lines
      }
      fields.push_back(std::move(field));
      ++row_number_;
      return fields;
    } else if (c == '\r') {
      // swallowed; the '\n' that follows ends the row
    } else {
      field.push_back(c);
      saw_anything = true;
    }
  }

  if (!saw_anything && field.empty() && fields.empty()) {
    return std::nullopt;
  }
  fields.push_back(std::move(field));
  ++row_number_;
  return fields;
}

std::string csv_quote(const std::string& field, char delimiter) {
  const bool needs_quotes =
      field.find_first_of("\"\n\r") != std::string::npos ||
      field.find(delimiter) != std::string::npos;
  if (!needs_quotes) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted.push_back('"');
    quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

std::string csv_join(const std::vector<std::string>& fields, char delimiter) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) line.push_back(delimiter);
    line += csv_quote(fields[i], delimiter);
  }
  return line;
}

}  // namespace fsieve
