#include <doctest.h>

#include <sstream>

#include "fsieve/csv.hpp"

using namespace fsieve;

TEST_CASE("csv reader handles quoting, CRLF, and blank lines") {
  std::istringstream in(
      "a,b,c\r\n"
      "1,\"two, with comma\",3\n"
      "\n"
      "\"he said \"\"hi\"\"\",,\n");
  CsvReader reader(in);

  auto header = reader.next_row();
  REQUIRE(header.has_value());
  CHECK(*header == std::vector<std::string>{"a", "b", "c"});

  auto row1 = reader.next_row();
  REQUIRE(row1.has_value());
  CHECK((*row1)[1] == "two, with comma");

  auto row2 = reader.next_row();
  REQUIRE(row2.has_value());
  CHECK((*row2)[0] == "he said \"hi\"");
  CHECK((*row2)[1].empty());
  CHECK(reader.row_number() == 3);  // blank line did not count

  CHECK_FALSE(reader.next_row().has_value());
}

TEST_CASE("csv reader supports alternate delimiters") {
  std::istringstream in("x;y\n1;2\n");
  CsvReader reader(in, ';');
  REQUIRE(reader.next_row().has_value());
  auto row = reader.next_row();
  REQUIRE(row.has_value());
  CHECK(*row == std::vector<std::string>{"1", "2"});
}

TEST_CASE("csv quoted newline stays inside one record") {
  std::istringstream in("\"line\nbreak\",2\n");
  CsvReader reader(in);
  auto row = reader.next_row();
  REQUIRE(row.has_value());
  CHECK((*row)[0] == "line\nbreak");
  CHECK((*row)[1] == "2");
}

TEST_CASE("csv_join round-trips through the reader") {
  const std::vector<std::string> fields = {"plain", "with,comma", "with\"quote",
                                           ""};
  std::istringstream in(csv_join(fields, ',') + "\n");
  CsvReader reader(in);
  auto row = reader.next_row();
  REQUIRE(row.has_value());
  CHECK(*row == fields);
}
