#include <doctest.h>

#include "fsieve/errors.hpp"
#include "fsieve/mining.hpp"
#include "fsieve/report.hpp"
#include "fsieve/rng.hpp"

using namespace fsieve;

namespace {

FailureReport sample_report() {
  FailureReport report;
  report.confusion = {72, 39, 61, 34};
  report.correct = {{"searching", 43}, {"analysed", 42}};
  report.false_passives = {{"learning", 27}, {"protecting", 19}};
  report.false_actives = {{"scanned", 61}, {"exposed", 12}};
  return report;
}

FailureReport random_report(Xoshiro256StarStar& rng) {
  FailureReport report;
  report.confusion = {rng.next_below(50), rng.next_below(50),
                      rng.next_below(50), rng.next_below(50)};
  const auto fill = [&](std::vector<RankedVerb>& list) {
    const std::size_t n = rng.next_below(12);
    for (std::size_t i = 0; i < n; ++i) {
      list.push_back({"verb" + std::to_string(rng.next_below(100)),
                      static_cast<std::int64_t>(rng.next_below(60))});
    }
  };
  fill(report.correct);
  fill(report.false_passives);
  fill(report.false_actives);
  return report;
}

}  // namespace

TEST_CASE("markdown report lists entries as verb (usage)") {
  const auto markdown = render_report(sample_report(), ReportFormat::Markdown, 10);
  CHECK(markdown.find("- learning (27)") != std::string::npos);
  CHECK(markdown.find("- scanned (61)") != std::string::npos);
  CHECK(markdown.find("accuracy 0.515") != std::string::npos);
  // learning leads the false passives
  const auto section = markdown.find("False passives");
  const auto first_entry = markdown.find("- ", section);
  CHECK(markdown.substr(first_entry, 15) == "- learning (27)");
}

TEST_CASE("markdown report renders empty sections as none") {
  FailureReport report;
  report.confusion = {2, 0, 0, 1};
  report.correct = {{"a", 2}, {"b", 1}, {"c", 1}};
  const auto markdown = render_report(report, ReportFormat::Markdown, 10);
  CHECK(markdown.find("none") != std::string::npos);
}

TEST_CASE("json report round-trips") {
  Xoshiro256StarStar rng(167);
  for (int trial = 0; trial < 100; ++trial) {
    const auto report = random_report(rng);
    const auto parsed =
        parse_report_json(render_report(report, ReportFormat::Json, 10));
    CHECK(parsed == report);
  }
}

TEST_CASE("json rendering is byte-deterministic") {
  const auto a = render_report(sample_report(), ReportFormat::Json, 10);
  const auto b = render_report(sample_report(), ReportFormat::Json, 10);
  CHECK(a == b);
}

TEST_CASE("csv report carries the full lists") {
  const auto csv = render_report(sample_report(), ReportFormat::Csv, 1);
  CHECK(csv.find("correct,1,searching,43") != std::string::npos);
  CHECK(csv.find("false_passive,2,protecting,19") != std::string::npos);
  CHECK(csv.find("false_active,1,scanned,61") != std::string::npos);
}

TEST_CASE("parse_report_json rejects malformed input") {
  CHECK_THROWS_AS(parse_report_json("not json"), DataError);
  CHECK_THROWS_AS(parse_report_json("{}"), DataError);
}

TEST_CASE("parse_report_format accepts the documented names") {
  CHECK(parse_report_format("json") == ReportFormat::Json);
  CHECK(parse_report_format("csv") == ReportFormat::Csv);
  CHECK(parse_report_format("md") == ReportFormat::Markdown);
  CHECK(parse_report_format("markdown") == ReportFormat::Markdown);
  CHECK_THROWS_AS(parse_report_format("yaml"), ConfigError);
}
