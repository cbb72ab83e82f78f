#pragma once

#include <string>

#include "fsieve/mining.hpp"

namespace fsieve {

enum class ReportFormat { Json, Csv, Markdown };

// Accepts "json", "csv", "md" / "markdown". Throws ConfigError otherwise.
ReportFormat parse_report_format(const std::string& name);
std::string report_format_name(ReportFormat format);

// Renders a failure report. Markdown shows the confusion matrix, derived
// ratios (3 decimals), and the top-N correct / false-passive / false-active
// lists as "verb (usage_count)" entries; empty sections render "none". JSON
// and CSV always carry the full lists, and JSON round-trips through
// parse_report_json.
std::string render_report(const FailureReport& report, ReportFormat format,
                          std::size_t top_n = 10);

FailureReport parse_report_json(const std::string& text);

}  // namespace fsieve
