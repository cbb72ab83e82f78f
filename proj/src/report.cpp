#include "fsieve/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "fsieve/csv.hpp"
#include "fsieve/errors.hpp"

namespace fsieve {

namespace {

std::string fixed3(double value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << value;
  return out.str();
}

nlohmann::ordered_json list_to_json(const std::vector<RankedVerb>& list) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& entry : list) {
    array.push_back({{"verb", entry.verb}, {"usage_count", entry.usage_count}});
  }
  return array;
}

std::vector<RankedVerb> list_from_json(const nlohmann::json& array,
                                       const char* name) {
  if (!array.is_array()) {
    throw DataError(std::string("report JSON: \"") + name +
                    "\" must be an array");
  }
  std::vector<RankedVerb> list;
  list.reserve(array.size());
  for (const auto& entry : array) {
    list.push_back({entry.at("verb").get<std::string>(),
                    entry.at("usage_count").get<std::int64_t>()});
  }
  return list;
}

void render_md_list(std::ostringstream& out, const char* title,
                    const std::vector<RankedVerb>& list, std::size_t top_n) {
  out << "## " << title << "\n\n";
  if (list.empty()) {
    out << "none\n\n";
    return;
  }
  const std::size_t shown = std::min(top_n, list.size());
  for (std::size_t i = 0; i < shown; ++i) {
    out << "- " << list[i].verb << " (" << list[i].usage_count << ")\n";
  }
  if (shown < list.size()) {
    out << "- … " << list.size() - shown << " more\n";
  }
  out << "\n";
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "md" || name == "markdown") return ReportFormat::Markdown;
  throw ConfigError("unknown report format \"" + name +
                    "\" (expected json, csv, or md)");
}

std::string report_format_name(ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return "json";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Markdown: return "md";
  }
  return "md";
}

std::string render_report(const FailureReport& report, ReportFormat format,
                          std::size_t top_n) {
  switch (format) {
    case ReportFormat::Json: {
      const ConfusionMatrix& m = report.confusion;
      nlohmann::ordered_json json;
      json["confusion"] = {
          {"true_active_predicted_active", m.active_active},
          {"true_active_predicted_passive", m.active_passive},
          {"true_passive_predicted_active", m.passive_active},
          {"true_passive_predicted_passive", m.passive_passive},
          {"accuracy", fixed3(m.accuracy())},
          {"recall_active", fixed3(m.recall_active())},
          {"recall_passive", fixed3(m.recall_passive())},
      };
      json["correct"] = list_to_json(report.correct);
      json["false_passives"] = list_to_json(report.false_passives);
      json["false_actives"] = list_to_json(report.false_actives);
      return json.dump(2) + "\n";
    }
    case ReportFormat::Csv: {
      std::ostringstream out;
      write_failure_lists(out, report, ',');
      return out.str();
    }
    case ReportFormat::Markdown: {
      const ConfusionMatrix& m = report.confusion;
      std::ostringstream out;
      out << "# Failure report\n\n";
      out << "## Confusion matrix\n\n";
      out << "| true \\ predicted | Active | Passive |\n";
      out << "|---|---|---|\n";
      out << "| Active | " << m.active_active << " | " << m.active_passive
          << " |\n";
      out << "| Passive | " << m.passive_active << " | " << m.passive_passive
          << " |\n\n";
      out << "accuracy " << fixed3(m.accuracy()) << ", recall(active) "
          << fixed3(m.recall_active()) << ", recall(passive) "
          << fixed3(m.recall_passive()) << " over " << m.total()
          << " test verbs\n\n";
      render_md_list(out, "Correctly predicted", report.correct, top_n);
      render_md_list(out, "False passives (true Active, predicted Passive)",
                     report.false_passives, top_n);
      render_md_list(out, "False actives (true Passive, predicted Active)",
                     report.false_actives, top_n);
      return out.str();
    }
  }
  throw ConfigError("unhandled report format");
}

FailureReport parse_report_json(const std::string& text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& error) {
    throw DataError(std::string("report JSON: ") + error.what());
  }
  try {
    FailureReport report;
    const auto& confusion = json.at("confusion");
    report.confusion.active_active =
        confusion.at("true_active_predicted_active").get<std::size_t>();
    report.confusion.active_passive =
        confusion.at("true_active_predicted_passive").get<std::size_t>();
    report.confusion.passive_active =
        confusion.at("true_passive_predicted_active").get<std::size_t>();
    report.confusion.passive_passive =
        confusion.at("true_passive_predicted_passive").get<std::size_t>();
    report.correct = list_from_json(json.at("correct"), "correct");
    report.false_passives =
        list_from_json(json.at("false_passives"), "false_passives");
    report.false_actives =
        list_from_json(json.at("false_actives"), "false_actives");
    return report;
  } catch (const nlohmann::json::exception& error) {
    throw DataError(std::string("report JSON: ") + error.what());
  }
}

}  // namespace fsieve
