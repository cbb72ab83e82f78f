// failure-sieve: train a deliberately simple classifier on who-does-what
// trait profiles and mine its mispredictions as candidate cases for
// qualitative analysis.
//
// Subcommands: ingest, table, classify, failures, sweep, eval, dist, synth,
// report. Every run that writes files also writes a <out>.manifest.json with
// the full configuration and content hashes; identical configurations
// reproduce identical bytes.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsieve/corpus.hpp"
#include "fsieve/distribution.hpp"
#include "fsieve/errors.hpp"
#include "fsieve/featurize.hpp"
#include "fsieve/knn.hpp"
#include "fsieve/manifest.hpp"
#include "fsieve/mining.hpp"
#include "fsieve/pipeline.hpp"
#include "fsieve/report.hpp"
#include "fsieve/sample_corpus.hpp"
#include "fsieve/synth.hpp"

#ifdef _WIN32
#else
#include <unistd.h>
#endif

namespace {

using fsieve::ConfigError;

bool color_enabled() {
  if (std::getenv("FAILURE_SIEVE_NO_COLOR") != nullptr) return false;
#ifndef _WIN32
  return isatty(fileno(stdout)) != 0;
#else
  return false;
#endif
}

std::string green(const std::string& text) {
  return color_enabled() ? "\033[32m" + text + "\033[0m" : text;
}

// Shared input options.
struct InputOpts {
  std::string input;
  std::string recode;
  std::string delimiter = ",";
  std::vector<std::string> column_overrides;

  void attach(CLI::App* cmd, bool require_input = true) {
    auto* opt = cmd->add_option("--input", input, "input delimited text file");
    if (require_input) opt->required();
    cmd->add_option("--recode", recode, "recode map (INI, one section per category)");
    cmd->add_option("--delim", delimiter, "field delimiter")->capture_default_str();
    cmd->add_option("--col", column_overrides,
                    "column mapping field=source (repeatable)");
  }

  char delim() const {
    if (delimiter.size() != 1) {
      throw ConfigError("--delim must be a single character");
    }
    return delimiter[0];
  }

  fsieve::ColumnConfig columns() const {
    fsieve::ColumnConfig config;
    for (const auto& mapping : column_overrides) {
      const auto eq = mapping.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("--col expects field=source, got \"" + mapping + "\"");
      }
      config.set(mapping.substr(0, eq), mapping.substr(eq + 1));
    }
    return config;
  }

  std::vector<fsieve::ActionRecord> load() const {
    auto records = fsieve::read_corpus_file(input, columns(), delim());
    if (!recode.empty()) {
      records = fsieve::recode_traits(std::move(records),
                                      fsieve::RecodeMap::load(recode));
    }
    return records;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json json;
    json["input"] = input;
    json["recode"] = recode;
    json["delimiter"] = delimiter;
    json["columns"] = column_overrides;
    return json;
  }

  std::vector<fsieve::FileStamp> input_stamps() const {
    std::vector<fsieve::FileStamp> stamps;
    stamps.push_back({input, fsieve::fnv1a64_hex(fsieve::read_file(input))});
    if (!recode.empty()) {
      stamps.push_back({recode, fsieve::fnv1a64_hex(fsieve::read_file(recode))});
    }
    return stamps;
  }
};

// Staged output files: everything is computed first, then written, so a
// failure never leaves partial artifacts behind.
class OutputStage {
 public:
  void add(std::string path, std::string content) {
    files_.emplace_back(std::move(path), std::move(content));
  }

  void commit(const std::string& command, const nlohmann::ordered_json& config,
              const std::vector<fsieve::FileStamp>& inputs,
              const std::string& manifest_path) {
    std::vector<fsieve::FileStamp> outputs;
    for (const auto& [path, content] : files_) {
      outputs.push_back({path, fsieve::fnv1a64_hex(content)});
    }
    const auto manifest =
        fsieve::make_manifest(command, config, inputs, outputs);
    for (const auto& [path, content] : files_) {
      fsieve::atomic_write_file(path, content);
    }
    fsieve::atomic_write_file(manifest_path, manifest.dump(2) + "\n");
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string sidecar_path(const std::string& out, const std::string& tag) {
  const std::filesystem::path path(out);
  std::filesystem::path result = path.parent_path();
  result /= path.stem().string() + "." + tag + path.extension().string();
  return result.string();
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto range = text.find("..");
  if (range != std::string::npos) {
    const auto lo = std::stoull(text.substr(0, range));
    const auto hi = std::stoull(text.substr(range + 2));
    if (hi < lo) throw ConfigError("--seeds range is reversed: " + text);
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::istringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ',')) {
    if (!part.empty()) seeds.push_back(std::stoull(part));
  }
  if (seeds.empty()) throw ConfigError("--seeds is empty");
  return seeds;
}

std::vector<int> parse_k_range(const std::string& text) {
  std::vector<int> ks;
  const auto first_colon = text.find(':');
  if (first_colon != std::string::npos) {
    const auto second_colon = text.find(':', first_colon + 1);
    const int start = std::stoi(text.substr(0, first_colon));
    const int stop = std::stoi(
        text.substr(first_colon + 1, second_colon - first_colon - 1));
    const int step = second_colon == std::string::npos
                         ? 1
                         : std::stoi(text.substr(second_colon + 1));
    if (step < 1) throw ConfigError("--k-range step must be >= 1");
    for (int k = start; k <= stop; k += step) ks.push_back(k);
    if (ks.empty()) throw ConfigError("--k-range is empty: " + text);
    return ks;
  }
  std::istringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ',')) {
    if (!part.empty()) ks.push_back(std::stoi(part));
  }
  if (ks.empty()) throw ConfigError("--k-range is empty");
  return ks;
}


}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"misprediction mining over character-trait verb profiles"};
  app.require_subcommand(1);

  InputOpts ingest_in, table_in, classify_in, failures_in, sweep_in, eval_in,
      dist_in;

  // --- ingest ---------------------------------------------------------
  auto* ingest = app.add_subcommand(
      "ingest", "parse + recode + validate a corpus; print its stats");
  ingest_in.attach(ingest);
  std::string ingest_out;
  ingest->add_option("--out", ingest_out,
                     "write the canonical corpus file here");

  // --- table ----------------------------------------------------------
  auto* table = app.add_subcommand(
      "table", "build the verb x trait-count contingency table");
  table_in.attach(table);
  std::string table_out;
  table->add_option("--out", table_out, "table csv path")->required();

  // --- classify -------------------------------------------------------
  auto* classify = app.add_subcommand(
      "classify", "single split-and-predict run; write predictions");
  classify_in.attach(classify);
  std::uint64_t classify_seed = 42;
  int classify_k = 1;
  double classify_split_fraction = 0.7;
  std::string classify_out;
  classify->add_option("--seed", classify_seed, "split seed")->capture_default_str();
  classify->add_option("--k", classify_k, "neighbor count")->capture_default_str();
  classify->add_option("--split", classify_split_fraction, "train fraction")
      ->capture_default_str();
  classify->add_option("--out", classify_out, "predictions csv path")->required();

  // --- failures -------------------------------------------------------
  auto* failures = app.add_subcommand(
      "failures", "single run reported as ranked failure lists");
  failures_in.attach(failures);
  std::uint64_t failures_seed = 42;
  int failures_k = 1;
  double failures_split_fraction = 0.7;
  std::size_t failures_top = 10;
  std::string failures_format = "md";
  std::string failures_out;
  failures->add_option("--seed", failures_seed, "split seed")->capture_default_str();
  failures->add_option("--k", failures_k, "neighbor count")->capture_default_str();
  failures->add_option("--split", failures_split_fraction, "train fraction")
      ->capture_default_str();
  failures->add_option("--top", failures_top, "list length in markdown")
      ->capture_default_str();
  failures->add_option("--format", failures_format, "json, csv, or md")
      ->capture_default_str();
  failures->add_option("--out", failures_out, "report path")->required();

  // --- sweep ----------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "accuracy across k values and seeds");
  sweep_in.attach(sweep);
  std::string sweep_k_range = "1:21:2";
  std::string sweep_seeds = "1..100";
  double sweep_split_fraction = 0.7;
  int sweep_jobs = 1;
  std::string sweep_out;
  sweep->add_option("--k-range", sweep_k_range, "start:stop:step or list")
      ->capture_default_str();
  sweep->add_option("--seeds", sweep_seeds, "lo..hi or comma list")
      ->capture_default_str();
  sweep->add_option("--split", sweep_split_fraction, "train fraction")
      ->capture_default_str();
  sweep->add_option("--jobs", sweep_jobs, "worker threads")->capture_default_str();
  sweep->add_option("--out", sweep_out, "sweep csv path")->required();

  // --- eval -----------------------------------------------------------
  auto* eval = app.add_subcommand(
      "eval", "distribution of single-split results over many seeds");
  eval_in.attach(eval);
  int eval_k = 1;
  std::string eval_seeds = "1..100";
  double eval_split_fraction = 0.7;
  int eval_jobs = 1;
  std::string eval_out;
  eval->add_option("--k", eval_k, "neighbor count")->capture_default_str();
  eval->add_option("--seeds", eval_seeds, "lo..hi or comma list")
      ->capture_default_str();
  eval->add_option("--split", eval_split_fraction, "train fraction")
      ->capture_default_str();
  eval->add_option("--jobs", eval_jobs, "worker threads")->capture_default_str();
  eval->add_option("--out", eval_out,
                   "per-seed csv path (verb rates go to <out>.verbs.csv)")
      ->required();

  // --- dist -----------------------------------------------------------
  auto* dist = app.add_subcommand(
      "dist", "active/passive usage per trait value (and genre)");
  dist_in.attach(dist);
  bool dist_by_genre = false;
  std::string dist_format = "csv";
  std::string dist_out;
  dist->add_flag("--by-genre", dist_by_genre, "facet by genre");
  dist->add_option("--format", dist_format, "csv or md")->capture_default_str();
  dist->add_option("--out", dist_out, "output path")->required();

  // --- synth ----------------------------------------------------------
  auto* synth = app.add_subcommand(
      "synth", "generate a corpus with planted clean/ambiguous verbs");
  std::string synth_spec_path;
  int synth_verbs = -1;
  double synth_ambiguous = -1.0;
  double synth_mean_usage = -1.0;
  std::uint64_t synth_seed = 0;
  bool synth_seed_set = false;
  std::string synth_out;
  synth->add_option("--spec", synth_spec_path, "spec file ([synth] section)");
  synth->add_option("--verbs", synth_verbs, "override n_verbs");
  synth->add_option("--ambiguous", synth_ambiguous, "override ambiguous_fraction");
  synth->add_option("--mean-usage", synth_mean_usage, "override mean_usage");
  synth->add_option("--seed", synth_seed, "override seed")
      ->each([&](const std::string&) { synth_seed_set = true; });
  synth->add_option("--out", synth_out,
                    "corpus csv path (truth goes to <out>.truth.csv)")
      ->required();

  // --- report ---------------------------------------------------------
  auto* report_cmd = app.add_subcommand(
      "report", "re-render a JSON failure report in another format");
  std::string report_input;
  std::string report_format = "md";
  std::size_t report_top = 10;
  std::string report_out;
  report_cmd->add_option("--input", report_input, "report JSON path")->required();
  report_cmd->add_option("--format", report_format, "json, csv, or md")
      ->capture_default_str();
  report_cmd->add_option("--top", report_top, "list length in markdown")
      ->capture_default_str();
  report_cmd->add_option("--out", report_out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 4;
  }

  try {
    if (app.got_subcommand(ingest)) {
      const auto records = ingest_in.load();
      const auto stats = fsieve::validate_corpus(records);
      std::cout << stats.to_text();
      if (!ingest_out.empty()) {
        std::ostringstream corpus;
        fsieve::write_corpus(corpus, records, ingest_in.delim());
        OutputStage stage;
        stage.add(ingest_out, corpus.str());
        auto config = ingest_in.to_json();
        config["out"] = ingest_out;
        stage.commit("ingest", config, ingest_in.input_stamps(),
                     ingest_out + ".manifest.json");
        std::cout << green("wrote ") << ingest_out << "\n";
      }
    } else if (app.got_subcommand(table)) {
      const auto records = table_in.load();
      const auto contingency =
          fsieve::build_table(records, fsieve::build_schema(records));
      std::ostringstream out;
      fsieve::write_table(out, contingency, table_in.delim());
      OutputStage stage;
      stage.add(table_out, out.str());
      auto config = table_in.to_json();
      config["out"] = table_out;
      stage.commit("table", config, table_in.input_stamps(),
                   table_out + ".manifest.json");
      std::cout << green("wrote ") << table_out << " (" << contingency.rows.size()
                << " rows x " << contingency.schema.size() << " trait columns)\n";
    } else if (app.got_subcommand(classify) || app.got_subcommand(failures)) {
      const bool is_classify = app.got_subcommand(classify);
      const InputOpts& in = is_classify ? classify_in : failures_in;
      fsieve::RunConfig config;
      config.input_path = in.input;
      config.recode_path = in.recode;
      config.delimiter = in.delim();
      config.columns = in.columns();
      config.seed = is_classify ? classify_seed : failures_seed;
      config.k = is_classify ? classify_k : failures_k;
      config.train_fraction =
          is_classify ? classify_split_fraction : failures_split_fraction;
      config.top_n = failures_top;
      config.format = fsieve::parse_report_format(failures_format);
      const auto result = fsieve::run_pipeline(config);

      nlohmann::ordered_json config_json = in.to_json();
      config_json["seed"] = config.seed;
      config_json["k"] = config.k;
      config_json["train_fraction"] = config.train_fraction;

      OutputStage stage;
      std::string out_path;
      std::string command;
      if (is_classify) {
        command = "classify";
        out_path = classify_out;
        std::ostringstream out;
        fsieve::write_predictions(out, result.outcomes, in.delim());
        stage.add(out_path, out.str());
      } else {
        command = "failures";
        out_path = failures_out;
        config_json["top_n"] = failures_top;
        config_json["format"] = failures_format;
        stage.add(out_path, fsieve::render_report(result.report, config.format,
                                                  failures_top));
      }
      config_json["out"] = out_path;
      stage.commit(command, config_json, in.input_stamps(),
                   out_path + ".manifest.json");

      const auto& m = result.report.confusion;
      std::cout << "test rows " << m.total() << ", accuracy " << m.accuracy()
                << ", recall(active) " << m.recall_active()
                << ", recall(passive) " << m.recall_passive() << "\n";
      std::cout << green("wrote ") << out_path << "\n";
    } else if (app.got_subcommand(sweep)) {
      const auto records = sweep_in.load();
      const auto contingency =
          fsieve::build_table(records, fsieve::build_schema(records));
      const auto ks = parse_k_range(sweep_k_range);
      const auto seeds = parse_seed_list(sweep_seeds);
      const auto result = fsieve::sweep_k(contingency, ks, seeds,
                                          sweep_split_fraction, sweep_jobs);
      std::ostringstream out;
      fsieve::write_sweep(out, result, sweep_in.delim());
      OutputStage stage;
      stage.add(sweep_out, out.str());
      auto config = sweep_in.to_json();
      config["k_range"] = sweep_k_range;
      config["seeds"] = sweep_seeds;
      config["train_fraction"] = sweep_split_fraction;
      config["out"] = sweep_out;
      stage.commit("sweep", config, sweep_in.input_stamps(),
                   sweep_out + ".manifest.json");
      for (const auto& entry : result.entries) {
        std::cout << "k=" << entry.k << " mean accuracy " << entry.mean_accuracy
                  << " (sd " << entry.sd_accuracy << ")\n";
      }
      std::cout << green("wrote ") << sweep_out << "\n";
    } else if (app.got_subcommand(eval)) {
      const auto records = eval_in.load();
      const auto contingency =
          fsieve::build_table(records, fsieve::build_schema(records));
      const auto seeds = parse_seed_list(eval_seeds);
      fsieve::KnnConfig knn;
      knn.k = eval_k;
      const auto summary = fsieve::multi_seed_eval(
          contingency, knn, seeds, eval_split_fraction, eval_jobs);
      std::ostringstream runs_out, verbs_out;
      fsieve::write_eval(runs_out, summary, eval_k, eval_in.delim());
      fsieve::write_verb_rates(verbs_out, summary, eval_in.delim());
      const std::string verbs_path = sidecar_path(eval_out, "verbs");
      OutputStage stage;
      stage.add(eval_out, runs_out.str());
      stage.add(verbs_path, verbs_out.str());
      auto config = eval_in.to_json();
      config["k"] = eval_k;
      config["seeds"] = eval_seeds;
      config["train_fraction"] = eval_split_fraction;
      config["out"] = eval_out;
      stage.commit("eval", config, eval_in.input_stamps(),
                   eval_out + ".manifest.json");
      std::cout << "seeds " << seeds.size() << ": accuracy mean "
                << summary.accuracy.mean << ", median " << summary.accuracy.median
                << ", sd " << summary.accuracy.sd << "\n";
      std::cout << green("wrote ") << eval_out << " and " << verbs_path << "\n";
    } else if (app.got_subcommand(dist)) {
      const auto records = dist_in.load();
      const auto rows = fsieve::trait_voice_distribution(records, dist_by_genre);
      std::string rendered;
      if (dist_format == "csv") {
        std::ostringstream out;
        fsieve::write_distribution(out, rows, dist_in.delim());
        rendered = out.str();
      } else if (dist_format == "md") {
        rendered = fsieve::render_distribution_markdown(rows);
      } else {
        throw ConfigError("dist --format must be csv or md");
      }
      OutputStage stage;
      stage.add(dist_out, rendered);
      auto config = dist_in.to_json();
      config["by_genre"] = dist_by_genre;
      config["format"] = dist_format;
      config["out"] = dist_out;
      stage.commit("dist", config, dist_in.input_stamps(),
                   dist_out + ".manifest.json");
      std::cout << green("wrote ") << dist_out << "\n";
    } else if (app.got_subcommand(synth)) {
      fsieve::SynthSpec spec;
      std::vector<fsieve::FileStamp> inputs;
      if (!synth_spec_path.empty()) {
        spec = fsieve::load_synth_spec(synth_spec_path);
        inputs.push_back({synth_spec_path,
                          fsieve::fnv1a64_hex(fsieve::read_file(synth_spec_path))});
      }
      if (synth_verbs >= 0) spec.n_verbs = synth_verbs;
      if (synth_ambiguous >= 0) spec.ambiguous_fraction = synth_ambiguous;
      if (synth_mean_usage >= 0) spec.mean_usage = synth_mean_usage;
      if (synth_seed_set) spec.seed = synth_seed;
      const auto corpus = fsieve::generate(spec);
      std::ostringstream corpus_out, truth_out;
      fsieve::write_corpus(corpus_out, corpus.records);
      fsieve::write_ground_truth(truth_out, corpus.truth);
      const std::string truth_path = sidecar_path(synth_out, "truth");
      OutputStage stage;
      stage.add(synth_out, corpus_out.str());
      stage.add(truth_path, truth_out.str());
      nlohmann::ordered_json config;
      config["spec"] = synth_spec_path;
      config["n_verbs"] = spec.n_verbs;
      config["ambiguous_fraction"] = spec.ambiguous_fraction;
      config["mean_usage"] = spec.mean_usage;
      config["seed"] = spec.seed;
      config["out"] = synth_out;
      stage.commit("synth", config, inputs, synth_out + ".manifest.json");
      std::cout << green("wrote ") << synth_out << " (" << corpus.records.size()
                << " records) and " << truth_path << "\n";
    } else if (app.got_subcommand(report_cmd)) {
      const auto parsed =
          fsieve::parse_report_json(fsieve::read_file(report_input));
      const auto format = fsieve::parse_report_format(report_format);
      OutputStage stage;
      stage.add(report_out, fsieve::render_report(parsed, format, report_top));
      nlohmann::ordered_json config;
      config["input"] = report_input;
      config["format"] = report_format;
      config["top_n"] = report_top;
      config["out"] = report_out;
      std::vector<fsieve::FileStamp> inputs = {
          {report_input, fsieve::fnv1a64_hex(fsieve::read_file(report_input))}};
      stage.commit("report", config, inputs, report_out + ".manifest.json");
      std::cout << green("wrote ") << report_out << "\n";
    }
  } catch (const fsieve::SchemaError& error) {
    std::cerr << "schema error: " << error.what() << "\n";
    return 2;
  } catch (const fsieve::DataError& error) {
    std::cerr << "data error: " << error.what() << "\n";
    return 3;
  } catch (const fsieve::ConfigError& error) {
    std::cerr << "config error: " << error.what() << "\n";
    return 4;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
