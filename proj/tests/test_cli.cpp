#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "fsieve/manifest.hpp"

// End-to-end checks of the CLI binary: exit codes and the no-partial-output
// guarantee. The heavier determinism and replay checks live in the
// acceptance suite.

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("fsieve_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run_cli(const std::string& args) {
  const std::string command =
      std::string(FSIEVE_CLI_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

constexpr const char* kTinyCorpus =
    "work_id,genre,verb,voice,gender,species,race_ethnicity,age,sexuality\n"
    "w1,Novel,scanning,Active,Female,Human,White,Adult,Unknown\n"
    "w1,Novel,scanning,Active,Male,Human,White,Adult,Unknown\n"
    "w2,Game,watched,Passive,Female,Human,PoC,Child,Unknown\n"
    "w2,Game,helping,Active,Female,Robot,Unknown,Adult,Unknown\n"
    "w3,Movie,exposed,Passive,Male,Human,White,Adult,Unknown\n"
    "w3,Movie,chasing,Active,Male,Animal,Unknown,Unknown,Unknown\n";

}  // namespace

TEST_CASE("cli: missing recode file exits 4 and writes nothing") {
  TempDir dir;
  write_text(dir.file("corpus.csv"), kTinyCorpus);
  const std::string out = dir.file("out.csv");
  const int code = run_cli("ingest --input " + dir.file("corpus.csv") +
                           " --recode " + dir.file("missing.conf") + " --out " +
                           out);
  CHECK(code == 4);
  CHECK_FALSE(fs::exists(out));
  CHECK_FALSE(fs::exists(out + ".manifest.json"));
}

TEST_CASE("cli: malformed voice exits 3") {
  TempDir dir;
  write_text(dir.file("bad.csv"),
             "work_id,genre,verb,voice,gender,species,race_ethnicity,age,"
             "sexuality\n"
             "w,Novel,scanning,sideways,F,H,W,A,S\n");
  CHECK(run_cli("ingest --input " + dir.file("bad.csv")) == 3);
}

TEST_CASE("cli: missing column exits 2") {
  TempDir dir;
  write_text(dir.file("bad.csv"), "verb,voice\nscanning,active\n");
  CHECK(run_cli("ingest --input " + dir.file("bad.csv")) == 2);
}

TEST_CASE("cli: unknown flag exits 4") {
  CHECK(run_cli("ingest --frobnicate") == 4);
}

TEST_CASE("cli: ingest writes canonical corpus plus manifest") {
  TempDir dir;
  write_text(dir.file("corpus.csv"), kTinyCorpus);
  const std::string out = dir.file("canonical.csv");
  REQUIRE(run_cli("ingest --input " + dir.file("corpus.csv") + " --out " + out) ==
          0);
  CHECK(fs::exists(out));
  REQUIRE(fs::exists(out + ".manifest.json"));
  const auto manifest = fsieve::read_file(out + ".manifest.json");
  CHECK(manifest.find("\"command\": \"ingest\"") != std::string::npos);
  CHECK(manifest.find("fnv1a64") != std::string::npos);
}

TEST_CASE("cli: classify on a tiny corpus produces predictions") {
  TempDir dir;
  write_text(dir.file("corpus.csv"), kTinyCorpus);
  const std::string out = dir.file("predictions.csv");
  REQUIRE(run_cli("classify --input " + dir.file("corpus.csv") +
                  " --seed 3 --k 1 --out " + out) == 0);
  const auto predictions = fsieve::read_file(out);
  CHECK(predictions.rfind("verb,true_label,predicted_label,usage_count,"
                          "nearest_verb,nearest_distance\n",
                          0) == 0);
}

TEST_CASE("cli: synth writes corpus and truth sidecar") {
  TempDir dir;
  const std::string out = dir.file("synthetic.csv");
  REQUIRE(run_cli("synth --verbs 40 --ambiguous 0.25 --seed 5 --out " + out) == 0);
  CHECK(fs::exists(out));
  CHECK(fs::exists(dir.file("synthetic.truth.csv")));
  const auto truth = fsieve::read_file(dir.file("synthetic.truth.csv"));
  CHECK(truth.rfind("verb,flag\n", 0) == 0);
}

TEST_CASE("cli: table and dist emit their documented headers") {
  TempDir dir;
  write_text(dir.file("corpus.csv"), kTinyCorpus);
  REQUIRE(run_cli("table --input " + dir.file("corpus.csv") + " --out " +
                  dir.file("table.csv")) == 0);
  CHECK(fsieve::read_file(dir.file("table.csv"))
            .rfind("verb,label,usage_count,", 0) == 0);

  REQUIRE(run_cli("dist --input " + dir.file("corpus.csv") +
                  " --by-genre --out " + dir.file("dist.csv")) == 0);
  CHECK(fsieve::read_file(dir.file("dist.csv"))
            .rfind("trait_category,trait_value,genre,", 0) == 0);

  REQUIRE(run_cli("dist --input " + dir.file("corpus.csv") + " --format md "
                  "--out " + dir.file("dist.md")) == 0);
  CHECK(fsieve::read_file(dir.file("dist.md")).rfind("# Active", 0) == 0);
}

TEST_CASE("cli: report re-renders a json report as markdown") {
  TempDir dir;
  write_text(dir.file("corpus.csv"), kTinyCorpus);
  REQUIRE(run_cli("failures --input " + dir.file("corpus.csv") +
                  " --seed 1 --k 1 --format json --out " +
                  dir.file("report.json")) == 0);
  REQUIRE(run_cli("report --input " + dir.file("report.json") +
                  " --format md --out " + dir.file("report.md")) == 0);
  const auto markdown = fsieve::read_file(dir.file("report.md"));
  CHECK(markdown.rfind("# Failure report", 0) == 0);
  CHECK(fs::exists(dir.file("report.md.manifest.json")));
}
