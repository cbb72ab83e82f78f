// Regenerates the bundled sample corpus (data/actions.csv, data/recode.conf).
// Output is deterministic; a test guards against the checked-in files
// drifting from this generator.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fsieve/manifest.hpp"
#include "fsieve/sample_corpus.hpp"

int main(int argc, char** argv) {
  CLI::App app{"write the bundled sample corpus"};
  std::string out_dir = "data";
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const std::string actions = fsieve::render_sample_actions_csv();
    const std::string recode = fsieve::sample_recode_conf();
    fsieve::atomic_write_file(out_dir + "/actions.csv", actions);
    fsieve::atomic_write_file(out_dir + "/recode.conf", recode);
    std::cout << "wrote " << out_dir << "/actions.csv (" << actions.size()
              << " bytes) and " << out_dir << "/recode.conf\n";
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
