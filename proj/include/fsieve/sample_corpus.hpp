#pragma once

#include <string>
#include <vector>

#include "fsieve/corpus.hpp"

namespace fsieve {

// Deterministic synthetic replica of the machine-vision action export that
// ships under data/. It reproduces the published summary statistics — 747
// distinct (verb, voice) rows over 3439 interaction records, the usage
// counts of the most frequent verbs, and the trait/voice associations the
// classifier experiments depend on — without containing any real annotation
// rows. Regenerating with make-sample-data always yields identical bytes.
//
// The records are pre-recode: a slice of race/ethnicity and gender values
// uses the finer-grained source vocabulary that sample_recode_conf() folds
// into the analysis vocabulary ("PoC", "Genderqueer").
std::vector<ActionRecord> make_sample_records();

// The exact bytes of data/actions.csv.
std::string render_sample_actions_csv();

// The exact bytes of data/recode.conf.
std::string sample_recode_conf();

}  // namespace fsieve
