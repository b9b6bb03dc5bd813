#ifndef XLSRL_SYNTH_H_
#define XLSRL_SYNTH_H_

#include <cstdint>
#include <vector>

#include "xlsrl/align.h"
#include "xlsrl/conll.h"

namespace xlsrl {

struct SynthConfig {
  int n_pairs = 1000;
  int vocab_size = 50;
  int mean_length = 9;
  // Probability that a frame is translated idiomatically: its argument links
  // are permuted and half of them are lost.
  double shift_rate = 0.0;
  // Probability that a link is missing from one direction (so the
  // intersection loses it).
  double alignment_dropout = 0.0;
  // Probability that a source argument carries a wrong role.
  double label_noise = 0.0;
  std::uint64_t seed = 1;
  // Extra gold target sentences from the same grammar, not in the parallel data.
  int n_heldout = 0;

  // Throws std::invalid_argument for rates outside [0,1], vocab_size < 10 or
  // mean_length < 3.
  void validate() const;
};

struct SynthCorpus {
  std::vector<Sentence> source;       // with (possibly noisy) source-side frames
  std::vector<Sentence> target;       // no frames
  std::vector<AlignmentSet> forward;  // source-target orientation
  std::vector<AlignmentSet> backward; // source-target orientation
  std::vector<Sentence> gold_target;  // uncorrupted target frames
  std::vector<Sentence> heldout;      // gold target sentences for evaluation
  std::vector<bool> shifted;          // per pair: at least one frame shifted
};

// Source: SVO with English-like "to"-infinitives. Target: case-marked nouns
// (nominative -a, accusative -o, dative -i), verb-final embedded clauses.
// Roles follow syntax deterministically: nsubj A0, dobj A1, iobj A2, advmod
// AM-TMP, xcomp A2; an embedded verb takes the main subject as A0.
SynthCorpus generate(const SynthConfig& config);

}  // namespace xlsrl

#endif  // XLSRL_SYNTH_H_
