#ifndef XLSRL_BOOTSTRAP_H_
#define XLSRL_BOOTSTRAP_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "xlsrl/align.h"
#include "xlsrl/eval.h"
#include "xlsrl/linear_model.h"
#include "xlsrl/pipeline.h"
#include "xlsrl/project.h"
#include "xlsrl/sidecar.h"

namespace xlsrl {

enum class BootstrapVariant { kFillIn, kRelabel };

BootstrapVariant parse_variant(std::string_view name);
std::string variant_name(BootstrapVariant variant);

struct BootstrapConfig {
  int iterations = 7;
  BootstrapVariant variant = BootstrapVariant::kRelabel;
  CostMode cost_mode = CostMode::kUniform;
  int epochs_per_round = 10;
  std::uint64_t seed = 1;
  // Initialize each round from the previous model instead of from zero.
  bool warm_start = false;
  // Threads for the labeling pass; training is always sequential.
  int workers = 1;

  // Throws std::invalid_argument.
  void validate() const;
};

// Label of an argument candidate that is not an argument of the frame.
inline constexpr std::string_view kNoRole = "_";

// One (predicate, candidate token) decision.
struct ArgumentSlot {
  int sentence = 0;
  int predicate = 0;
  int token = 0;
  // A role, kNoRole, or empty while an unlabeled slot has not been labeled yet.
  std::string label;
  // Label assigned by projection; empty for unlabeled slots. Never changes.
  std::string projected_label;
  CostVector cost;
  InstanceOrigin origin = InstanceOrigin::kProjectedLabeled;
  FeatureVector features;
};

// A projected target sentence with what the partition needs to know about it.
struct ProjectedSentence {
  Sentence target;
  std::vector<bool> aligned;  // per token (position index - 1)
  double completeness = 1.0;
  // Dependency-match cost of each projected argument, keyed by (predicate, token).
  std::map<std::pair<int, int>, double> argument_dep;
};

// D = D_L ∪ D_U over argument candidates of projected predicates. A candidate
// is labeled when its token is aligned: it takes the projected role, or
// kNoRole when nothing was projected onto it. Unaligned candidates form D_U.
struct PartitionedData {
  std::vector<Sentence> sentences;
  std::vector<ArgumentSlot> labeled;
  std::vector<ArgumentSlot> unlabeled;
  // Predicate identification and sense instances from the projected predicates.
  std::map<Stage, std::vector<TrainingInstance>> predicate_instances;
};

PartitionedData partition(const std::vector<ProjectedSentence>& corpus);

// From an in-memory projection.
ProjectedSentence make_projected_sentence(const SentencePair& pair, const ProjectionResult& result);

// From files: a projected corpus, its intersected alignments, and the cost
// sidecar. Sidecar rows must follow the corpus order. Throws DataError.
std::vector<ProjectedSentence> load_projected(const std::vector<Sentence>& targets,
                                              const std::vector<AlignmentSet>& alignments,
                                              const std::vector<CostRow>& costs);
// Same, without a sidecar: costs are recomputed from the targets (comp) and
// taken as 1.0 for dep.
std::vector<ProjectedSentence> load_projected(const std::vector<Sentence>& targets,
                                              const std::vector<AlignmentSet>& alignments);

struct BootstrapResult {
  ModelBundle model;
  PartitionedData data;  // labels as of the final round
  int training_runs = 0;
  int labeling_passes = 0;
};

// Called after each model theta^i is trained (round 0 included).
using RoundCallback = std::function<void(int round, const ModelBundle& model)>;

// Self-training: theta^0 on D_L; for each round, label D_U (and with the
// relabel variant, D_L) with the previous averaged model, then retrain on the
// union. Throws std::invalid_argument when D_L is empty.
BootstrapResult bootstrap(PartitionedData data, const BootstrapConfig& config,
                          const RoundCallback& on_round = {});

// Runs the pipeline over `dev` with gold predicates and scores it.
EvalReport checkpoint_metrics(int round, const ModelBundle& model, const std::vector<Sentence>& dev,
                              int workers = 1, const ScoreOptions& options = {});

// Round-by-round metrics CSV: round,stage,scope,precision,recall,f1
std::string metrics_csv_header();
std::string metrics_csv_rows(int round, std::string_view stage, const EvalReport& report);

}  // namespace xlsrl

#endif  // XLSRL_BOOTSTRAP_H_
