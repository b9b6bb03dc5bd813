#ifndef XLSRL_PIPELINE_H_
#define XLSRL_PIPELINE_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "xlsrl/conll.h"
#include "xlsrl/features.h"
#include "xlsrl/linear_model.h"

namespace xlsrl {

// Binary decisions of the identification stages.
inline constexpr std::string_view kYes = "yes";
inline constexpr std::string_view kNo = "no";

// One model per pipeline stage.
struct ModelBundle {
  std::map<Stage, LinearModel> models;

  bool has(Stage stage) const { return models.count(stage) > 0; }
  // Throws DataError when the stage is missing.
  const LinearModel& at(Stage stage) const;
  bool operator==(const ModelBundle&) const = default;
};

// Versioned text format:
//   xlsrl-bundle<TAB>1
//   stage<TAB>name<TAB>labels<TAB>update_count<TAB>records
//   label<TAB>text              (one per label, in order)
//   hex-feature<TAB>label<TAB>weight<TAB>accumulated
//   ...
//   end
// Records are sorted, so equal models serialize to equal bytes.
std::string write_bundle(const ModelBundle& bundle);
ModelBundle parse_bundle(std::string_view text);

// Greedy three-stage labeling. With `gold_predicates`, predicate positions and
// senses come from `sentence` and only the argument stages run.
Sentence run_pipeline(const ModelBundle& bundle, const Sentence& sentence, bool gold_predicates);

std::vector<Sentence> run_pipeline(const ModelBundle& bundle, const std::vector<Sentence>& corpus,
                                   bool gold_predicates, int workers);

// Training instances for every stage from fully labeled sentences. Every
// token other than the predicate is an argument candidate.
std::map<Stage, std::vector<TrainingInstance>> supervised_instances(
    const std::vector<Sentence>& sentences);

// Trains each stage that has instances. Binary stages use labels {no, yes}.
// `warm_start`, when given, seeds each stage from its previous model.
ModelBundle train_bundle(const std::map<Stage, std::vector<TrainingInstance>>& instances,
                         const TrainOptions& options, const ModelBundle* warm_start = nullptr);

ModelBundle train_supervised(const std::vector<Sentence>& sentences, const TrainOptions& options);

}  // namespace xlsrl

#endif  // XLSRL_PIPELINE_H_
