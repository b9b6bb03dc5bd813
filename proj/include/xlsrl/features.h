#ifndef XLSRL_FEATURES_H_
#define XLSRL_FEATURES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xlsrl/conll.h"

namespace xlsrl {

enum class Stage {
  kPredicateIdentification,
  kPredicateSense,
  kArgumentIdentification,
  kArgumentClassification,
};

inline constexpr Stage kAllStages[] = {Stage::kPredicateIdentification, Stage::kPredicateSense,
                                       Stage::kArgumentIdentification,
                                       Stage::kArgumentClassification};

std::string stage_name(Stage stage);
Stage parse_stage(std::string_view name);

using FeatureId = std::uint64_t;

// 64-bit FNV-1a; stable across platforms and runs.
FeatureId hash_feature(std::string_view name);

// Sparse binary feature vector, sorted by id, no duplicates, no zero values.
class FeatureVector {
 public:
  using Entry = std::pair<FeatureId, double>;

  FeatureVector() = default;
  static FeatureVector from_names(const std::vector<std::string>& names);
  static FeatureVector from_ids(std::vector<FeatureId> ids);

  const std::vector<Entry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(FeatureId id) const;

  bool operator==(const FeatureVector&) const = default;

 private:
  std::vector<Entry> entries_;
};

// Dependency path from the argument up to the lowest common ancestor and down
// to the predicate, e.g. "nsubj↑" or "dobj↑xcomp↓". Capped at 8 arcs.
std::string dependency_path(const Sentence& sentence, int from, int to);

// Feature names produced by the templates. For predicate stages only
// `predicate_index` is used. Throws std::invalid_argument on bad indices.
std::vector<std::string> feature_names(const Sentence& sentence, Stage stage, int token_index,
                                       int predicate_index);

FeatureVector extract_features(const Sentence& sentence, Stage stage, int token_index,
                               int predicate_index);

}  // namespace xlsrl

#endif  // XLSRL_FEATURES_H_
