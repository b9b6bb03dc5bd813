#ifndef XLSRL_LINEAR_MODEL_H_
#define XLSRL_LINEAR_MODEL_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "xlsrl/features.h"

namespace xlsrl {

// Multiclass linear model over sparse binary features, with lazy averaging.
//
// Each call to update() is one perceptron step. After T steps the averaged
// weight is weight - accumulated / T, which equals the mean of the T weight
// vectors observed after each step.
class LinearModel {
 public:
  struct Record {
    FeatureId feature = 0;
    int label = 0;
    double weight = 0.0;
    double accumulated = 0.0;

    bool operator==(const Record&) const = default;
  };

  LinearModel() = default;
  explicit LinearModel(std::vector<std::string> labels);

  const std::vector<std::string>& labels() const { return labels_; }
  int num_labels() const { return static_cast<int>(labels_.size()); }
  // -1 when absent.
  int label_index(std::string_view label) const;
  // Appends a label; existing weights are preserved.
  int add_label(const std::string& label);

  std::int64_t update_count() const { return update_count_; }
  size_t num_features() const { return index_.size(); }

  double weight(FeatureId feature, int label) const;
  double accumulated(FeatureId feature, int label) const;
  double averaged_weight(FeatureId feature, int label) const;

  std::vector<double> scores(const FeatureVector& features, bool averaged) const;
  // Argmax; ties go to the earliest label. `allowed`, when non-empty, masks labels.
  int predict_index(const FeatureVector& features, bool averaged,
                    const std::vector<bool>& allowed = {}) const;
  const std::string& predict(const FeatureVector& features, bool averaged) const;

  // One step of theta += cost * (phi(x, gold) - phi(x, predicted)). Always
  // advances update_count, even when gold == predicted or cost == 0.
  void update(const FeatureVector& features, int gold, int predicted, double cost);
  // The uniform rule, theta += phi(x, gold) - phi(x, predicted).
  void update_standard(const FeatureVector& features, int gold, int predicted);

  // Records with a nonzero weight or accumulator, sorted by (feature, label).
  std::vector<Record> records() const;
  static LinearModel from_records(std::vector<std::string> labels, std::int64_t update_count,
                                  const std::vector<Record>& records);

  bool operator==(const LinearModel& other) const;

 private:
  size_t row(FeatureId feature);
  template <typename Delta>
  void apply(const FeatureVector& features, int gold, int predicted, Delta delta);

  std::vector<std::string> labels_;
  std::unordered_map<FeatureId, size_t> index_;  // feature -> row
  std::vector<double> weights_;                  // row-major, num_labels per row
  std::vector<double> accumulated_;
  std::int64_t update_count_ = 0;
};

enum class InstanceOrigin { kProjectedLabeled, kFilledIn, kRelabeled };

struct TrainingInstance {
  FeatureVector features;
  std::string gold_label;
  double cost = 1.0;
  InstanceOrigin origin = InstanceOrigin::kProjectedLabeled;
};

enum class UpdateRule { kCostWeighted, kStandard };

// Applies one update for `inst` given the model's prediction. Throws
// std::invalid_argument for labels outside the model's label set.
void perceptron_update(LinearModel& model, const TrainingInstance& inst,
                       std::string_view predicted, UpdateRule rule = UpdateRule::kCostWeighted);

struct TrainOptions {
  int epochs = 10;
  std::uint64_t seed = 1;
  UpdateRule rule = UpdateRule::kCostWeighted;
  // Label order for tie-breaking; sorted gold labels when empty.
  std::vector<std::string> labels;
  // Starting point instead of a zero model.
  const LinearModel* warm_start = nullptr;
};

// Shuffles per epoch with a seeded generator and predicts with the raw
// weights during training. Throws std::invalid_argument on empty input or
// epochs < 1.
LinearModel train_stage(const std::vector<TrainingInstance>& instances,
                        const TrainOptions& options = {});

// Deterministic Fisher-Yates shuffle of 0..n-1 driven by mt19937_64.
class SeededShuffler {
 public:
  explicit SeededShuffler(std::uint64_t seed);
  void shuffle(std::vector<size_t>& order);
  std::uint64_t next();

 private:
  std::mt19937_64 engine_;
};

}  // namespace xlsrl

#endif  // XLSRL_LINEAR_MODEL_H_
