#include "xlsrl/linear_model.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace xlsrl {

LinearModel::LinearModel(std::vector<std::string> labels) : labels_(std::move(labels)) {}

int LinearModel::label_index(std::string_view label) const {
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<int>(i);
  }
  return -1;
}

int LinearModel::add_label(const std::string& label) {
  if (int existing = label_index(label); existing >= 0) return existing;
  const size_t old_n = labels_.size();
  const size_t rows = index_.size();
  std::vector<double> w(rows * (old_n + 1), 0.0);
  std::vector<double> u(rows * (old_n + 1), 0.0);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t l = 0; l < old_n; ++l) {
      w[r * (old_n + 1) + l] = weights_[r * old_n + l];
      u[r * (old_n + 1) + l] = accumulated_[r * old_n + l];
    }
  }
  weights_ = std::move(w);
  accumulated_ = std::move(u);
  labels_.push_back(label);
  return static_cast<int>(old_n);
}

double LinearModel::weight(FeatureId feature, int label) const {
  auto it = index_.find(feature);
  return it == index_.end() ? 0.0 : weights_[it->second * labels_.size() + label];
}

double LinearModel::accumulated(FeatureId feature, int label) const {
  auto it = index_.find(feature);
  return it == index_.end() ? 0.0 : accumulated_[it->second * labels_.size() + label];
}

double LinearModel::averaged_weight(FeatureId feature, int label) const {
  const double w = weight(feature, label);
  if (update_count_ == 0) return w;
  return w - accumulated(feature, label) / static_cast<double>(update_count_);
}

std::vector<double> LinearModel::scores(const FeatureVector& features, bool averaged) const {
  const size_t n = labels_.size();
  std::vector<double> out(n, 0.0);
  const double inv = averaged && update_count_ > 0 ? 1.0 / static_cast<double>(update_count_) : 0.0;
  for (const auto& [id, value] : features.entries()) {
    auto it = index_.find(id);
    if (it == index_.end()) continue;
    const double* w = &weights_[it->second * n];
    const double* u = &accumulated_[it->second * n];
    for (size_t l = 0; l < n; ++l) {
      const double eff = averaged ? w[l] - u[l] * inv : w[l];
      out[l] += value * eff;
    }
  }
  return out;
}

int LinearModel::predict_index(const FeatureVector& features, bool averaged,
                               const std::vector<bool>& allowed) const {
  if (labels_.empty()) throw std::logic_error("model has no labels");
  const std::vector<double> s = scores(features, averaged);
  int best = -1;
  for (size_t l = 0; l < s.size(); ++l) {
    if (!allowed.empty() && !allowed[l]) continue;
    if (best < 0 || s[l] > s[best]) best = static_cast<int>(l);
  }
  return best < 0 ? 0 : best;
}

const std::string& LinearModel::predict(const FeatureVector& features, bool averaged) const {
  return labels_[predict_index(features, averaged)];
}

size_t LinearModel::row(FeatureId feature) {
  auto [it, inserted] = index_.emplace(feature, index_.size());
  if (inserted) {
    weights_.resize(weights_.size() + labels_.size(), 0.0);
    accumulated_.resize(accumulated_.size() + labels_.size(), 0.0);
  }
  return it->second;
}

template <typename Delta>
void LinearModel::apply(const FeatureVector& features, int gold, int predicted, Delta delta) {
  const int n = num_labels();
  if (gold < 0 || gold >= n || predicted < 0 || predicted >= n) {
    throw std::invalid_argument("label index out of range");
  }
  // The step being taken is update_count_ + 1; its delta persists for the
  // remaining steps, so it is accumulated with weight update_count_.
  const double step = static_cast<double>(update_count_);
  if (gold != predicted) {
    for (const auto& [id, value] : features.entries()) {
      const double d = delta(value);
      if (d == 0.0) continue;
      const size_t r = row(id) * n;
      weights_[r + gold] += d;
      accumulated_[r + gold] += step * d;
      weights_[r + predicted] -= d;
      accumulated_[r + predicted] -= step * d;
    }
  }
  ++update_count_;
}

void LinearModel::update(const FeatureVector& features, int gold, int predicted, double cost) {
  apply(features, gold, predicted, [cost](double value) { return cost * value; });
}

void LinearModel::update_standard(const FeatureVector& features, int gold, int predicted) {
  apply(features, gold, predicted, [](double value) { return value; });
}

std::vector<LinearModel::Record> LinearModel::records() const {
  std::vector<std::pair<FeatureId, size_t>> rows(index_.begin(), index_.end());
  std::sort(rows.begin(), rows.end());
  const size_t n = labels_.size();
  std::vector<Record> out;
  for (const auto& [id, r] : rows) {
    for (size_t l = 0; l < n; ++l) {
      const double w = weights_[r * n + l];
      const double u = accumulated_[r * n + l];
      if (w != 0.0 || u != 0.0) out.push_back({id, static_cast<int>(l), w, u});
    }
  }
  return out;
}

LinearModel LinearModel::from_records(std::vector<std::string> labels,
                                      std::int64_t update_count,
                                      const std::vector<Record>& records) {
  LinearModel m(std::move(labels));
  m.update_count_ = update_count;
  const size_t n = m.labels_.size();
  for (const auto& rec : records) {
    if (rec.label < 0 || static_cast<size_t>(rec.label) >= n) {
      throw std::invalid_argument("record label index out of range");
    }
    const size_t r = m.row(rec.feature);
    m.weights_[r * n + rec.label] = rec.weight;
    m.accumulated_[r * n + rec.label] = rec.accumulated;
  }
  return m;
}

bool LinearModel::operator==(const LinearModel& other) const {
  return labels_ == other.labels_ && update_count_ == other.update_count_ &&
         records() == other.records();
}

void perceptron_update(LinearModel& model, const TrainingInstance& inst,
                       std::string_view predicted, UpdateRule rule) {
  const int gold = model.label_index(inst.gold_label);
  const int pred = model.label_index(predicted);
  if (gold < 0) throw std::invalid_argument("gold label '" + inst.gold_label + "' not in model");
  if (pred < 0) {
    throw std::invalid_argument("predicted label '" + std::string(predicted) + "' not in model");
  }
  if (rule == UpdateRule::kStandard) {
    model.update_standard(inst.features, gold, pred);
  } else {
    model.update(inst.features, gold, pred, inst.cost);
  }
}

SeededShuffler::SeededShuffler(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SeededShuffler::next() { return engine_(); }

void SeededShuffler::shuffle(std::vector<size_t>& order) {
  for (size_t i = order.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(engine_() % i);
    std::swap(order[i - 1], order[j]);
  }
}

LinearModel train_stage(const std::vector<TrainingInstance>& instances,
                        const TrainOptions& options) {
  if (instances.empty()) throw std::invalid_argument("train_stage: no training instances");
  if (options.epochs < 1) throw std::invalid_argument("train_stage: epochs must be >= 1");

  std::vector<std::string> labels = options.labels;
  if (labels.empty()) {
    for (const auto& inst : instances) labels.push_back(inst.gold_label);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  }
  LinearModel model = options.warm_start ? *options.warm_start : LinearModel(labels);
  for (const auto& l : labels) model.add_label(l);

  std::vector<int> gold(instances.size());
  for (size_t i = 0; i < instances.size(); ++i) {
    gold[i] = model.label_index(instances[i].gold_label);
    if (gold[i] < 0) {
      throw std::invalid_argument("gold label '" + instances[i].gold_label +
                                  "' missing from label set");
    }
    if (!(instances[i].cost >= 0.0 && instances[i].cost <= 1.0)) {
      throw std::invalid_argument("instance cost outside [0,1]");
    }
  }

  SeededShuffler shuffler(options.seed);
  std::vector<size_t> order(instances.size());
  std::iota(order.begin(), order.end(), size_t{0});
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    shuffler.shuffle(order);
    for (size_t i : order) {
      const TrainingInstance& inst = instances[i];
      const int predicted = model.predict_index(inst.features, false);
      if (options.rule == UpdateRule::kStandard) {
        model.update_standard(inst.features, gold[i], predicted);
      } else {
        model.update(inst.features, gold[i], predicted, inst.cost);
      }
    }
  }
  return model;
}

}  // namespace xlsrl
