#include "xlsrl/pipeline.h"

#include <charconv>
#include <cstdio>

#include "xlsrl/error.h"
#include "xlsrl/util.h"

namespace xlsrl {

namespace {

constexpr std::string_view kMagic = "xlsrl-bundle";
constexpr int kVersion = 1;

bool is_binary(Stage stage) {
  return stage == Stage::kPredicateIdentification || stage == Stage::kArgumentIdentification;
}

std::string predict_sense(const LinearModel& model, const Sentence& s, int pred) {
  const FeatureVector fv = extract_features(s, Stage::kPredicateSense, pred, pred);
  const std::string prefix = s.token(pred).lemma + ".";
  std::vector<bool> allowed(model.labels().size(), false);
  bool any = false;
  for (size_t l = 0; l < allowed.size(); ++l) {
    if (model.labels()[l].compare(0, prefix.size(), prefix) == 0) allowed[l] = any = true;
  }
  if (!any) return prefix + "01";
  return model.labels()[model.predict_index(fv, true, allowed)];
}

template <typename T>
T parse_field(std::string_view field, int line, int base = 10) {
  T value{};
  std::from_chars_result r;
  if constexpr (std::is_floating_point_v<T>) {
    r = std::from_chars(field.data(), field.data() + field.size(), value);
  } else {
    r = std::from_chars(field.data(), field.data() + field.size(), value, base);
  }
  if (field.empty() || r.ec != std::errc() || r.ptr != field.data() + field.size()) {
    throw ParseError("bad model field '" + std::string(field) + "'", line);
  }
  return value;
}

}  // namespace

const LinearModel& ModelBundle::at(Stage stage) const {
  auto it = models.find(stage);
  if (it == models.end()) throw DataError("model bundle lacks stage " + stage_name(stage));
  return it->second;
}

std::string write_bundle(const ModelBundle& bundle) {
  std::string out = std::string(kMagic) + "\t" + std::to_string(kVersion) + "\n";
  for (const auto& [stage, model] : bundle.models) {
    const auto records = model.records();
    out += "stage\t" + stage_name(stage) + "\t" + std::to_string(model.num_labels()) + "\t" +
           std::to_string(model.update_count()) + "\t" + std::to_string(records.size()) + "\n";
    for (const auto& label : model.labels()) out += "label\t" + label + "\n";
    char hex[17];
    for (const auto& rec : records) {
      std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(rec.feature));
      out += hex;
      out += '\t' + std::to_string(rec.label) + '\t' + format_double(rec.weight) + '\t' +
             format_double(rec.accumulated) + '\n';
    }
  }
  out += "end\n";
  return out;
}

ModelBundle parse_bundle(std::string_view text) {
  const auto lines = split_lines(text);
  size_t i = 0;
  auto line_no = [&] { return static_cast<int>(i + 1); };
  auto next = [&]() -> std::string_view {
    if (i >= lines.size()) throw ParseError("truncated model file", static_cast<int>(i));
    return lines[i++];
  };

  {
    const auto header = split(next(), '\t');
    if (header.size() != 2 || header[0] != kMagic) throw ParseError("not a model bundle", 1);
    if (parse_field<int>(header[1], 1) != kVersion) {
      throw ParseError("unsupported model version " + std::string(header[1]), 1);
    }
  }
  ModelBundle bundle;
  while (true) {
    const std::string_view line = next();
    if (line == "end") break;
    const auto f = split(line, '\t');
    const int at = static_cast<int>(i);
    if (f.size() != 5 || f[0] != "stage") throw ParseError("expected stage header", at);
    Stage stage;
    try {
      stage = parse_stage(f[1]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), at);
    }
    const int n_labels = parse_field<int>(f[2], at);
    const auto updates = parse_field<std::int64_t>(f[3], at);
    const auto n_records = parse_field<size_t>(f[4], at);
    std::vector<std::string> labels;
    for (int l = 0; l < n_labels; ++l) {
      const auto lf = split(next(), '\t');
      if (lf.size() != 2 || lf[0] != "label") throw ParseError("expected label line", line_no() - 1);
      labels.emplace_back(lf[1]);
    }
    std::vector<LinearModel::Record> records;
    records.reserve(n_records);
    for (size_t r = 0; r < n_records; ++r) {
      const auto rf = split(next(), '\t');
      const int rl = line_no() - 1;
      if (rf.size() != 4) throw ParseError("expected weight record", rl);
      LinearModel::Record rec;
      rec.feature = parse_field<FeatureId>(rf[0], rl, 16);
      rec.label = parse_field<int>(rf[1], rl);
      rec.weight = parse_field<double>(rf[2], rl);
      rec.accumulated = parse_field<double>(rf[3], rl);
      if (rec.label < 0 || rec.label >= n_labels) throw ParseError("label index out of range", rl);
      records.push_back(rec);
    }
    if (bundle.models.count(stage)) throw ParseError("duplicate stage " + stage_name(stage), at);
    bundle.models.emplace(stage, LinearModel::from_records(std::move(labels), updates, records));
  }
  return bundle;
}

Sentence run_pipeline(const ModelBundle& bundle, const Sentence& sentence, bool gold_predicates) {
  Sentence out = sentence;
  out.provenance = Provenance::kPredicted;
  out.frames.clear();

  if (gold_predicates) {
    for (const auto& frame : sentence.frames) {
      out.frames.push_back({frame.predicate_index, frame.sense, {}});
    }
  } else {
    const LinearModel& ident = bundle.at(Stage::kPredicateIdentification);
    const LinearModel& sense = bundle.at(Stage::kPredicateSense);
    for (int p = 1; p <= out.size(); ++p) {
      const auto fv = extract_features(out, Stage::kPredicateIdentification, p, p);
      if (ident.predict(fv, true) == kYes) {
        out.frames.push_back({p, predict_sense(sense, out, p), {}});
      }
    }
  }
  if (out.frames.empty()) return out;

  const LinearModel& arg_ident = bundle.at(Stage::kArgumentIdentification);
  const LinearModel& arg_class = bundle.at(Stage::kArgumentClassification);
  for (auto& frame : out.frames) {
    for (int a = 1; a <= out.size(); ++a) {
      if (a == frame.predicate_index) continue;
      const auto fv = extract_features(out, Stage::kArgumentIdentification, a,
                                       frame.predicate_index);
      if (arg_ident.predict(fv, true) != kYes) continue;
      frame.args.emplace(a, arg_class.predict(fv, true));
    }
  }
  return out;
}

std::vector<Sentence> run_pipeline(const ModelBundle& bundle, const std::vector<Sentence>& corpus,
                                   bool gold_predicates, int workers) {
  std::vector<Sentence> out(corpus.size());
  parallel_for(corpus.size(), workers,
               [&](size_t i) { out[i] = run_pipeline(bundle, corpus[i], gold_predicates); });
  return out;
}

std::map<Stage, std::vector<TrainingInstance>> supervised_instances(
    const std::vector<Sentence>& sentences) {
  std::map<Stage, std::vector<TrainingInstance>> out;
  for (const auto& s : sentences) {
    for (int t = 1; t <= s.size(); ++t) {
      TrainingInstance inst;
      inst.features = extract_features(s, Stage::kPredicateIdentification, t, t);
      inst.gold_label = s.find_frame(t) ? kYes : kNo;
      out[Stage::kPredicateIdentification].push_back(std::move(inst));
    }
    for (const auto& frame : s.frames) {
      const int p = frame.predicate_index;
      out[Stage::kPredicateSense].push_back(
          {extract_features(s, Stage::kPredicateSense, p, p), frame.sense});
      for (int a = 1; a <= s.size(); ++a) {
        if (a == p) continue;
        auto fv = extract_features(s, Stage::kArgumentIdentification, a, p);
        auto role = frame.args.find(a);
        if (role != frame.args.end()) {
          out[Stage::kArgumentClassification].push_back({fv, role->second});
        }
        out[Stage::kArgumentIdentification].push_back(
            {std::move(fv), std::string(role != frame.args.end() ? kYes : kNo)});
      }
    }
  }
  return out;
}

ModelBundle train_bundle(const std::map<Stage, std::vector<TrainingInstance>>& instances,
                         const TrainOptions& options, const ModelBundle* warm_start) {
  ModelBundle bundle;
  for (const auto& [stage, list] : instances) {
    if (list.empty()) continue;
    TrainOptions stage_options = options;
    stage_options.seed = options.seed + static_cast<std::uint64_t>(stage);
    if (is_binary(stage)) stage_options.labels = {std::string(kNo), std::string(kYes)};
    stage_options.warm_start =
        warm_start && warm_start->has(stage) ? &warm_start->at(stage) : nullptr;
    bundle.models.emplace(stage, train_stage(list, stage_options));
  }
  return bundle;
}

ModelBundle train_supervised(const std::vector<Sentence>& sentences, const TrainOptions& options) {
  return train_bundle(supervised_instances(sentences), options);
}

}  // namespace xlsrl
