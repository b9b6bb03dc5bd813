#include "xlsrl/bootstrap.h"

#include <stdexcept>

#include "xlsrl/error.h"
#include "xlsrl/util.h"

namespace xlsrl {

namespace {

std::vector<bool> aligned_targets(const Sentence& target, const AlignmentSet& alignment) {
  std::vector<bool> aligned(target.tokens.size(), false);
  for (const auto& link : alignment.links) {
    if (link.target < 1 || link.target > target.size()) {
      throw DataError("alignment target " + std::to_string(link.target) +
                      " outside sentence of length " + std::to_string(target.size()));
    }
    aligned[link.target - 1] = true;
  }
  return aligned;
}

std::map<Stage, std::vector<TrainingInstance>> argument_instances(
    const std::vector<const std::vector<ArgumentSlot>*>& pools, CostMode mode) {
  std::map<Stage, std::vector<TrainingInstance>> out;
  auto& ident = out[Stage::kArgumentIdentification];
  auto& cls = out[Stage::kArgumentClassification];
  for (const auto* pool : pools) {
    for (const auto& slot : *pool) {
      if (slot.label.empty()) continue;
      const double cost = slot.cost.select(mode);
      const bool is_arg = slot.label != kNoRole;
      ident.push_back({slot.features, std::string(is_arg ? kYes : kNo), cost, slot.origin});
      if (is_arg) cls.push_back({slot.features, slot.label, cost, slot.origin});
    }
  }
  return out;
}

void label_slots(std::vector<ArgumentSlot>& slots, const ModelBundle& model, InstanceOrigin origin,
                 int workers) {
  const LinearModel& ident = model.at(Stage::kArgumentIdentification);
  const LinearModel* cls =
      model.has(Stage::kArgumentClassification) ? &model.at(Stage::kArgumentClassification)
                                                : nullptr;
  parallel_for(slots.size(), workers, [&](size_t i) {
    ArgumentSlot& slot = slots[i];
    if (cls && ident.predict(slot.features, true) == kYes) {
      slot.label = cls->predict(slot.features, true);
    } else {
      slot.label = kNoRole;
    }
    slot.origin = origin;
  });
}

}  // namespace

BootstrapVariant parse_variant(std::string_view name) {
  if (name == "fill-in" || name == "fill_in") return BootstrapVariant::kFillIn;
  if (name == "relabel") return BootstrapVariant::kRelabel;
  throw std::invalid_argument("unknown bootstrap variant '" + std::string(name) + "'");
}

std::string variant_name(BootstrapVariant variant) {
  return variant == BootstrapVariant::kFillIn ? "fill-in" : "relabel";
}

void BootstrapConfig::validate() const {
  if (iterations < 0) throw std::invalid_argument("bootstrap iterations must be >= 0");
  if (epochs_per_round < 1) throw std::invalid_argument("epochs per round must be >= 1");
}

PartitionedData partition(const std::vector<ProjectedSentence>& corpus) {
  PartitionedData data;
  data.sentences.reserve(corpus.size());
  for (size_t si = 0; si < corpus.size(); ++si) {
    const ProjectedSentence& ps = corpus[si];
    const Sentence& s = ps.target;
    if (ps.aligned.size() != s.tokens.size()) {
      throw DataError("sentence " + std::to_string(si) + ": alignment mask length mismatch");
    }
    data.sentences.push_back(s);
    const CostVector sentence_cost = CostVector::from_parts(ps.completeness, 1.0);

    for (int t = 1; t <= s.size(); ++t) {
      if (!ps.aligned[t - 1]) continue;
      data.predicate_instances[Stage::kPredicateIdentification].push_back(
          {extract_features(s, Stage::kPredicateIdentification, t, t),
           std::string(s.find_frame(t) ? kYes : kNo)});
    }
    for (const auto& frame : s.frames) {
      const int p = frame.predicate_index;
      data.predicate_instances[Stage::kPredicateSense].push_back(
          {extract_features(s, Stage::kPredicateSense, p, p), frame.sense});
      for (int a = 1; a <= s.size(); ++a) {
        if (a == p) continue;
        ArgumentSlot slot;
        slot.sentence = static_cast<int>(si);
        slot.predicate = p;
        slot.token = a;
        slot.features = extract_features(s, Stage::kArgumentIdentification, a, p);
        slot.cost = sentence_cost;
        if (!ps.aligned[a - 1]) {
          data.unlabeled.push_back(std::move(slot));
          continue;
        }
        auto role = frame.args.find(a);
        if (role != frame.args.end()) {
          slot.label = role->second;
          auto dep = ps.argument_dep.find({p, a});
          slot.cost = CostVector::from_parts(ps.completeness,
                                             dep == ps.argument_dep.end() ? 1.0 : dep->second);
        } else {
          slot.label = kNoRole;
        }
        slot.projected_label = slot.label;
        data.labeled.push_back(std::move(slot));
      }
    }
  }
  return data;
}

ProjectedSentence make_projected_sentence(const SentencePair& pair,
                                          const ProjectionResult& result) {
  ProjectedSentence ps;
  ps.target = result.target;
  ps.aligned = aligned_targets(pair.target, pair.alignment);
  ps.completeness = completeness_cost(result.target);
  for (const auto& inst : result.instances) {
    if (inst.kind == InstanceKind::kArgument) {
      ps.argument_dep[{inst.predicate_index, inst.token_index}] = dep_match_cost(inst);
    }
  }
  return ps;
}

std::vector<ProjectedSentence> load_projected(const std::vector<Sentence>& targets,
                                              const std::vector<AlignmentSet>& alignments,
                                              const std::vector<CostRow>& costs) {
  if (targets.size() != alignments.size()) {
    throw DataError("projected corpus has " + std::to_string(targets.size()) +
                    " sentences but alignment file has " + std::to_string(alignments.size()) +
                    " lines");
  }
  std::vector<ProjectedSentence> out;
  size_t row = 0;
  auto expect = [&](int sid, int token, InstanceKind kind, const std::string& label) {
    if (row >= costs.size()) {
      throw DataError("cost sidecar ends before sentence " + std::to_string(sid));
    }
    const CostRow& r = costs[row++];
    if (r.sentence_id != sid || r.token_index != token || r.kind != kind || r.label != label) {
      throw DataError("cost sidecar row " + std::to_string(row) + " does not match sentence " +
                      std::to_string(sid) + " token " + std::to_string(token) + " (" +
                      instance_kind_name(kind) + " " + label + ")");
    }
    return r.cost;
  };
  for (size_t si = 0; si < targets.size(); ++si) {
    ProjectedSentence ps;
    ps.target = targets[si];
    ps.aligned = aligned_targets(targets[si], alignments[si]);
    ps.completeness = completeness_cost(targets[si]);
    const int sid = static_cast<int>(si);
    for (const auto& frame : targets[si].frames) {
      ps.completeness = expect(sid, frame.predicate_index, InstanceKind::kPredicate, frame.sense).comp;
      for (const auto& [idx, role] : frame.args) {
        ps.argument_dep[{frame.predicate_index, idx}] =
            expect(sid, idx, InstanceKind::kArgument, role).dep;
      }
    }
    out.push_back(std::move(ps));
  }
  if (row != costs.size()) {
    throw DataError("cost sidecar has " + std::to_string(costs.size() - row) + " extra rows");
  }
  return out;
}

std::vector<ProjectedSentence> load_projected(const std::vector<Sentence>& targets,
                                              const std::vector<AlignmentSet>& alignments) {
  if (targets.size() != alignments.size()) {
    throw DataError("projected corpus has " + std::to_string(targets.size()) +
                    " sentences but alignment file has " + std::to_string(alignments.size()) +
                    " lines");
  }
  std::vector<ProjectedSentence> out;
  for (size_t si = 0; si < targets.size(); ++si) {
    ProjectedSentence ps;
    ps.target = targets[si];
    ps.aligned = aligned_targets(targets[si], alignments[si]);
    ps.completeness = completeness_cost(targets[si]);
    out.push_back(std::move(ps));
  }
  return out;
}

BootstrapResult bootstrap(PartitionedData data, const BootstrapConfig& config,
                          const RoundCallback& on_round) {
  config.validate();
  if (data.labeled.empty()) throw std::invalid_argument("bootstrap: labeled data D_L is empty");

  TrainOptions options;
  options.epochs = config.epochs_per_round;
  options.seed = config.seed;

  BootstrapResult result;
  // Predicate stages see the same projected data every round, so one run serves all.
  ModelBundle predicate_models;
  {
    predicate_models = train_bundle(data.predicate_instances, options);
  }

  auto train_round = [&](const std::vector<const std::vector<ArgumentSlot>*>& pools,
                         const ModelBundle* previous) {
    ModelBundle bundle = train_bundle(argument_instances(pools, config.cost_mode), options,
                                      config.warm_start ? previous : nullptr);
    for (const auto& [stage, model] : predicate_models.models) bundle.models.emplace(stage, model);
    ++result.training_runs;
    return bundle;
  };

  ModelBundle model = train_round({&data.labeled}, nullptr);
  if (on_round) on_round(0, model);

  for (int round = 1; round <= config.iterations; ++round) {
    label_slots(data.unlabeled, model, InstanceOrigin::kFilledIn, config.workers);
    ++result.labeling_passes;
    if (config.variant == BootstrapVariant::kRelabel) {
      label_slots(data.labeled, model, InstanceOrigin::kRelabeled, config.workers);
    }
    model = train_round({&data.labeled, &data.unlabeled}, &model);
    if (on_round) on_round(round, model);
  }
  result.model = std::move(model);
  result.data = std::move(data);
  return result;
}

EvalReport checkpoint_metrics(int /*round*/, const ModelBundle& model,
                              const std::vector<Sentence>& dev, int workers,
                              const ScoreOptions& options) {
  const auto predicted = run_pipeline(model, dev, /*gold_predicates=*/true, workers);
  ScoreOptions gold_mode = options;
  gold_mode.gold_predicate_mode = true;
  return score(dev, predicted, gold_mode);
}

std::string metrics_csv_header() { return "round,stage,scope,precision,recall,f1\n"; }

std::string metrics_csv_rows(int round, std::string_view stage, const EvalReport& report) {
  auto row = [&](const std::string& scope, const Prf& prf) {
    return std::to_string(round) + "," + std::string(stage) + "," + scope + "," +
           format_double(prf.precision) + "," + format_double(prf.recall) + "," +
           format_double(prf.f1) + "\n";
  };
  std::string out = row("overall", report.overall);
  for (const auto& [key, d] : report.per_dependency) {
    out += row(key.first + "+" + key.second, d.prf);
  }
  return out;
}

}  // namespace xlsrl
