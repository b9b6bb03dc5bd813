#include "xlsrl/project.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace xlsrl {

DensityScore projection_density(const SentencePair& pair) {
  DensityScore d;
  d.total_words = pair.target.size();
  std::set<int> aligned_targets;
  std::set<int> aligned_sources;
  for (const auto& link : pair.alignment.links) {
    aligned_targets.insert(link.target);
    aligned_sources.insert(link.source);
  }
  d.aligned_words = static_cast<int>(aligned_targets.size());
  d.source_predicates = static_cast<int>(pair.source.frames.size());
  for (const auto& frame : pair.source.frames) {
    if (aligned_sources.count(frame.predicate_index)) ++d.projected_predicates;
  }
  if (d.source_predicates > 0 && d.total_words > 0) {
    d.value = (static_cast<double>(d.projected_predicates) * d.aligned_words) /
              (static_cast<double>(d.source_predicates) * d.total_words);
  }
  return d;
}

std::vector<size_t> kept_by_density(const std::vector<SentencePair>& corpus, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("density threshold must lie in [0,1], got " +
                                std::to_string(threshold));
  }
  std::vector<size_t> kept;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (projection_density(corpus[i]).value >= threshold) kept.push_back(i);
  }
  return kept;
}

std::vector<SentencePair> filter_by_density(const std::vector<SentencePair>& corpus,
                                            double threshold) {
  std::vector<SentencePair> out;
  for (size_t i : kept_by_density(corpus, threshold)) out.push_back(corpus[i]);
  return out;
}

CostMode parse_cost_mode(std::string_view name) {
  if (name == "uniform") return CostMode::kUniform;
  if (name == "comp") return CostMode::kComp;
  if (name == "dep") return CostMode::kDep;
  if (name == "comp+dep" || name == "comp_dep") return CostMode::kCompDep;
  throw std::invalid_argument("unknown cost mode '" + std::string(name) + "'");
}

std::string cost_mode_name(CostMode mode) {
  switch (mode) {
    case CostMode::kUniform: return "uniform";
    case CostMode::kComp: return "comp";
    case CostMode::kDep: return "dep";
    case CostMode::kCompDep: return "comp+dep";
  }
  return "uniform";
}

double CostVector::select(CostMode mode) const {
  switch (mode) {
    case CostMode::kUniform: return 1.0;
    case CostMode::kComp: return comp;
    case CostMode::kDep: return dep;
    case CostMode::kCompDep: return combined;
  }
  throw std::invalid_argument("unknown cost mode");
}

bool RoleBlacklist::blocks(std::string_view role) const {
  for (const auto& r : roles) {
    if (role == r) return true;
    if (match_prefix && role.size() > r.size() && role.substr(0, r.size()) == r &&
        role[r.size()] == '-') {
      return true;
    }
  }
  return false;
}

std::string instance_kind_name(InstanceKind kind) {
  return kind == InstanceKind::kPredicate ? "predicate" : "argument";
}

ProjectionResult project_pair(const SentencePair& pair, const RoleBlacklist& blacklist,
                              int sentence_id) {
  ProjectionResult result;
  result.target = pair.target;
  result.target.frames.clear();
  result.target.provenance = Provenance::kProjected;

  std::map<int, std::vector<int>> targets_of;  // source -> ascending targets
  for (const auto& link : pair.alignment.links) targets_of[link.source].push_back(link.target);

  // Projected frame keyed by target predicate, remembering source indices.
  struct Draft {
    PredicateFrame frame;
    int source_predicate = 0;
    std::map<int, int> source_of_arg;  // target token -> source token
  };
  std::map<int, Draft> drafts;

  for (const auto& src_frame : pair.source.frames) {
    auto it = targets_of.find(src_frame.predicate_index);
    if (it == targets_of.end()) continue;
    const int tpred = it->second.front();
    if (auto existing = drafts.find(tpred); existing != drafts.end()) {
      result.collisions.push_back({tpred, tpred, existing->second.source_predicate,
                                   src_frame.predicate_index, existing->second.frame.sense,
                                   src_frame.sense});
      continue;
    }
    Draft draft;
    draft.frame.predicate_index = tpred;
    draft.frame.sense = src_frame.sense;
    draft.source_predicate = src_frame.predicate_index;
    for (const auto& [src_arg, role] : src_frame.args) {
      if (blacklist.blocks(role)) continue;
      auto at = targets_of.find(src_arg);
      if (at == targets_of.end()) continue;
      for (int t : at->second) {
        if (t == tpred) continue;
        auto [slot, inserted] = draft.frame.args.emplace(t, role);
        if (inserted) {
          draft.source_of_arg[t] = src_arg;
        } else if (slot->second != role) {
          result.collisions.push_back(
              {tpred, t, draft.source_of_arg[t], src_arg, slot->second, role});
        }
      }
    }
    drafts.emplace(tpred, std::move(draft));
  }

  for (auto& [tpred, draft] : drafts) {
    ProjectedInstance pred;
    pred.sentence_id = sentence_id;
    pred.token_index = tpred;
    pred.predicate_index = tpred;
    pred.kind = InstanceKind::kPredicate;
    pred.label = draft.frame.sense;
    pred.source_token_index = draft.source_predicate;
    pred.source_deprel = pair.source.token(draft.source_predicate).deprel;
    pred.target_deprel = pair.target.token(tpred).deprel;
    result.instances.push_back(std::move(pred));
    for (const auto& [t, role] : draft.frame.args) {
      ProjectedInstance arg;
      arg.sentence_id = sentence_id;
      arg.token_index = t;
      arg.predicate_index = tpred;
      arg.kind = InstanceKind::kArgument;
      arg.label = role;
      arg.source_token_index = draft.source_of_arg.at(t);
      arg.source_deprel = pair.source.token(arg.source_token_index).deprel;
      arg.target_deprel = pair.target.token(t).deprel;
      result.instances.push_back(std::move(arg));
    }
    result.target.frames.push_back(std::move(draft.frame));
  }
  return result;
}

double completeness_cost(const Sentence& target) {
  std::set<int> scope;
  for (const auto& t : target.tokens) {
    if (t.pos == "VERB") scope.insert(t.index);
  }
  for (const auto& t : target.tokens) {
    if (t.head > 0 && target.token(t.head).pos == "VERB") scope.insert(t.index);
  }
  if (scope.empty()) return 1.0;
  std::set<int> labeled;
  for (const auto& frame : target.frames) {
    labeled.insert(frame.predicate_index);
    for (const auto& [idx, role] : frame.args) labeled.insert(idx);
  }
  int hit = 0;
  for (int idx : scope) hit += labeled.count(idx) ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(scope.size());
}

double dep_match_cost(std::string_view source_deprel, std::string_view target_deprel) {
  return source_deprel == target_deprel ? 1.0 : 0.5;
}

double dep_match_cost(const ProjectedInstance& instance) {
  return dep_match_cost(instance.source_deprel, instance.target_deprel);
}

void assign_costs(std::vector<ProjectedInstance>& instances, CostMode mode,
                  const std::vector<double>& completeness) {
  for (auto& inst : instances) {
    if (inst.sentence_id < 0 || static_cast<size_t>(inst.sentence_id) >= completeness.size()) {
      throw std::invalid_argument("no completeness value for sentence " +
                                  std::to_string(inst.sentence_id));
    }
    const double comp = completeness[inst.sentence_id];
    const double dep = inst.kind == InstanceKind::kArgument ? dep_match_cost(inst) : 1.0;
    inst.cost = CostVector::from_parts(comp, dep);
    inst.weight = inst.cost.select(mode);
  }
}

}  // namespace xlsrl
