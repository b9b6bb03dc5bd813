#include "xlsrl/features.h"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace xlsrl {

namespace {

constexpr int kMaxPathArcs = 8;
constexpr int kMaxDistance = 10;

std::vector<int> chain_to_root(const Sentence& s, int index) {
  std::vector<int> chain;
  for (int cur = index; cur != 0; cur = s.token(cur).head) chain.push_back(cur);
  return chain;
}

void check_index(const Sentence& s, int index, const char* what) {
  if (index < 1 || index > s.size()) {
    throw std::invalid_argument(std::string(what) + " index " + std::to_string(index) +
                                " out of range 1.." + std::to_string(s.size()));
  }
}

void add_predicate_features(const Sentence& s, int pred, std::vector<std::string>& out) {
  const Token& p = s.token(pred);
  out.push_back("pred-lemma=" + p.lemma);
  out.push_back("pred-pos=" + p.pos);
  out.push_back("pred-deprel=" + p.deprel);
  out.push_back(p.head == 0 ? "pred-head=ROOT" : "pred-head=" + s.token(p.head).pos);
}

}  // namespace

std::string stage_name(Stage stage) {
  switch (stage) {
    case Stage::kPredicateIdentification: return "pred-id";
    case Stage::kPredicateSense: return "pred-sense";
    case Stage::kArgumentIdentification: return "arg-id";
    case Stage::kArgumentClassification: return "arg-class";
  }
  return "";
}

Stage parse_stage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (stage_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown stage '" + std::string(name) + "'");
}

FeatureId hash_feature(std::string_view name) {
  FeatureId h = 14695981039346656037ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

FeatureVector FeatureVector::from_ids(std::vector<FeatureId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  FeatureVector fv;
  fv.entries_.reserve(ids.size());
  for (FeatureId id : ids) fv.entries_.emplace_back(id, 1.0);
  return fv;
}

FeatureVector FeatureVector::from_names(const std::vector<std::string>& names) {
  std::vector<FeatureId> ids;
  ids.reserve(names.size());
  for (const auto& n : names) ids.push_back(hash_feature(n));
  return from_ids(std::move(ids));
}

bool FeatureVector::contains(FeatureId id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{id, 0.0},
                             [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return it != entries_.end() && it->first == id;
}

std::string dependency_path(const Sentence& s, int from, int to) {
  if (from == to) return "self";
  const std::vector<int> up = chain_to_root(s, from);
  const std::vector<int> down = chain_to_root(s, to);
  const std::set<int> down_set(down.begin(), down.end());

  std::vector<std::string> arcs;
  int lca = 0;
  for (int node : up) {
    if (down_set.count(node)) {
      lca = node;
      break;
    }
    arcs.push_back(s.token(node).deprel + "↑");
  }
  // Nodes strictly below the common ancestor on the predicate side, top-down.
  std::vector<int> descent;
  for (int node : down) {
    if (node == lca) break;
    descent.push_back(node);
  }
  for (auto it = descent.rbegin(); it != descent.rend(); ++it) {
    arcs.push_back(s.token(*it).deprel + "↓");
  }

  std::string path;
  const int n = std::min<int>(static_cast<int>(arcs.size()), kMaxPathArcs);
  for (int i = 0; i < n; ++i) path += arcs[i];
  if (static_cast<int>(arcs.size()) > kMaxPathArcs) path += "…";
  return path;
}

std::vector<std::string> feature_names(const Sentence& s, Stage stage, int token_index,
                                       int predicate_index) {
  check_index(s, predicate_index, "predicate");
  std::vector<std::string> out;
  out.emplace_back("bias");
  add_predicate_features(s, predicate_index, out);

  if (stage == Stage::kPredicateIdentification || stage == Stage::kPredicateSense) {
    out.push_back("pred-form=" + s.token(predicate_index).form);
    for (int child : s.dependents(predicate_index)) {
      out.push_back("pred-child-deprel=" + s.token(child).deprel);
    }
    return out;
  }

  check_index(s, token_index, "argument");
  const Token& p = s.token(predicate_index);
  const Token& a = s.token(token_index);
  out.push_back("arg-form=" + a.form);
  out.push_back("arg-lemma=" + a.lemma);
  out.push_back("arg-pos=" + a.pos);
  out.push_back("arg-deprel=" + a.deprel);
  out.push_back(a.head == 0 ? "arg-head-pos=ROOT" : "arg-head-pos=" + s.token(a.head).pos);

  const int distance = std::abs(token_index - predicate_index);
  out.push_back("dist=" + (distance > kMaxDistance ? std::to_string(kMaxDistance) + "+"
                                                   : std::to_string(distance)));
  out.push_back(token_index < predicate_index ? "dir=left" : "dir=right");

  const std::string path = dependency_path(s, token_index, predicate_index);
  out.push_back("path=" + path);

  const int lo = std::min(token_index, predicate_index);
  const int hi = std::max(token_index, predicate_index);
  if (hi - lo > 1) {
    out.push_back("between-first-pos=" + s.token(lo + 1).pos);
    out.push_back("between-last-pos=" + s.token(hi - 1).pos);
  } else {
    out.emplace_back("between-first-pos=NONE");
    out.emplace_back("between-last-pos=NONE");
  }

  out.push_back("pred-lemma+arg-deprel=" + p.lemma + "|" + a.deprel);
  out.push_back("pred-pos+path=" + p.pos + "|" + path);
  return out;
}

FeatureVector extract_features(const Sentence& s, Stage stage, int token_index,
                               int predicate_index) {
  return FeatureVector::from_names(feature_names(s, stage, token_index, predicate_index));
}

}  // namespace xlsrl
