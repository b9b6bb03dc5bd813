#ifndef XLSRL_EVAL_H_
#define XLSRL_EVAL_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "xlsrl/conll.h"
#include "xlsrl/project.h"

namespace xlsrl {

struct Counts {
  long true_positives = 0;
  long false_positives = 0;
  long false_negatives = 0;

  Counts& operator+=(const Counts& o) {
    true_positives += o.true_positives;
    false_positives += o.false_positives;
    false_negatives += o.false_negatives;
    return *this;
  }
  bool operator==(const Counts&) const = default;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // Precision is 0 with no predictions, recall is 0 with no gold items.
  static Prf from_counts(const Counts& c);
};

// (predicate POS, role), e.g. {"VERB", "A0"}.
using DependencyKey = std::pair<std::string, std::string>;

struct DependencyScore {
  Prf prf;
  Counts counts;
  long support = 0;  // gold items
};

struct EvalReport {
  Prf overall;
  Counts counts;
  std::map<DependencyKey, DependencyScore> per_dependency;

  // Zero scores and support for keys never seen.
  DependencyScore dependency(const DependencyKey& key) const;
};

struct ScoreOptions {
  bool gold_predicate_mode = true;
  // Roles removed from both sides before scoring.
  RoleBlacklist excluded = RoleBlacklist::defaults();
};

// Labeled scoring of (predicate, argument, role) triples. Outside gold
// predicate mode each predicate also contributes a (predicate, sense) item
// keyed by role "SENSE". Throws DataError on corpus or sentence length
// mismatches.
EvalReport score(const std::vector<Sentence>& gold, const std::vector<Sentence>& pred,
                 const ScoreOptions& options = {});

std::string format_report(const EvalReport& report);
// Columns: scope,pos,role,precision,recall,f1,support,tp,fp,fn
std::string report_csv(const EvalReport& report);

struct RoundReport {
  int round = 0;
  EvalReport report;
};

// One row per (round, key): round,pos,role,precision,recall,f1,support.
std::string emit_iteration_curves(const std::vector<RoundReport>& reports,
                                  const std::vector<DependencyKey>& keys);

// Parses "VERB+A0".
DependencyKey parse_dependency_key(const std::string& text);

}  // namespace xlsrl

#endif  // XLSRL_EVAL_H_
