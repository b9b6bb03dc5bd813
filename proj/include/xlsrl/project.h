#ifndef XLSRL_PROJECT_H_
#define XLSRL_PROJECT_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "xlsrl/align.h"
#include "xlsrl/conll.h"

namespace xlsrl {

// Projection density of a sentence pair: (p' * f) / (p * w).
struct DensityScore {
  double value = 0.0;
  int aligned_words = 0;         // f: target tokens with at least one link
  int total_words = 0;           // w: target length
  int projected_predicates = 0;  // p': source predicates whose token is linked
  int source_predicates = 0;     // p
};

DensityScore projection_density(const SentencePair& pair);

// Keeps pairs with density >= threshold, in input order. Throws
// std::invalid_argument unless 0 <= threshold <= 1.
std::vector<SentencePair> filter_by_density(const std::vector<SentencePair>& corpus,
                                            double threshold);
std::vector<size_t> kept_by_density(const std::vector<SentencePair>& corpus, double threshold);

enum class CostMode { kUniform, kComp, kDep, kCompDep };

// Accepts "uniform", "comp", "dep", "comp+dep" (and "comp_dep").
CostMode parse_cost_mode(std::string_view name);
std::string cost_mode_name(CostMode mode);

struct CostVector {
  double comp = 1.0;
  double dep = 1.0;
  double combined = 1.0;

  static CostVector from_parts(double comp, double dep) { return {comp, dep, (comp + dep) / 2}; }
  double select(CostMode mode) const;
  bool operator==(const CostVector&) const = default;
};

enum class InstanceKind { kPredicate, kArgument };

struct ProjectedInstance {
  int sentence_id = 0;
  int token_index = 0;
  int predicate_index = 0;  // target predicate of the frame; equals token_index for predicates
  InstanceKind kind = InstanceKind::kArgument;
  std::string label;
  int source_token_index = 0;
  std::string source_deprel;
  std::string target_deprel;
  CostVector cost;
  double weight = 1.0;  // the cost selected by the active CostMode
};

// Roles never projected. With `match_prefix`, "AM" also blocks "AM-TMP" etc.
struct RoleBlacklist {
  std::set<std::string> roles;
  bool match_prefix = true;

  bool blocks(std::string_view role) const;
  static RoleBlacklist defaults() { return {{"AM"}, true}; }
};

// Two source tokens of one frame landing on the same target token.
struct ProjectionCollision {
  int predicate_index = 0;  // target
  int target_index = 0;
  int kept_source = 0;
  int dropped_source = 0;
  std::string kept_label;
  std::string dropped_label;
};

struct ProjectionResult {
  Sentence target;
  std::vector<ProjectedInstance> instances;
  std::vector<ProjectionCollision> collisions;
};

// Copies predicate senses and argument roles across the pair's alignment.
// Instances are emitted frame by frame (ascending target predicate), the
// predicate first, then its arguments in ascending token order.
ProjectionResult project_pair(const SentencePair& pair, const RoleBlacklist& blacklist,
                              int sentence_id = 0);

// Fraction of verbs and direct dependents of verbs carrying a projected label.
double completeness_cost(const Sentence& target);

// 1.0 when the source and target relations match, 0.5 otherwise.
double dep_match_cost(std::string_view source_deprel, std::string_view target_deprel);
double dep_match_cost(const ProjectedInstance& instance);

// Fills cost and weight. `completeness` is indexed by sentence_id. Predicate
// instances always get dep = 1.
void assign_costs(std::vector<ProjectedInstance>& instances, CostMode mode,
                  const std::vector<double>& completeness);

std::string instance_kind_name(InstanceKind kind);

}  // namespace xlsrl

#endif  // XLSRL_PROJECT_H_
