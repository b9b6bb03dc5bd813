#ifndef XLSRL_SIDECAR_H_
#define XLSRL_SIDECAR_H_

#include <string>
#include <string_view>
#include <vector>

#include "xlsrl/project.h"
#include "xlsrl/util.h"

namespace xlsrl {

// Per-instance cost file written next to a projected corpus. TSV with a
// header line and columns
//   sentence_id token_index kind label comp dep combined
// Rows follow the instance order of project_pair.
struct CostRow {
  int sentence_id = 0;
  int token_index = 0;
  InstanceKind kind = InstanceKind::kArgument;
  std::string label;
  CostVector cost;

  bool operator==(const CostRow&) const = default;
};

std::string write_cost_sidecar(const std::vector<ProjectedInstance>& instances);
std::vector<CostRow> parse_cost_sidecar(std::string_view text);

}  // namespace xlsrl

#endif  // XLSRL_SIDECAR_H_
