#ifndef XLSRL_ALIGN_H_
#define XLSRL_ALIGN_H_

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "xlsrl/conll.h"

namespace xlsrl {

// A word link between 1-based source and target token indices.
struct Link {
  int source = 0;
  int target = 0;

  auto operator<=>(const Link&) const = default;
};

struct AlignmentSet {
  std::set<Link> links;

  bool contains(int source, int target) const { return links.count({source, target}) > 0; }
  bool operator==(const AlignmentSet&) const = default;
};

struct SentencePair {
  Sentence source;
  Sentence target;
  AlignmentSet alignment;
};

// Pharaoh "i-j" lines, one per sentence pair. Indices on disk are 0-based
// unless `one_based` is set; in memory they are always 1-based.
std::vector<AlignmentSet> parse_alignments(std::string_view text, bool one_based = false);
std::string write_alignments(const std::vector<AlignmentSet>& sets, bool one_based = false);

AlignmentSet intersect(const AlignmentSet& forward, const AlignmentSet& backward);

// Swaps the orientation of every link, for backward files written target-source.
AlignmentSet transpose(const AlignmentSet& set);

// Throws DataError when a link falls outside either sentence.
SentencePair make_pair(Sentence source, Sentence target, AlignmentSet alignment);

}  // namespace xlsrl

#endif  // XLSRL_ALIGN_H_
