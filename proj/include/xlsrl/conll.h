#ifndef XLSRL_CONLL_H_
#define XLSRL_CONLL_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace xlsrl {

// One row of a CoNLL-2009 file.
//
// `lemma`, `pos`, `head` and `deprel` hold the predicted columns (PLEMMA,
// PPOS, PHEAD, PDEPREL); these are what every model reads. The gold columns
// are carried through unchanged so that files round-trip.
struct Token {
  int index = 0;
  std::string form;
  std::string lemma;
  std::string pos;
  int head = 0;
  std::string deprel;

  std::string gold_lemma;
  std::string gold_pos;
  std::optional<int> gold_head;
  std::string gold_deprel;
  std::string feat = "_";
  std::string pfeat = "_";

  bool operator==(const Token&) const = default;
};

struct PredicateFrame {
  int predicate_index = 0;
  std::string sense;
  std::map<int, std::string> args;  // token index -> role

  bool operator==(const PredicateFrame&) const = default;
};

enum class Provenance { kGold, kProjected, kPredicted };

struct Sentence {
  std::vector<Token> tokens;
  std::vector<PredicateFrame> frames;
  Provenance provenance = Provenance::kGold;

  int size() const { return static_cast<int>(tokens.size()); }
  // 1-based access.
  const Token& token(int index) const { return tokens.at(index - 1); }

  const PredicateFrame* find_frame(int predicate_index) const;
  PredicateFrame* find_frame(int predicate_index);
  // Token indices whose head is `index`, ascending.
  std::vector<int> dependents(int index) const;

  bool operator==(const Sentence&) const = default;
};

// The 12-tag universal part-of-speech set.
const std::set<std::string>& universal_tagset();

struct ConllOptions {
  Provenance provenance = Provenance::kGold;
  // When set, every PPOS value must be a member.
  std::optional<std::set<std::string>> pos_tagset;
};

// Throws ParseError (with line number) on malformed rows and StructureError
// when the PHEAD column does not form a single-rooted tree.
std::vector<Sentence> parse_conll(std::string_view text, const ConllOptions& options = {});
std::string write_conll(const std::vector<Sentence>& sentences);

// Checks tree and frame invariants; throws StructureError.
void validate_sentence(const Sentence& sentence);

// Reads a whole file; throws DataError if it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// Builds a token with gold columns mirroring the predicted ones.
Token make_token(int index, std::string form, std::string lemma, std::string pos, int head,
                 std::string deprel);

}  // namespace xlsrl

#endif  // XLSRL_CONLL_H_
