#ifndef XLSRL_TESTS_FIXTURES_H_
#define XLSRL_TESTS_FIXTURES_H_

#include <cctype>
#include <string>

#include "xlsrl/align.h"
#include "xlsrl/conll.h"

namespace xlsrl::testing {

// "I would urge you to endorse this", with urge.01 {I:A0, you:A1, endorse:A2}
// and endorse.01 {you:A0, this:A1}.
inline const std::string kEnglishUrge =
    "1\tI\ti\ti\tPRON\tPRON\t_\t_\t3\t3\tnsubj\tnsubj\t_\t_\tA0\t_\n"
    "2\twould\twould\twould\tVERB\tVERB\t_\t_\t3\t3\taux\taux\t_\t_\t_\t_\n"
    "3\turge\turge\turge\tVERB\tVERB\t_\t_\t0\t0\tROOT\tROOT\tY\turge.01\t_\t_\n"
    "4\tyou\tyou\tyou\tPRON\tPRON\t_\t_\t6\t6\tnsubj\tnsubj\t_\t_\tA1\tA0\n"
    "5\tto\tto\tto\tPRT\tPRT\t_\t_\t6\t6\taux\taux\t_\t_\t_\t_\n"
    "6\tendorse\tendorse\tendorse\tVERB\tVERB\t_\t_\t3\t3\txcomp\txcomp\tY\tendorse.01\tA2\t_\n"
    "7\tthis\tthis\tthis\tDET\tDET\t_\t_\t6\t6\tdobj\tdobj\t_\t_\t_\tA1\n"
    "\n";

// "Ich bitte Sie um Zustimmung", no SRL.
inline const std::string kGermanBitte =
    "1\tIch\tich\tich\tPRON\tPRON\t_\t_\t2\t2\tnsubj\tnsubj\t_\t_\n"
    "2\tbitte\tbitten\tbitten\tVERB\tVERB\t_\t_\t0\t0\tROOT\tROOT\t_\t_\n"
    "3\tSie\tsie\tsie\tPRON\tPRON\t_\t_\t2\t2\tdobj\tdobj\t_\t_\n"
    "4\tum\tum\tum\tADP\tADP\t_\t_\t2\t2\tadpmod\tadpmod\t_\t_\n"
    "5\tZustimmung\tzustimmung\tzustimmung\tNOUN\tNOUN\t_\t_\t4\t4\tadpobj\tadpobj\t_\t_\n"
    "\n";

// Links between the two sentences above, 0-based Pharaoh.
inline const std::string kUrgeAlignment = "0-0 2-1 3-2 5-4\n";

inline SentencePair urge_pair() {
  auto src = parse_conll(kEnglishUrge);
  auto tgt = parse_conll(kGermanBitte);
  auto links = parse_alignments(kUrgeAlignment);
  return make_pair(src.at(0), tgt.at(0), links.at(0));
}

// Sentence from (form, pos, head, deprel) rows; lemma = lowercase form.
struct Row {
  const char* form;
  const char* pos;
  int head;
  const char* deprel;
};

inline Sentence sentence_of(std::initializer_list<Row> rows) {
  Sentence s;
  int i = 0;
  for (const auto& r : rows) {
    std::string lemma = r.form;
    for (auto& c : lemma) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    s.tokens.push_back(make_token(++i, r.form, lemma, r.pos, r.head, r.deprel));
  }
  return s;
}

}  // namespace xlsrl::testing

#endif  // XLSRL_TESTS_FIXTURES_H_
