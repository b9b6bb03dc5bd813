#include "xlsrl/conll.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "xlsrl/error.h"

namespace xlsrl {

namespace {

constexpr int kFixedColumns = 14;
constexpr std::string_view kEmpty = "_";

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

int parse_int(std::string_view field, const char* column, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(std::string("non-numeric ") + column + " '" + std::string(field) + "'", line);
  }
  return value;
}

struct PendingSentence {
  Sentence sentence;
  std::vector<std::string> senses;             // per token, "" when not a predicate
  std::vector<std::vector<std::string>> apreds;  // per token
  int first_line = 0;
};

Sentence finish(PendingSentence& pending) {
  Sentence& s = pending.sentence;
  std::vector<int> predicates;
  for (int i = 0; i < s.size(); ++i) {
    if (!pending.senses[i].empty()) predicates.push_back(i + 1);
  }
  for (int i = 0; i < s.size(); ++i) {
    if (pending.apreds[i].size() != predicates.size()) {
      throw ParseError("expected " + std::to_string(predicates.size()) +
                           " APRED columns, found " + std::to_string(pending.apreds[i].size()),
                       pending.first_line + i);
    }
  }
  for (size_t k = 0; k < predicates.size(); ++k) {
    PredicateFrame frame;
    frame.predicate_index = predicates[k];
    frame.sense = pending.senses[predicates[k] - 1];
    for (int i = 0; i < s.size(); ++i) {
      const std::string& role = pending.apreds[i][k];
      if (role != kEmpty) frame.args.emplace(i + 1, role);
    }
    s.frames.push_back(std::move(frame));
  }
  validate_sentence(s);
  return std::move(s);
}

}  // namespace

const PredicateFrame* Sentence::find_frame(int predicate_index) const {
  for (const auto& frame : frames) {
    if (frame.predicate_index == predicate_index) return &frame;
  }
  return nullptr;
}

PredicateFrame* Sentence::find_frame(int predicate_index) {
  for (auto& frame : frames) {
    if (frame.predicate_index == predicate_index) return &frame;
  }
  return nullptr;
}

std::vector<int> Sentence::dependents(int index) const {
  std::vector<int> out;
  for (const auto& t : tokens) {
    if (t.head == index) out.push_back(t.index);
  }
  return out;
}

const std::set<std::string>& universal_tagset() {
  static const std::set<std::string> tags = {"NOUN", "VERB", "ADJ",  "ADV", "PRON", "DET",
                                             "ADP",  "NUM",  "CONJ", "PRT", ".",    "X"};
  return tags;
}

Token make_token(int index, std::string form, std::string lemma, std::string pos, int head,
                 std::string deprel) {
  Token t;
  t.index = index;
  t.form = std::move(form);
  t.lemma = std::move(lemma);
  t.pos = std::move(pos);
  t.head = head;
  t.deprel = std::move(deprel);
  t.gold_lemma = t.lemma;
  t.gold_pos = t.pos;
  t.gold_head = t.head;
  t.gold_deprel = t.deprel;
  return t;
}

void validate_sentence(const Sentence& s) {
  const int n = s.size();
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token& t = s.tokens[i];
    if (t.index != i + 1) {
      throw StructureError("token ids must run 1..n, found " + std::to_string(t.index) +
                           " at position " + std::to_string(i + 1));
    }
    if (t.head < 0 || t.head > n) {
      throw StructureError("head " + std::to_string(t.head) + " of token " +
                           std::to_string(t.index) + " out of range");
    }
    if (t.head == t.index) {
      throw StructureError("token " + std::to_string(t.index) + " is its own head");
    }
    if (t.head == 0) ++roots;
  }
  if (n > 0 && roots != 1) {
    throw StructureError("expected exactly one root, found " + std::to_string(roots));
  }
  // Every token must reach the root within n steps.
  for (int i = 1; i <= n; ++i) {
    int cur = i;
    int steps = 0;
    while (cur != 0) {
      cur = s.tokens[cur - 1].head;
      if (++steps > n) {
        throw StructureError("cycle through token " + std::to_string(i));
      }
    }
  }
  int last = 0;
  for (const auto& frame : s.frames) {
    if (frame.predicate_index < 1 || frame.predicate_index > n) {
      throw StructureError("predicate index " + std::to_string(frame.predicate_index) +
                           " out of range");
    }
    if (frame.predicate_index <= last) {
      throw StructureError("frames must be sorted by unique predicate index");
    }
    last = frame.predicate_index;
    for (const auto& [idx, role] : frame.args) {
      if (idx < 1 || idx > n) {
        throw StructureError("argument index " + std::to_string(idx) + " out of range");
      }
      if (role.empty()) throw StructureError("empty role label");
    }
  }
}

std::vector<Sentence> parse_conll(std::string_view text, const ConllOptions& options) {
  std::vector<Sentence> out;
  PendingSentence pending;
  bool open = false;
  int line_no = 0;
  size_t pos = 0;

  auto flush = [&]() {
    if (!open) return;
    out.push_back(finish(pending));
    pending = PendingSentence{};
    open = false;
  };

  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;

    auto fields = split_tabs(line);
    if (fields.size() < kFixedColumns) {
      throw ParseError("expected at least 14 columns, found " + std::to_string(fields.size()),
                       line_no);
    }
    if (!open) {
      open = true;
      pending.first_line = line_no;
      pending.sentence.provenance = options.provenance;
    }

    Token t;
    t.index = parse_int(fields[0], "ID", line_no);
    t.form = fields[1];
    t.gold_lemma = fields[2];
    t.lemma = fields[3];
    t.gold_pos = fields[4];
    t.pos = fields[5];
    t.feat = fields[6];
    t.pfeat = fields[7];
    if (fields[8] != kEmpty) t.gold_head = parse_int(fields[8], "HEAD", line_no);
    t.head = parse_int(fields[9], "PHEAD", line_no);
    t.gold_deprel = fields[10];
    t.deprel = fields[11];

    const int expected = pending.sentence.size() + 1;
    if (t.index != expected) {
      throw ParseError("expected token id " + std::to_string(expected) + ", found " +
                           std::to_string(t.index),
                       line_no);
    }
    if (t.head < 0) throw ParseError("negative PHEAD", line_no);
    if (options.pos_tagset && !options.pos_tagset->count(t.pos)) {
      throw ParseError("POS '" + t.pos + "' not in tagset", line_no);
    }

    const std::string_view fillpred = fields[12];
    const std::string_view pred = fields[13];
    if (fillpred != kEmpty && fillpred != "Y") {
      throw ParseError("FILLPRED must be 'Y' or '_'", line_no);
    }
    if ((fillpred == "Y") != (pred != kEmpty)) {
      throw ParseError("FILLPRED and PRED disagree", line_no);
    }
    pending.senses.emplace_back(pred == kEmpty ? std::string() : std::string(pred));
    std::vector<std::string> apreds;
    for (size_t c = kFixedColumns; c < fields.size(); ++c) apreds.emplace_back(fields[c]);
    pending.apreds.push_back(std::move(apreds));
    pending.sentence.tokens.push_back(std::move(t));
  }
  flush();
  return out;
}

std::string write_conll(const std::vector<Sentence>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    // Role lookup per frame, indexed by token.
    std::vector<std::vector<const std::string*>> roles(s.frames.size());
    for (size_t k = 0; k < s.frames.size(); ++k) {
      roles[k].assign(s.tokens.size(), nullptr);
      for (const auto& [idx, role] : s.frames[k].args) roles[k][idx - 1] = &role;
    }
    for (const auto& t : s.tokens) {
      const PredicateFrame* frame = s.find_frame(t.index);
      out += std::to_string(t.index);
      for (const std::string* field :
           {&t.form, &t.gold_lemma, &t.lemma, &t.gold_pos, &t.pos, &t.feat, &t.pfeat}) {
        out += '\t';
        out += *field;
      }
      out += '\t';
      out += t.gold_head ? std::to_string(*t.gold_head) : std::string(kEmpty);
      out += '\t';
      out += std::to_string(t.head);
      out += '\t';
      out += t.gold_deprel;
      out += '\t';
      out += t.deprel;
      out += '\t';
      out += frame ? "Y" : "_";
      out += '\t';
      out += frame ? frame->sense : std::string(kEmpty);
      for (size_t k = 0; k < s.frames.size(); ++k) {
        out += '\t';
        const std::string* role = roles[k][t.index - 1];
        out += role ? *role : std::string(kEmpty);
      }
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace xlsrl
