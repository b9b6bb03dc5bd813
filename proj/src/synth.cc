#include "xlsrl/synth.h"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace xlsrl {

namespace {

const char* const kRoles[] = {"A0", "A1", "A2", "AM-TMP"};

enum class Kind { kNoun, kVerb, kDet, kAdj, kAdv, kPrt, kPunct };

struct Node {
  Kind kind;
  int lemma = 0;
  int parent = -1;  // node id, -1 for root
  std::string deprel;
  char noun_case = 0;  // target case suffix
  bool in_source = true;
  bool in_target = true;
};

struct Frame {
  int predicate = 0;  // node id
  std::vector<std::pair<int, std::string>> args;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return uniform() < p; }
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 engine_;
};

struct Clause {
  std::vector<Node> nodes;
  std::vector<Frame> frames;
  std::vector<int> source_order;
  std::vector<int> target_order;
};

class Generator {
 public:
  Generator(const SynthConfig& config, Rng& rng) : config_(config), rng_(rng) {}

  Clause clause() {
    Clause c;
    nodes_ = &c.nodes;
    const int verb = add({Kind::kVerb, rng_.below(config_.vocab_size), -1, "ROOT"});

    std::vector<int> np0 = noun_phrase(verb, "nsubj", 'a');
    std::vector<int> np1;
    std::vector<int> np2;
    std::vector<int> embedded;  // to, verb2, np3...
    std::vector<int> np3;
    int adverb = -1;
    int verb2 = -1;

    if (rng_.chance(0.85)) np1 = noun_phrase(verb, "dobj", 'o');
    if (rng_.chance(0.3)) {
      verb2 = add({Kind::kVerb, rng_.below(config_.vocab_size), verb, "xcomp"});
      Node to{Kind::kPrt, 0, verb2, "aux"};
      to.in_target = false;
      const int to_id = add(to);
      np3 = noun_phrase(verb2, "dobj", 'o');
      embedded.push_back(to_id);
    } else if (rng_.chance(0.3)) {
      np2 = noun_phrase(verb, "iobj", 'i');
    }
    if (rng_.chance(0.35)) {
      adverb = add({Kind::kAdv, rng_.below(std::max(5, config_.vocab_size / 5)), verb, "advmod"});
    }
    const int punct = add({Kind::kPunct, 0, verb, "p"});

    // Pad with adjectives toward the requested mean length.
    const int target_len = config_.mean_length + rng_.below(5) - 2;
    std::vector<std::vector<int>*> nps = {&np0};
    for (auto* np : {&np1, &np2, &np3}) {
      if (!np->empty()) nps.push_back(np);
    }
    while (static_cast<int>(c.nodes.size()) < target_len) {
      std::vector<int>& np = *nps[rng_.below(static_cast<int>(nps.size()))];
      const int head = np.back();
      const int adj = add({Kind::kAdj, rng_.below(config_.vocab_size), head, "amod"});
      np.insert(np.end() - 1, adj);
    }

    auto append = [](std::vector<int>& dst, const std::vector<int>& src) {
      dst.insert(dst.end(), src.begin(), src.end());
    };
    // Source: NP0 V NP1 NP2 ADV to V2 NP3 .
    append(c.source_order, np0);
    c.source_order.push_back(verb);
    append(c.source_order, np1);
    append(c.source_order, np2);
    if (adverb >= 0) c.source_order.push_back(adverb);
    append(c.source_order, embedded);
    if (verb2 >= 0) c.source_order.push_back(verb2);
    append(c.source_order, np3);
    c.source_order.push_back(punct);
    // Target: NP0 V NP2 NP1 ADV NP3 V2 .
    append(c.target_order, np0);
    c.target_order.push_back(verb);
    append(c.target_order, np2);
    append(c.target_order, np1);
    if (adverb >= 0) c.target_order.push_back(adverb);
    append(c.target_order, np3);
    if (verb2 >= 0) c.target_order.push_back(verb2);
    c.target_order.push_back(punct);

    Frame main{verb, {}};
    main.args.emplace_back(np0.back(), "A0");
    if (!np1.empty()) main.args.emplace_back(np1.back(), "A1");
    if (!np2.empty()) main.args.emplace_back(np2.back(), "A2");
    if (verb2 >= 0) main.args.emplace_back(verb2, "A2");
    if (adverb >= 0) main.args.emplace_back(adverb, "AM-TMP");
    c.frames.push_back(std::move(main));
    if (verb2 >= 0) {
      c.frames.push_back({verb2, {{np0.back(), "A0"}, {np3.back(), "A1"}}});
    }
    return c;
  }

 private:
  int add(Node node) {
    nodes_->push_back(std::move(node));
    return static_cast<int>(nodes_->size()) - 1;
  }

  // det? noun, with the noun last; adjectives are inserted before the noun later.
  std::vector<int> noun_phrase(int head, const char* deprel, char noun_case) {
    const int noun = add({Kind::kNoun, rng_.below(config_.vocab_size), head, deprel, noun_case});
    std::vector<int> np;
    if (rng_.chance(0.7)) np.push_back(add({Kind::kDet, rng_.below(3), noun, "det"}));
    np.push_back(noun);
    return np;
  }

  const SynthConfig& config_;
  Rng& rng_;
  std::vector<Node>* nodes_ = nullptr;
};

const char* pos_of(Kind k) {
  switch (k) {
    case Kind::kNoun: return "NOUN";
    case Kind::kVerb: return "VERB";
    case Kind::kDet: return "DET";
    case Kind::kAdj: return "ADJ";
    case Kind::kAdv: return "ADV";
    case Kind::kPrt: return "PRT";
    case Kind::kPunct: return ".";
  }
  return "X";
}

std::string lemma_of(const Node& n) {
  const std::string id = std::to_string(n.lemma);
  switch (n.kind) {
    case Kind::kNoun: return "n" + id;
    case Kind::kVerb: return "v" + id;
    case Kind::kDet: return "d" + id;
    case Kind::kAdj: return "j" + id;
    case Kind::kAdv: return "r" + id;
    case Kind::kPrt: return "to";
    case Kind::kPunct: return ".";
  }
  return "x";
}

std::string form_of(const Node& n, bool target) {
  const std::string lemma = lemma_of(n);
  if (!target) {
    return n.kind == Kind::kVerb ? lemma + "s" : lemma;
  }
  switch (n.kind) {
    case Kind::kNoun: return lemma + std::string(1, n.noun_case);
    case Kind::kVerb: return lemma + "en";
    case Kind::kDet: return lemma + "e";
    case Kind::kAdj: return lemma + "er";
    default: return lemma;
  }
}

// Realizes one side; returns node -> 1-based position.
std::map<int, int> realize(const Clause& c, const std::vector<int>& order, bool target,
                           Sentence& out) {
  std::map<int, int> position;
  for (size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i) + 1;
  for (int id : order) {
    const Node& n = c.nodes[id];
    const int head = n.parent < 0 ? 0 : position.at(n.parent);
    out.tokens.push_back(
        make_token(position[id], form_of(n, target), lemma_of(n), pos_of(n.kind), head, n.deprel));
  }
  for (const auto& f : c.frames) {
    PredicateFrame frame;
    frame.predicate_index = position.at(f.predicate);
    frame.sense = lemma_of(c.nodes[f.predicate]) + ".01";
    for (const auto& [node, role] : f.args) frame.args.emplace(position.at(node), role);
    out.frames.push_back(std::move(frame));
  }
  std::sort(out.frames.begin(), out.frames.end(),
            [](const PredicateFrame& a, const PredicateFrame& b) {
              return a.predicate_index < b.predicate_index;
            });
  return position;
}

}  // namespace

void SynthConfig::validate() const {
  if (vocab_size < 10) throw std::invalid_argument("synth: vocab_size must be >= 10");
  if (mean_length < 3) throw std::invalid_argument("synth: mean_length must be >= 3");
  if (n_pairs < 0 || n_heldout < 0) throw std::invalid_argument("synth: negative corpus size");
  for (double rate : {shift_rate, alignment_dropout, label_noise}) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("synth: rates must lie in [0,1]");
  }
}

SynthCorpus generate(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  Generator gen(config, rng);
  SynthCorpus corpus;

  for (int k = 0; k < config.n_pairs; ++k) {
    const Clause c = gen.clause();
    Sentence source;
    Sentence target;
    const auto src_pos = realize(c, c.source_order, false, source);
    const auto tgt_pos = realize(c, c.target_order, true, target);
    corpus.gold_target.push_back(target);
    target.frames.clear();

    // Node-level correspondence, then corruption.
    std::map<int, int> counterpart;  // source node -> target node
    for (size_t id = 0; id < c.nodes.size(); ++id) {
      if (c.nodes[id].in_source && c.nodes[id].in_target) {
        counterpart[static_cast<int>(id)] = static_cast<int>(id);
      }
    }
    bool any_shift = false;
    for (const auto& f : c.frames) {
      if (!rng.chance(config.shift_rate)) continue;
      any_shift = true;
      std::vector<int> args;
      for (const auto& [node, role] : f.args) {
        if (counterpart.count(node)) args.push_back(node);
      }
      // Rotate the argument correspondence so every argument lands elsewhere.
      if (args.size() >= 2) {
        std::vector<int> targets;
        for (int a : args) targets.push_back(counterpart[a]);
        const int shift = 1 + rng.below(static_cast<int>(args.size()) - 1);
        for (size_t i = 0; i < args.size(); ++i) {
          counterpart[args[i]] = targets[(i + shift) % args.size()];
        }
      }
      // Lose about half of the links around the frame's arguments.
      for (int a : args) {
        for (size_t id = 0; id < c.nodes.size(); ++id) {
          const bool in_phrase = static_cast<int>(id) == a || c.nodes[id].parent == a;
          if (in_phrase && counterpart.count(static_cast<int>(id)) && rng.chance(0.5)) {
            counterpart.erase(static_cast<int>(id));
          }
        }
      }
    }
    corpus.shifted.push_back(any_shift);

    AlignmentSet forward;
    AlignmentSet backward;
    for (const auto& [s, t] : counterpart) {
      const Link link{src_pos.at(s), tgt_pos.at(t)};
      if (rng.chance(config.alignment_dropout)) {
        (rng.chance(0.5) ? forward : backward).links.insert(link);
      } else {
        forward.links.insert(link);
        backward.links.insert(link);
      }
    }

    for (auto& frame : source.frames) {
      for (auto& [idx, role] : frame.args) {
        if (!rng.chance(config.label_noise)) continue;
        std::string replacement = role;
        while (replacement == role) replacement = kRoles[rng.below(4)];
        role = replacement;
      }
    }
    source.provenance = Provenance::kPredicted;
    target.provenance = Provenance::kGold;

    corpus.source.push_back(std::move(source));
    corpus.target.push_back(std::move(target));
    corpus.forward.push_back(std::move(forward));
    corpus.backward.push_back(std::move(backward));
  }

  for (int k = 0; k < config.n_heldout; ++k) {
    const Clause c = gen.clause();
    Sentence target;
    realize(c, c.target_order, true, target);
    corpus.heldout.push_back(std::move(target));
  }
  return corpus;
}

}  // namespace xlsrl
