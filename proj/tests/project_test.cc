#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.h"
#include "xlsrl/project.h"
#include "xlsrl/sidecar.h"

using namespace xlsrl;

namespace {

Sentence flat(int n, const char* pos = "NOUN") {
  Sentence s;
  for (int i = 1; i <= n; ++i) {
    s.tokens.push_back(make_token(i, "w" + std::to_string(i), "w" + std::to_string(i), pos,
                                  i == 1 ? 0 : 1, i == 1 ? "ROOT" : "dep"));
  }
  return s;
}

// Brute-force density straight from the definition.
double density_oracle(const SentencePair& pair) {
  const int w = pair.target.size();
  int f = 0;
  for (int t = 1; t <= w; ++t) {
    bool linked = false;
    for (int s = 1; s <= pair.source.size(); ++s) linked = linked || pair.alignment.contains(s, t);
    f += linked;
  }
  const int p = static_cast<int>(pair.source.frames.size());
  int projected = 0;
  for (const auto& frame : pair.source.frames) {
    bool linked = false;
    for (int t = 1; t <= w; ++t) linked = linked || pair.alignment.contains(frame.predicate_index, t);
    projected += linked;
  }
  if (p == 0 || w == 0) return 0.0;
  return static_cast<double>(projected * f) / static_cast<double>(p * w);
}

SentencePair random_pair(std::mt19937_64& rng) {
  const int ns = static_cast<int>(rng() % 9);
  const int nt = static_cast<int>(rng() % 9);
  Sentence src = flat(ns);
  Sentence tgt = flat(nt);
  for (int i = 1; i <= ns; ++i) {
    if (rng() % 3 == 0) src.frames.push_back({i, "p.01", {}});
  }
  AlignmentSet a;
  if (ns > 0 && nt > 0) {
    const int links = static_cast<int>(rng() % (ns * nt + 1));
    for (int k = 0; k < links; ++k) {
      a.links.insert({1 + static_cast<int>(rng() % ns), 1 + static_cast<int>(rng() % nt)});
    }
  }
  return make_pair(src, tgt, a);
}

}  // namespace

TEST_CASE("density of ten words, eight aligned, one of two predicates projected") {
  Sentence src = flat(10);
  src.frames = {{1, "a.01", {}}, {2, "b.01", {}}};
  AlignmentSet a;
  a.links.insert({1, 1});
  for (int t = 2; t <= 8; ++t) a.links.insert({t + 1, t});
  const DensityScore d = projection_density(make_pair(src, flat(10), a));
  CHECK(d.total_words == 10);
  CHECK(d.aligned_words == 8);
  CHECK(d.source_predicates == 2);
  CHECK(d.projected_predicates == 1);
  CHECK(d.value == doctest::Approx(0.4));
}

TEST_CASE("fully aligned pair has density one") {
  Sentence src = flat(4);
  src.frames = {{1, "a.01", {}}, {3, "b.01", {}}};
  AlignmentSet a{{{1, 1}, {2, 2}, {3, 3}, {4, 4}}};
  CHECK(projection_density(make_pair(src, flat(4), a)).value == 1.0);
}

TEST_CASE("urge pair has density 0.8") {
  const DensityScore d = projection_density(testing::urge_pair());
  CHECK(d.aligned_words == 4);
  CHECK(d.total_words == 5);
  CHECK(d.source_predicates == 2);
  CHECK(d.projected_predicates == 2);
  CHECK(d.value == doctest::Approx(0.8));
}

TEST_CASE("degenerate densities are zero") {
  CHECK(projection_density(make_pair(flat(3), flat(3), AlignmentSet{{{1, 1}}})).value == 0.0);
  Sentence src = flat(2);
  src.frames = {{1, "a.01", {}}};
  CHECK(projection_density(make_pair(src, Sentence{}, AlignmentSet{})).value == 0.0);
}

TEST_CASE("filter_by_density") {
  std::mt19937_64 rng(11);
  std::vector<SentencePair> corpus;
  for (int i = 0; i < 300; ++i) corpus.push_back(random_pair(rng));

  CHECK(filter_by_density(corpus, 0.0).size() == corpus.size());
  CHECK_THROWS_AS(filter_by_density(corpus, 1.01), std::invalid_argument);
  CHECK_THROWS_AS(filter_by_density(corpus, -0.1), std::invalid_argument);

  std::vector<SentencePair> sparse;
  for (const auto& p : corpus) {
    if (density_oracle(p) < 1.0) sparse.push_back(p);
  }
  CHECK(filter_by_density(sparse, 1.0).empty());

  const auto kept = kept_by_density(corpus, 0.4);
  std::vector<size_t> oracle;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (density_oracle(corpus[i]) >= 0.4) oracle.push_back(i);
  }
  CHECK(kept == oracle);
  const auto filtered = filter_by_density(corpus, 0.4);
  REQUIRE(filtered.size() == kept.size());
  for (size_t k = 0; k < kept.size(); ++k) {
    CHECK(filtered[k].alignment == corpus[kept[k]].alignment);
  }
}

TEST_CASE("property: density never drops when a link is added") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    SentencePair pair = random_pair(rng);
    if (pair.source.size() == 0 || pair.target.size() == 0) continue;
    const double before = projection_density(pair).value;
    pair.alignment.links.insert({1 + static_cast<int>(rng() % pair.source.size()),
                                 1 + static_cast<int>(rng() % pair.target.size())});
    CHECK(projection_density(pair).value >= before);
    CHECK(projection_density(pair).value == doctest::Approx(density_oracle(pair)));
  }
}

TEST_CASE("property: dropping an unprojected source predicate never lowers density") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    SentencePair pair = random_pair(rng);
    const double before = projection_density(pair).value;
    auto& frames = pair.source.frames;
    for (size_t k = 0; k < frames.size(); ++k) {
      bool linked = false;
      for (const auto& l : pair.alignment.links) linked = linked || l.source == frames[k].predicate_index;
      if (!linked && frames.size() > 1) {
        frames.erase(frames.begin() + static_cast<long>(k));
        CHECK(projection_density(pair).value >= before);
        break;
      }
    }
  }
}

TEST_CASE("urge pair projection, including the shifted A2") {
  const ProjectionResult r = project_pair(testing::urge_pair(), RoleBlacklist::defaults(), 7);
  const Sentence& t = r.target;
  CHECK(t.provenance == Provenance::kProjected);
  REQUIRE(t.frames.size() == 2);
  // "bitte" receives urge.01 with Ich A0, Sie A1 and Zustimmung A2.
  CHECK(t.frames[0].predicate_index == 2);
  CHECK(t.frames[0].sense == "urge.01");
  CHECK(t.frames[0].args == std::map<int, std::string>{{1, "A0"}, {3, "A1"}, {5, "A2"}});
  // "Zustimmung" receives endorse.01; "this" is unaligned so only A0 survives.
  CHECK(t.frames[1].predicate_index == 5);
  CHECK(t.frames[1].sense == "endorse.01");
  CHECK(t.frames[1].args == std::map<int, std::string>{{3, "A0"}});
  // "um" stays unlabeled.
  for (const auto& f : t.frames) CHECK(f.args.count(4) == 0);
  CHECK(r.collisions.empty());

  REQUIRE(r.instances.size() == 6);
  const auto& a2 = r.instances[3];
  CHECK(a2.kind == InstanceKind::kArgument);
  CHECK(a2.sentence_id == 7);
  CHECK(a2.token_index == 5);
  CHECK(a2.predicate_index == 2);
  CHECK(a2.label == "A2");
  CHECK(a2.source_token_index == 6);
  CHECK(a2.source_deprel == "xcomp");
  CHECK(a2.target_deprel == "adpobj");
  CHECK(dep_match_cost(a2) == 0.5);
  CHECK(r.instances[0].kind == InstanceKind::kPredicate);
  CHECK(r.instances[0].label == "urge.01");
  CHECK(r.instances[4].kind == InstanceKind::kPredicate);
  CHECK(r.instances[4].token_index == 5);

  const SentencePair pair = testing::urge_pair();
  for (const auto& inst : r.instances) {
    CHECK(pair.alignment.contains(inst.source_token_index, inst.token_index));
  }
}

TEST_CASE("empty alignment projects nothing") {
  SentencePair pair = testing::urge_pair();
  pair.alignment.links.clear();
  const auto r = project_pair(pair, RoleBlacklist::defaults());
  CHECK(r.instances.empty());
  CHECK(r.target.frames.empty());
}

TEST_CASE("identity alignment reproduces the source frames") {
  Sentence src = parse_conll(testing::kEnglishUrge)[0];
  AlignmentSet identity;
  for (int i = 1; i <= src.size(); ++i) identity.links.insert({i, i});
  Sentence tgt = src;
  tgt.frames.clear();
  const auto r = project_pair(make_pair(src, tgt, identity), RoleBlacklist{{}, true});
  CHECK(r.target.frames == src.frames);
  for (const auto& inst : r.instances) CHECK(dep_match_cost(inst) == 1.0);
}

TEST_CASE("hand-built three-pair corpus maps frames through the alignment") {
  // Target order reverses the source; frames must follow the mapping t = n + 1 - s.
  std::vector<std::pair<int, std::vector<PredicateFrame>>> cases = {
      {3, {{2, "run.01", {{1, "A0"}}}}},
      {4, {{1, "see.01", {{2, "A1"}, {4, "A0"}}}}},
      {5, {{2, "give.01", {{1, "A0"}, {3, "A2"}, {5, "A1"}}}, {4, "go.01", {{5, "A0"}}}}},
  };
  for (const auto& [n, frames] : cases) {
    Sentence src = flat(n);
    src.frames = frames;
    AlignmentSet a;
    for (int s = 1; s <= n; ++s) a.links.insert({s, n + 1 - s});
    const auto r = project_pair(make_pair(src, flat(n), a), RoleBlacklist::defaults());
    std::vector<PredicateFrame> expected;
    for (const auto& f : frames) {
      PredicateFrame m{n + 1 - f.predicate_index, f.sense, {}};
      for (const auto& [idx, role] : f.args) m.args.emplace(n + 1 - idx, role);
      expected.push_back(m);
    }
    std::sort(expected.begin(), expected.end(),
              [](const auto& x, const auto& y) { return x.predicate_index < y.predicate_index; });
    CHECK(r.target.frames == expected);
  }
}

TEST_CASE("AM roles are not projected") {
  Sentence src = flat(4);
  src.frames = {{1, "go.01", {{2, "AM"}, {3, "AM-TMP"}, {4, "A1"}}}};
  AlignmentSet a{{{1, 1}, {2, 2}, {3, 3}, {4, 4}}};
  const auto pair = make_pair(src, flat(4), a);

  const auto r = project_pair(pair, RoleBlacklist::defaults());
  CHECK(r.target.frames[0].args == std::map<int, std::string>{{4, "A1"}});
  for (const auto& inst : r.instances) {
    CHECK(inst.label != "AM");
    CHECK(inst.label.rfind("AM-", 0) != 0);
  }

  const auto exact_only = project_pair(pair, RoleBlacklist{{"AM"}, false});
  CHECK(exact_only.target.frames[0].args == std::map<int, std::string>{{3, "AM-TMP"}, {4, "A1"}});
  CHECK(RoleBlacklist::defaults().blocks("AM-LOC"));
  CHECK_FALSE(RoleBlacklist::defaults().blocks("AMX"));
}

TEST_CASE("collisions keep the lower source index") {
  Sentence src = flat(4);
  src.frames = {{1, "go.01", {{2, "A0"}, {3, "A1"}}}};
  // Source tokens 2 and 3 both land on target 2.
  AlignmentSet a{{{1, 1}, {2, 2}, {3, 2}}};
  const auto r = project_pair(make_pair(src, flat(3), a), RoleBlacklist::defaults());
  CHECK(r.target.frames[0].args == std::map<int, std::string>{{2, "A0"}});
  REQUIRE(r.collisions.size() == 1);
  CHECK(r.collisions[0].target_index == 2);
  CHECK(r.collisions[0].kept_source == 2);
  CHECK(r.collisions[0].dropped_source == 3);
  CHECK(r.collisions[0].kept_label == "A0");
  CHECK(r.collisions[0].dropped_label == "A1");

  // Two source predicates on one target token: the first frame wins.
  Sentence src2 = flat(3);
  src2.frames = {{1, "a.01", {}}, {2, "b.01", {}}};
  AlignmentSet a2{{{1, 1}, {2, 1}}};
  const auto r2 = project_pair(make_pair(src2, flat(2), a2), RoleBlacklist::defaults());
  REQUIRE(r2.target.frames.size() == 1);
  CHECK(r2.target.frames[0].sense == "a.01");
  CHECK(r2.collisions.size() == 1);
}

TEST_CASE("completeness") {
  // verb at 1 with dependents 2, 3, 4; token 5 hangs off 2 and is out of scope.
  Sentence s = testing::sentence_of({{"geht", "VERB", 0, "ROOT"},
                                     {"Hund", "NOUN", 1, "nsubj"},
                                     {"heute", "ADV", 1, "advmod"},
                                     {".", ".", 1, "p"},
                                     {"der", "DET", 2, "det"}});
  CHECK(completeness_cost(s) == 0.0);
  s.frames = {{1, "gehen.01", {{2, "A0"}, {5, "A1"}}}};
  CHECK(completeness_cost(s) == doctest::Approx(0.5));
  s.frames[0].args = {{2, "A0"}, {3, "AM"}, {4, "A1"}};
  CHECK(completeness_cost(s) == 1.0);

  Sentence no_verbs = testing::sentence_of({{"Hund", "NOUN", 0, "ROOT"}});
  CHECK(completeness_cost(no_verbs) == 1.0);

  const ProjectionResult urge = project_pair(testing::urge_pair(), RoleBlacklist::defaults());
  // Scope {Ich, bitte, Sie, um}; "um" is the only unlabeled member.
  CHECK(completeness_cost(urge.target) == doctest::Approx(0.75));
}

TEST_CASE("dependency match cost") {
  CHECK(dep_match_cost("nsubj", "nsubj") == 1.0);
  CHECK(dep_match_cost("xcomp", "adpmod") == 0.5);
  CHECK(dep_match_cost("whatever-label", "whatever-label") == 1.0);
}

TEST_CASE("assign_costs") {
  SUBCASE("uniform gives one everywhere") {
    auto r = project_pair(testing::urge_pair(), RoleBlacklist::defaults());
    assign_costs(r.instances, CostMode::kUniform, {0.3});
    for (const auto& inst : r.instances) CHECK(inst.weight == 1.0);
  }
  SUBCASE("combined is the mean") {
    ProjectedInstance inst;
    inst.source_deprel = "nsubj";
    inst.target_deprel = "dobj";
    std::vector<ProjectedInstance> v{inst};
    assign_costs(v, CostMode::kCompDep, {0.8});
    CHECK(v[0].cost.comp == 0.8);
    CHECK(v[0].cost.dep == 0.5);
    CHECK(v[0].weight == doctest::Approx(0.65));
  }
  SUBCASE("urge pair costs") {
    auto r = project_pair(testing::urge_pair(), RoleBlacklist::defaults());
    assign_costs(r.instances, CostMode::kCompDep, {completeness_cost(r.target)});
    CHECK(r.instances[1].weight == doctest::Approx(0.875));  // Ich: nsubj = nsubj
    CHECK(r.instances[2].weight == doctest::Approx(0.625));  // Sie: nsubj vs dobj
    CHECK(r.instances[3].weight == doctest::Approx(0.625));  // Zustimmung: xcomp vs adpobj
    CHECK(r.instances[0].cost.dep == 1.0);                   // predicates carry no dep penalty
  }
  SUBCASE("twenty synthetic instances match recomputation from parts") {
    std::mt19937_64 rng(19);
    const char* rels[] = {"nsubj", "dobj", "iobj", "xcomp"};
    std::vector<ProjectedInstance> v;
    std::vector<double> comp;
    for (int s = 0; s < 4; ++s) comp.push_back(static_cast<double>(rng() % 101) / 100.0);
    for (int i = 0; i < 20; ++i) {
      ProjectedInstance inst;
      inst.sentence_id = static_cast<int>(rng() % 4);
      inst.kind = rng() % 4 == 0 ? InstanceKind::kPredicate : InstanceKind::kArgument;
      inst.source_deprel = rels[rng() % 4];
      inst.target_deprel = rels[rng() % 4];
      v.push_back(inst);
    }
    for (CostMode mode : {CostMode::kUniform, CostMode::kComp, CostMode::kDep, CostMode::kCompDep}) {
      auto w = v;
      assign_costs(w, mode, comp);
      for (const auto& inst : w) {
        const double c = comp[inst.sentence_id];
        const double d = inst.kind == InstanceKind::kPredicate ? 1.0
                         : inst.source_deprel == inst.target_deprel ? 1.0
                                                                    : 0.5;
        const double expected = mode == CostMode::kUniform ? 1.0
                                : mode == CostMode::kComp  ? c
                                : mode == CostMode::kDep   ? d
                                                           : (c + d) / 2;
        CHECK(inst.weight == doctest::Approx(expected));
        CHECK(inst.cost.combined == doctest::Approx((inst.cost.comp + inst.cost.dep) / 2));
        CHECK((inst.cost.dep == 0.5 || inst.cost.dep == 1.0));
        CHECK(inst.weight >= 0.0);
        CHECK(inst.weight <= 1.0);
      }
    }
  }
  SUBCASE("unknown modes and sentences") {
    CHECK_THROWS_AS(parse_cost_mode("bogus"), std::invalid_argument);
    CHECK(parse_cost_mode("comp+dep") == CostMode::kCompDep);
    CHECK(cost_mode_name(CostMode::kCompDep) == "comp+dep");
    std::vector<ProjectedInstance> v(1);
    v[0].sentence_id = 3;
    CHECK_THROWS_AS(assign_costs(v, CostMode::kComp, {1.0}), std::invalid_argument);
  }
}

TEST_CASE("cost sidecar round-trips") {
  auto r = project_pair(testing::urge_pair(), RoleBlacklist::defaults(), 4);
  assign_costs(r.instances, CostMode::kCompDep, {0, 0, 0, 0, completeness_cost(r.target)});
  const std::string text = write_cost_sidecar(r.instances);
  CHECK(text.rfind("sentence_id\ttoken_index\tkind\tlabel\tcomp\tdep\tcombined\n", 0) == 0);
  const auto rows = parse_cost_sidecar(text);
  REQUIRE(rows.size() == r.instances.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].sentence_id == 4);
    CHECK(rows[i].token_index == r.instances[i].token_index);
    CHECK(rows[i].kind == r.instances[i].kind);
    CHECK(rows[i].label == r.instances[i].label);
    CHECK(rows[i].cost == r.instances[i].cost);
  }
  CHECK_THROWS(parse_cost_sidecar("1\t2\targument\tA0\t0.5\t0.5\n"));
  CHECK_THROWS(parse_cost_sidecar("1\t2\tnoun\tA0\t0.5\t0.5\t0.5\n"));
  CHECK_THROWS(parse_cost_sidecar("1\t2\targument\tA0\t1.5\t0.5\t0.5\n"));
}
