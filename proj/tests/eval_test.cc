#include <algorithm>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.h"
#include "xlsrl/error.h"
#include "xlsrl/eval.h"

using namespace xlsrl;

namespace {

Sentence base() {
  return testing::sentence_of({{"Hund", "NOUN", 2, "nsubj"},
                               {"beisst", "VERB", 0, "ROOT"},
                               {"Mann", "NOUN", 2, "dobj"},
                               {"heute", "ADV", 2, "advmod"}});
}

Sentence with_args(std::map<int, std::string> args, std::string sense = "beissen.01") {
  Sentence s = base();
  s.frames = {{2, std::move(sense), std::move(args)}};
  return s;
}

}  // namespace

TEST_CASE("hand case: one hit, one miss") {
  const auto gold = with_args({{1, "A0"}, {3, "A1"}});
  const auto pred = with_args({{1, "A0"}, {3, "A2"}});
  const EvalReport r = score({gold}, {pred});
  CHECK(r.counts == Counts{1, 1, 1});
  CHECK(r.overall.precision == doctest::Approx(0.5));
  CHECK(r.overall.recall == doctest::Approx(0.5));
  CHECK(r.overall.f1 == doctest::Approx(0.5));
  CHECK(r.dependency({"VERB", "A0"}).prf.f1 == 1.0);
  CHECK(r.dependency({"VERB", "A1"}).prf.f1 == 0.0);
  CHECK(r.dependency({"VERB", "A1"}).support == 1);
  CHECK(r.dependency({"VERB", "A2"}).counts.false_positives == 1);
  CHECK(r.dependency({"NOUN", "A9"}).support == 0);
}

TEST_CASE("empty predictions and empty gold") {
  const auto gold = with_args({{1, "A0"}});
  const auto none = with_args({});
  const EvalReport r = score({gold}, {none});
  CHECK(r.overall.precision == 0.0);
  CHECK(r.overall.recall == 0.0);
  CHECK(r.overall.f1 == 0.0);
  const EvalReport both = score({none}, {none});
  CHECK(both.counts == Counts{});
  CHECK(both.per_dependency.empty());
}

TEST_CASE("AM roles are excluded by default") {
  const auto gold = with_args({{1, "A0"}, {4, "AM-TMP"}});
  const auto pred = with_args({{1, "A0"}});
  CHECK(score({gold}, {pred}).overall.f1 == 1.0);
  ScoreOptions keep;
  keep.excluded = RoleBlacklist{{}, true};
  CHECK(score({gold}, {pred}, keep).overall.recall == doctest::Approx(0.5));
}

TEST_CASE("senses count outside gold predicate mode") {
  const auto gold = with_args({{1, "A0"}});
  const auto pred = with_args({{1, "A0"}}, "beissen.02");
  CHECK(score({gold}, {pred}).overall.f1 == 1.0);
  ScoreOptions full;
  full.gold_predicate_mode = false;
  const EvalReport r = score({gold}, {pred}, full);
  CHECK(r.counts == Counts{1, 1, 1});
  CHECK(r.dependency({"VERB", "SENSE"}).support == 1);
}

TEST_CASE("length mismatches are data errors") {
  const auto s = with_args({});
  CHECK_THROWS_AS(score({s}, {}), DataError);
  Sentence shorter = s;
  shorter.tokens.pop_back();
  CHECK_THROWS_AS(score({s}, {shorter}), DataError);
}

TEST_CASE("property: swapping gold and prediction swaps precision and recall") {
  std::mt19937_64 rng(8);
  const char* roles[] = {"A0", "A1", "A2"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Sentence> a, b;
    for (int k = 0; k < 5; ++k) {
      std::map<int, std::string> x, y;
      for (int t : {1, 3, 4}) {
        if (rng() % 2) x[t] = roles[rng() % 3];
        if (rng() % 2) y[t] = roles[rng() % 3];
      }
      a.push_back(with_args(x));
      b.push_back(with_args(y));
    }
    const auto ab = score(a, b);
    const auto ba = score(b, a);
    CHECK(ab.overall.precision == doctest::Approx(ba.overall.recall));
    CHECK(ab.overall.recall == doctest::Approx(ba.overall.precision));
    CHECK(ab.overall.f1 == doctest::Approx(ba.overall.f1));

    // Permuting sentence pairs leaves every number unchanged.
    std::vector<size_t> order{0, 1, 2, 3, 4};
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Sentence> pa, pb;
    for (size_t i : order) {
      pa.push_back(a[i]);
      pb.push_back(b[i]);
    }
    const auto permuted = score(pa, pb);
    CHECK(permuted.counts == ab.counts);
    CHECK(report_csv(permuted) == report_csv(ab));
  }
}

TEST_CASE("iteration curves") {
  std::vector<RoundReport> rounds;
  for (int i = 0; i < 7; ++i) {
    const auto gold = with_args({{1, "A0"}, {3, "A1"}});
    const auto pred = with_args(i < 3 ? std::map<int, std::string>{{1, "A0"}}
                                      : std::map<int, std::string>{{1, "A0"}, {3, "A1"}});
    rounds.push_back({i, score({gold}, {pred})});
  }
  const std::string csv =
      emit_iteration_curves(rounds, {{"VERB", "A0"}, parse_dependency_key("VERB+A1")});
  const auto lines = [&] {
    std::vector<std::string> v;
    size_t start = 0;
    for (size_t nl; (nl = csv.find('\n', start)) != std::string::npos; start = nl + 1) {
      v.push_back(csv.substr(start, nl - start));
    }
    return v;
  }();
  REQUIRE(lines.size() == 15);
  CHECK(lines[0] == "round,pos,role,precision,recall,f1,support");
  CHECK(lines[1] == "0,VERB,A0,1,1,1,1");
  CHECK(lines[2] == "0,VERB,A1,0,0,0,1");
  CHECK(lines[14] == "6,VERB,A1,1,1,1,1");
  CHECK_THROWS_AS(parse_dependency_key("VERB"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dependency_key("+A0"), std::invalid_argument);
}

TEST_CASE("report formats") {
  const auto r = score({with_args({{1, "A0"}, {3, "A1"}})}, {with_args({{1, "A0"}, {3, "A2"}})});
  const std::string csv = report_csv(r);
  CHECK(csv.rfind("scope,pos,role,precision,recall,f1,support,tp,fp,fn\noverall,,,0.5,0.5,0.5,2,1,1,1\n",
                  0) == 0);
  CHECK(csv.find("dependency,VERB,A0,1,1,1,1,1,0,0\n") != std::string::npos);
  CHECK(format_report(r).find("F1 0.5000") != std::string::npos);
}
