#include <random>
#include <stdexcept>

#include "doctest.h"
#include "xlsrl/align.h"
#include "xlsrl/error.h"

using namespace xlsrl;

namespace {

AlignmentSet random_set(std::mt19937_64& rng, int n, int range) {
  AlignmentSet s;
  while (static_cast<int>(s.links.size()) < n) {
    s.links.insert({1 + static_cast<int>(rng() % range), 1 + static_cast<int>(rng() % range)});
  }
  return s;
}

}  // namespace

TEST_CASE("zero-based pairs are shifted to one-based") {
  const auto sets = parse_alignments("0-0 2-1", false);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].links == std::set<Link>{{1, 1}, {3, 2}});
  CHECK(parse_alignments("1-1 3-2", true)[0] == sets[0]);
}

TEST_CASE("empty line gives an empty set") {
  const auto sets = parse_alignments("\n0-1\n\n");
  REQUIRE(sets.size() == 3);
  CHECK(sets[0].links.empty());
  CHECK(sets[1].links == std::set<Link>{{1, 2}});
  CHECK(sets[2].links.empty());
}

TEST_CASE("three-line file matches a hand check") {
  const std::string text = "0-0 1-2 2-1\n4-4 3-3\n0-5 0-6 7-0\n";
  const auto sets = parse_alignments(text);
  REQUIRE(sets.size() == 3);
  CHECK(sets[0].links == std::set<Link>{{1, 1}, {2, 3}, {3, 2}});
  CHECK(sets[1].links == std::set<Link>{{4, 4}, {5, 5}});
  CHECK(sets[2].links == std::set<Link>{{1, 6}, {1, 7}, {8, 1}});
  CHECK(write_alignments(sets) == "0-0 1-2 2-1\n3-3 4-4\n0-5 0-6 7-0\n");
}

TEST_CASE("duplicate pairs collapse") {
  CHECK(parse_alignments("1-1 1-1 1-1")[0].links.size() == 1);
}

TEST_CASE("malformed tokens are rejected with a line number") {
  try {
    parse_alignments("0-0\n1x2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_alignments("-1-2"), ParseError);
  CHECK_THROWS_AS(parse_alignments("1--2"), ParseError);
  CHECK_THROWS_AS(parse_alignments("1-"), ParseError);
  CHECK_THROWS_AS(parse_alignments("0-1", true), ParseError);
}

TEST_CASE("intersection") {
  AlignmentSet a{{{1, 2}, {3, 4}}};
  AlignmentSet b{{{3, 4}, {5, 6}}};
  CHECK(intersect(a, b).links == std::set<Link>{{3, 4}});
  CHECK(intersect(a, a) == a);
  CHECK(intersect(a, AlignmentSet{}).links.empty());
}

TEST_CASE("property: intersection equals a brute-force membership filter") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const AlignmentSet a = random_set(rng, 50, 12);
    const AlignmentSet b = random_set(rng, 50, 12);
    AlignmentSet oracle;
    for (const auto& link : a.links) {
      bool found = false;
      for (const auto& other : b.links) found = found || (other.source == link.source &&
                                                          other.target == link.target);
      if (found) oracle.links.insert(link);
    }
    const AlignmentSet got = intersect(a, b);
    CHECK(got == oracle);
    CHECK(intersect(b, a) == got);
    for (const auto& link : got.links) {
      CHECK(a.contains(link.source, link.target));
      CHECK(b.contains(link.source, link.target));
    }
  }
}

TEST_CASE("transpose swaps orientation") {
  AlignmentSet a{{{1, 2}, {3, 4}}};
  CHECK(transpose(a).links == std::set<Link>{{2, 1}, {4, 3}});
  CHECK(transpose(transpose(a)) == a);
}

TEST_CASE("make_pair checks bounds") {
  Sentence s;
  s.tokens.push_back(make_token(1, "a", "a", "X", 0, "ROOT"));
  CHECK_NOTHROW(make_pair(s, s, AlignmentSet{{{1, 1}}}));
  CHECK_THROWS_AS(make_pair(s, s, AlignmentSet{{{1, 2}}}), DataError);
}
