#include <doctest.h>

#include "oracles.hpp"
#include "polytree/errors.hpp"
#include "polytree/instance.hpp"
#include "polytree/solver_enum.hpp"

using namespace polytree;

namespace {

ParseErrorKind kind_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error for: " << text);
  return ParseErrorKind::kMalformedHeader;
}

}  // namespace

TEST_CASE("parse the single-vertex and chain files") {
  const Instance one = parse_instance("1\na 0\n");
  CHECK(one.size() == 1);
  CHECK(one.entry_count() == 0);
  CHECK(one.threshold() == 0);

  const Instance c = parse_instance("3\na 0\nb 1\n1 1 a\nc 1\n1 1 b\n", 2);
  CHECK(c.names() == std::vector<std::string>{"a", "b", "c"});
  CHECK(c.threshold() == 2);
  const std::vector<Vertex> pa{0};
  const std::vector<Vertex> pb{1};
  CHECK(c.local_score(1, pa) == 1);
  CHECK(c.local_score(2, pb) == 1);
  CHECK(c.local_score(2, pa) == 0);
  CHECK(c == oracle::chain().with_threshold(2));
}

TEST_CASE("forward references to later vertices resolve") {
  const Instance i = parse_instance("2\na 1\n4 1 b\nb 0\n");
  CHECK(i.entries(0).size() == 1);
  CHECK(i.entries(0)[0].parents == std::vector<Vertex>{1});
}

TEST_CASE("each malformed input gets its own diagnostic") {
  CHECK(kind_of("2\na 0\nb 1\n0 1 a\n") == ParseErrorKind::kZeroScore);
  CHECK(kind_of("2\na 0\nb 1\n-3 1 a\n") == ParseErrorKind::kNegativeScore);
  CHECK(kind_of("2\na 0\nb 1\n1.5 1 a\n") == ParseErrorKind::kNonIntegerScore);
  CHECK(kind_of("x\n") == ParseErrorKind::kMalformedHeader);
  CHECK(kind_of("2\na 0\nb 1\n1 1 z\n") == ParseErrorKind::kUnknownVertex);
  CHECK(kind_of("2\na 0\nb 1\n1 1 b\n") == ParseErrorKind::kSelfParent);
  CHECK(kind_of("2\na 0\nb 2\n1 1 a\n2 1 a\n") == ParseErrorKind::kDuplicateParentSet);
  CHECK(kind_of("2\na 0\na 0\n") == ParseErrorKind::kDuplicateVertex);
  CHECK(kind_of("2\na 0\n") == ParseErrorKind::kUnexpectedEnd);
  CHECK(kind_of("1\na 0\nb 0\n") == ParseErrorKind::kTrailingContent);
  CHECK(kind_of("3\na 0\nb 0\nc 1\n1 2 a a\n") == ParseErrorKind::kRepeatedParent);
}

TEST_CASE("parse errors carry the line number") {
  try {
    parse_instance("2\na 0\nb 1\n0 1 a\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("zero score entry") != std::string::npos);
  }
}

TEST_CASE("write_instance is canonical and round-trips") {
  const Instance i = parse_instance("3\na 2\n4 2 b c\n1 1 c\nb 0\nc 1\n2 1 b\n");
  const std::string text = write_instance(i);
  CHECK(text == "3\na 2\n1 1 c\n4 2 b c\nb 0\nc 1\n2 1 b\n");
  CHECK(write_instance(parse_instance(text)) == text);
  for (const auto& inst : oracle::corpus()) {
    const std::string t = write_instance(inst);
    CHECK(write_instance(parse_instance(t)) == t);
    CHECK(parse_instance(t).entry_count() == inst.entry_count());
  }
}

TEST_CASE("potential parents, dependent vertices and delta") {
  const Instance c = oracle::chain();
  CHECK(potential_parents(c, 2) == std::vector<std::vector<Vertex>>{{}, {1}});
  CHECK(potential_parents(c, 0) == std::vector<std::vector<Vertex>>{{}});
  CHECK(dependent_vertices(c) == std::vector<Vertex>{1, 2});
  CHECK(c.delta() == 2);
  CHECK(c.max_parent_size() == 1);

  const Instance three = parse_instance("4\na 0\nb 0\nc 0\nd 3\n1 1 a\n2 1 b\n3 2 a b\n");
  CHECK(potential_parents(three, 3).size() == 4);
  CHECK(three.delta() == 4);
  for (const auto& inst : oracle::corpus()) {
    std::size_t most = 0;
    for (Vertex v = 0; v < inst.size(); ++v) most = std::max(most, inst.entries(v).size());
    CHECK(inst.delta() == most + 1);
    CHECK(dependent_vertices(inst).size() <= inst.size());
  }
}

TEST_CASE("superstructure") {
  const Superstructure s = build_superstructure(oracle::chain());
  CHECK(s.m() == 2);
  CHECK(s.arcs == std::vector<Arc>{{0, 1}, {1, 2}});
  CHECK(s.index_of({1, 2}) == 1);
  CHECK_FALSE(s.index_of({2, 1}).has_value());

  CHECK(build_superstructure(Instance({"a", "b"}, {{}, {}})).m() == 0);

  const Instance two({"a", "b", "c"}, {{}, {{3, {0}}}, {{5, {0, 1}}}});
  CHECK(build_superstructure(two).arcs == std::vector<Arc>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("padding to a uniform size") {
  const Instance c = oracle::chain();
  const Instance padded = pad_to_uniform(c, 2);
  REQUIRE(padded.size() == 7);
  CHECK(padded.name(3) == "b__pad1");
  CHECK(padded.name(5) == "c__pad1");
  const std::vector<Vertex> bp{0, 3};
  const std::vector<Vertex> cp{1, 5};
  CHECK(padded.local_score(1, bp) == 1);
  CHECK(padded.local_score(2, cp) == 1);
  CHECK(solve_enum(padded).best_score == 2);

  CHECK_THROWS_AS(pad_to_uniform(Instance({"a", "b", "c"}, {{}, {}, {{1, {0, 1}}}}), 1), std::invalid_argument);
  const Instance zero({"a", "b"}, {{}, {}});
  CHECK(pad_to_uniform(zero, 3) == zero);

  const Instance full({"a", "b", "c"}, {{}, {}, {{1, {0, 1}}}});
  const Instance fp = pad_to_uniform(full, 2);
  CHECK(fp.size() == 5);
  CHECK(fp.entries(2)[0].parents == std::vector<Vertex>{0, 1});

  CHECK_THROWS_AS(pad_to_uniform(Instance({"a", "a__pad1"}, {{{1, {1}}}, {}}), 1), std::invalid_argument);
}

TEST_CASE("padding keeps the optimum and makes every set size p") {
  for (const auto& inst : oracle::corpus()) {
    if (inst.size() > 8) continue;
    const std::size_t p = std::max<std::size_t>(1, inst.max_parent_size());
    const Instance padded = pad_to_uniform(inst, p);
    for (Vertex v = 0; v < padded.size(); ++v) {
      for (const auto& e : padded.entries(v)) CHECK(e.parents.size() == p);
    }
    CHECK(solve_enum(padded).best_score == solve_enum(inst).best_score);
  }
}

TEST_CASE("uniform padding adds the all-padding option") {
  const UniformPadding up = make_uniform_padding(oracle::chain());
  CHECK(up.p == 1);
  REQUIRE(up.options.size() == 2);
  CHECK(up.options[0].size() == 2);
  CHECK(up.options[0].back().score == 0);
  CHECK_FALSE(up.options[0].back().entry.has_value());
  CHECK(up.ground_set.size() == 4);
}

TEST_CASE("constructor rejects invariant violations") {
  CHECK_THROWS_AS(Instance({"a", "b"}, {{}, {{0, {0}}}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance({"a", "b"}, {{}, {{1, {1}}}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance({"a", "b"}, {{}, {{1, {0}}, {2, {0}}}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance({"a", "a"}, {{}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance({"a", "b"}, {{}, {{1, {}}}}), std::invalid_argument);
}
