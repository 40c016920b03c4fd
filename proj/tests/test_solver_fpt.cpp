#include <doctest.h>

#include <functional>

#include "oracles.hpp"
#include "polytree/generators.hpp"
#include "polytree/polytree.hpp"
#include "polytree/solver_enum.hpp"
#include "polytree/solver_fpt.hpp"

using namespace polytree;

namespace {

WeightedSetFamily unit_family() {
  WeightedSetFamily f(0);
  f.add({}, 0);
  return f;
}

// A_i by brute force: every choice of one padded option for each of the first
// i dependent vertices whose union is a polytree.
WeightedSetFamily brute_partial(const SuperMatroid& sm, const UniformPadding& up, std::size_t i) {
  WeightedSetFamily out(i * up.p);
  std::vector<std::size_t> elems;
  std::function<void(std::size_t, Score)> rec = [&](std::size_t k, Score w) {
    if (k == i) {
      if (sm.independent(elems)) out.add(elems, w);
      return;
    }
    for (const auto& opt : up.options[k]) {
      for (Vertex u : opt.parents) elems.push_back(*sm.index_of({u, up.dependents[k]}));
      rec(k + 1, w + opt.score);
      elems.resize(elems.size() - opt.parents.size());
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace

TEST_CASE("extending families on the chain") {
  const SuperMatroid sm(3, {{0, 1}, {0, 2}, {1, 2}});
  const std::vector<Vertex> a{0};
  const std::vector<Vertex> b{1};
  const std::vector<Vertex> ab{0, 1};
  const auto one = extend_family(sm, unit_family(), 1, a, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].elements == std::vector<std::size_t>{0});
  CHECK(one[0].weight == 1);

  const auto two = extend_family(sm, one, 2, b, 1);
  REQUIRE(two.size() == 1);
  CHECK(two[0].elements == std::vector<std::size_t>{0, 2});
  CHECK(two[0].weight == 2);

  CHECK(extend_family(sm, one, 2, ab, 1).empty());  // skeleton triangle

  CHECK_THROWS_AS(extend_family(sm, one, 1, a, 1), std::invalid_argument);  // b already has a parent
  CHECK_THROWS_AS(extend_family(sm, one, 2, std::vector<Vertex>{}, 1), std::invalid_argument);
  CHECK_THROWS_AS(extend_family(sm, one, 0, b, 1), std::invalid_argument);  // (b, a) not in the ground set
}

TEST_CASE("fpt examples") {
  CHECK(solve_fpt(oracle::chain()).best_score == 2);
  const Instance two({"a", "b", "c"}, {{}, {{3, {0}}}, {{5, {0, 1}}}});
  const Solution s = solve_fpt(two);
  CHECK(s.best_score == 5);
  CHECK(s.best_arcs == ArcSet{{0, 2}, {1, 2}});
  const Solution zero = solve_fpt(Instance({"a", "b"}, {{}, {}}));
  CHECK(zero.best_score == 0);
  CHECK(zero.best_arcs.empty());
}

TEST_CASE("fpt agrees with enumeration for several seeds and both modes") {
  for (const auto& inst : oracle::corpus()) {
    const Score want = solve_enum(inst).best_score;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      for (Truncation t : {Truncation::kOff, Truncation::kOn}) {
        const Solution s = solve_fpt(inst, {seed, t});
        REQUIRE(s.best_score == want);
        CHECK(verify_solution(inst, s.best_arcs).score == want);
      }
    }
  }
}

TEST_CASE("loop invariant: each family represents all partial solutions") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t d = 1 + seed % 3;
    const std::size_t p = 1 + seed % 2;
    const Instance inst = oracle::random_sparse(4 + seed % 2, d, p, 3, 9, 300 + seed);
    for (Truncation t : {Truncation::kOff, Truncation::kOn}) {
      FptTrace trace;
      solve_fpt(inst, {seed, t}, &trace);
      const UniformPadding& up = trace.padding;
      const SuperMatroid sm(up.padded.size(), trace.ground_set);
      const std::size_t dd = up.dependents.size();
      REQUIRE(trace.families.size() == dd + 1);
      for (std::size_t i = 1; i <= dd; ++i) {
        const auto all = brute_partial(sm, up, i);
        const std::size_t q = (dd - i) * up.p;
        CHECK(check_representative(sm, all, trace.families[i], q));
        if (t == Truncation::kOn) CHECK(trace.families[i].size() <= binomial(dd * up.p, i * up.p));
      }
    }
  }
}

TEST_CASE("compressing union branches separately still represents the union") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = oracle::random_sparse(5, 3, 2, 3, 9, 700 + seed);
    const UniformPadding up = make_uniform_padding(inst);
    const SuperMatroid sm(up.padded.size(), up.ground_set);
    if (up.dependents.size() < 2) continue;
    const std::size_t d = up.dependents.size();
    const std::size_t q = (d - 2) * up.p;
    const auto base = brute_partial(sm, up, 1);
    WeightedSetFamily whole(2 * up.p);
    WeightedSetFamily parts(2 * up.p);
    RepresentativeOptions ro;
    ro.seed = seed;
    ro.truncate = true;
    for (const auto& opt : up.options[1]) {
      const auto branch = extend_family(sm, base, up.dependents[1], opt.parents, opt.score);
      for (const auto& m : branch.members()) whole.add(m.elements, m.weight);
      const auto rep = representative_family(sm, branch, q, ro);
      for (const auto& m : rep.members()) parts.add(m.elements, m.weight);
    }
    CHECK(check_representative(sm, whole, parts, q));
    CHECK(check_representative(sm, whole, representative_family(sm, whole, q, ro), q));
  }
}

TEST_CASE("reduction instances") {
  const UndirectedGraph path = make_graph(3, {{0, 1}, {1, 2}});
  CHECK(solve_fpt(gen_from_independent_set(path, 2)).best_score == 2);
  const UndirectedGraph k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(solve_fpt(gen_from_independent_set(k3, 2)).best_score == 1);
}
