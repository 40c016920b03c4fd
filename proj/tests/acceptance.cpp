// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "polytree/errors.hpp"
#include "polytree/generators.hpp"
#include "polytree/kernelizer.hpp"
#include "polytree/matroid.hpp"
#include "polytree/polytree.hpp"
#include "polytree/solver_dp.hpp"
#include "polytree/solver_enum.hpp"
#include "polytree/solver_fpt.hpp"

using namespace polytree;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t stored_entries_max(const Instance& inst) {
  std::size_t m = 0;
  for (Vertex v = 0; v < inst.size(); ++v) m = std::max(m, inst.entries(v).size());
  return m;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

Outcome cross_solver() {
  Outcome o;
  std::size_t checked = 0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    const std::size_t n = 2 + s % 7;
    const std::size_t delta = 1 + (s / 7) % 5;
    const std::size_t p = std::min<std::size_t>(1 + s % 3, n - 1);
    const Instance inst = gen_random(n, delta, p, 100, 50'000 + s);
    const Score e = solve_enum(inst).best_score;
    const Score d = solve_dp(inst).best_score;
    bool ok = e == d;
    for (std::uint64_t seed = 0; seed < 3 && ok; ++seed) {
      ok = solve_fpt(inst, {seed, Truncation::kOn}).best_score == e &&
           solve_fpt(inst, {seed, Truncation::kAuto}).best_score == e;
    }
    if (!ok && o.pass) {
      o.pass = false;
      o.detail = "first mismatch at instance " + std::to_string(s);
    }
    ++checked;
  }
  if (o.pass) o.detail = std::to_string(checked) + " instances";
  return o;
}

Outcome full_space() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& inst : oracle::corpus()) {
    if (inst.size() > 4) continue;
    ++checked;
    if (oracle::full_space_optimum(inst) != solve_enum(inst).best_score) o.pass = false;
  }
  o.detail = std::to_string(checked) + " corpus instances with n <= 4";
  return o;
}

Outcome matroid_equivalence() {
  Outcome o;
  std::size_t structures = 0;
  std::uint64_t subsets = 0;
  for (const auto& inst : oracle::corpus()) {
    const SuperMatroid sm(inst);
    const std::size_t m = sm.size();
    if (m > 14) continue;
    ++structures;
    std::vector<std::size_t> elems;
    std::vector<Arc> arcs;
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
      elems.clear();
      arcs.clear();
      for (std::size_t e = 0; e < m; ++e) {
        if (mask >> e & 1U) {
          elems.push_back(e);
          arcs.push_back(sm.arc(e));
        }
      }
      ++subsets;
      if (gf2_independent(sm, elems) != is_polytree(inst.size(), arcs)) o.pass = false;
    }
  }
  o.detail = std::to_string(structures) + " superstructures, " + std::to_string(subsets) + " subsets";
  return o;
}

Outcome representativeness() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::size_t outputs = 0;
  std::size_t failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    const std::size_t m = std::min<std::size_t>(4 + rng() % 9, n * (n - 1));
    std::vector<Arc> arcs;
    while (arcs.size() < m) {
      const auto u = static_cast<Vertex>(rng() % n);
      const auto v = static_cast<Vertex>(rng() % n);
      if (u != v) arcs = normalized([&] {
          auto a = arcs;
          a.push_back({u, v});
          return a;
        }());
    }
    const SuperMatroid sm(n, arcs);
    const std::size_t x = rng() % 4;
    const std::size_t q = rng() % 5;
    if (x > m) continue;
    WeightedSetFamily f(x);
    std::vector<std::size_t> pool(m);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    const std::size_t count = 1 + rng() % 40;
    for (std::size_t i = 0; i < count; ++i) {
      std::shuffle(pool.begin(), pool.end(), rng);
      f.add({pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(x)}, static_cast<Score>(rng() % 100));
    }
    for (bool truncate : {false, true}) {
      RepresentativeOptions ro;
      ro.truncate = truncate;
      ro.seed = static_cast<std::uint64_t>(trial);
      ro.max_attempts = 4;  // one try plus three retries
      ++outputs;
      try {
        const auto r = representative_family(sm, f, q, ro);
        bool ok = check_representative(sm, f, r, q);
        if (truncate) ok = ok && r.size() <= binomial(x + q, x);
        if (!ok) ++failures;
      } catch (const TruncationFailure&) {
        ++failures;
      }
    }
  }
  o.pass = failures == 0;
  o.detail = std::to_string(outputs) + " outputs, " + std::to_string(failures) + " failures";
  return o;
}

Outcome kernel_bounds() {
  Outcome o;
  std::size_t reduced_total = 0;
  std::size_t original_total = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t d = 1 + s % 3;
    const std::size_t p = 1 + (s / 3) % 2;
    const std::size_t n = 8 + s % 33;
    const Instance inst = oracle::random_sparse(n, d, p, 6 + s % 25, 100, 77'000 + s);
    const KernelResult k = kernelize(inst, {s, true});
    const std::size_t dp = k.d * k.p;
    const bool size_ok = k.reduced.size() <= ipow(dp, k.p + 1) + k.d;
    const bool delta_ok = stored_entries_max(k.reduced) <= ipow(dp, k.p);
    const bool same = solve_enum(k.reduced).best_score == solve_enum(inst).best_score;
    if (!(size_ok && delta_ok && same) && o.pass) {
      o.pass = false;
      o.detail = "first violation at instance " + std::to_string(s);
    }
    reduced_total += k.reduced.size();
    original_total += inst.size();
  }
  if (o.pass) {
    o.detail = "100 instances, " + std::to_string(original_total) + " -> " + std::to_string(reduced_total) + " vertices";
  }
  return o;
}

// Connected graphs on n vertices, one per isomorphism class.
std::vector<UndirectedGraph> connected_graphs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<std::size_t>> pair_id(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      pair_id[a][b] = pair_id[b][a] = pairs.size();
      pairs.emplace_back(a, b);
    }
  }
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  std::set<std::uint32_t> seen;
  std::vector<UndirectedGraph> out;
  for (std::uint32_t mask = 0; mask < (1U << pairs.size()); ++mask) {
    std::uint32_t canon = mask;
    for (const auto& pm : perms) {
      std::uint32_t image = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask >> i & 1U) image |= 1U << pair_id[pm[pairs[i].first]][pm[pairs[i].second]];
      }
      canon = std::min(canon, image);
    }
    if (!seen.insert(canon).second) continue;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1U) edges.push_back(pairs[i]);
    }
    const UndirectedGraph g = make_graph(n, edges);
    // connectivity by flood fill
    const auto adj = g.adjacency();
    std::vector<bool> reached(n, false);
    std::vector<std::size_t> stack{0};
    reached[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (auto w : adj[u]) {
        if (!reached[w]) {
          reached[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    if (count == n) out.push_back(g);
  }
  return out;
}

Outcome reductions() {
  Outcome o;
  std::size_t graphs = 0;
  std::size_t cases = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    for (const auto& g : connected_graphs(n)) {
      ++graphs;
      for (std::size_t k = 1; k <= 4; ++k) {
        ++cases;
        if (brute_is(g, k) != decide_enum(gen_from_independent_set(g, k))) o.pass = false;
      }
    }
  }

  std::mt19937_64 rng(606);
  std::size_t sampled = 0;
  std::size_t yes = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 2 + rng() % 3;
    std::vector<std::vector<std::size_t>> classes(k);
    std::size_t n = 0;
    std::size_t ell = 0;
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t budget = 8 - ell - (k - 2 - std::min(c, k - 2));  // leave room for the later classes
      std::size_t size = 1 + rng() % 3;
      if (c + 1 < k) size = std::min(size, budget);
      for (std::size_t j = 0; j < size; ++j) classes[c].push_back(n++);
      if (c + 1 < k) ell += size;
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::size_t> color(n);
    for (std::size_t c = 0; c < k; ++c) {
      for (auto v : classes[c]) color[v] = c;
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (color[a] == color[b] || rng() % 4 == 0) edges.emplace_back(a, b);
      }
    }
    const UndirectedGraph g = make_graph(n, edges);
    const bool want = oracle::multicolored_is(g, classes);
    yes += want;
    ++sampled;
    if (want != decide_enum(gen_from_multicolored_is(g, classes))) o.pass = false;
  }
  o.detail = std::to_string(graphs) + " graphs x k<=4 (" + std::to_string(cases) + " cases), " +
             std::to_string(sampled) + " multicolored samples (" + std::to_string(yes) + " yes)";
  return o;
}

double time_dp(std::size_t n, std::uint64_t seed) {
  const Instance inst = gen_random(n, 4, 3, 100, seed);
  const auto start = Clock::now();
  const Solution s = solve_dp(inst);
  const double t = seconds_since(start);
  if (s.best_score < 0) std::abort();  // keep the call observable
  return t;
}

// Mean over distinct instances, repeated until enough time has accumulated
// for the clock to be meaningful.
double mean_time(std::size_t n) {
  double total = 0;
  int runs = 0;
  while (runs < 3 || total < 0.5) {
    total += time_dp(n, 9'000 + 1'000 * n + static_cast<std::uint64_t>(runs));
    ++runs;
  }
  return total / runs;
}

Outcome dp_scaling() {
  Outcome o;
  std::ostringstream d;
  d.precision(3);
  std::vector<double> times;
  for (std::size_t n = 9; n <= 13; ++n) {
    times.push_back(mean_time(n));
    d << "n=" << n << ":" << times.back() << "s ";
  }
  const double growth = std::pow(times.back() / times.front(), 1.0 / 4.0);
  const double t12 = time_dp(12, 123);
  const double t14 = time_dp(14, 456);
  d << "growth=" << growth << "x t12=" << t12 << "s t14=" << t14 << "s";
  o.pass = growth >= 2.0 && growth <= 5.0 && t12 < 60.0 && t14 < 900.0;
  o.detail = d.str();
  return o;
}

Outcome dp_entries() {
  Outcome o;
  std::size_t keys = 0;
  std::size_t defined = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t n = 2 + s % 4;
    const std::size_t p = std::min<std::size_t>(1 + s % 3, n - 1);
    const Instance inst = gen_random(n, 2 + s % 4, p, 100, 31'000 + s);
    const DpTable t(inst);
    const std::uint32_t all = (std::uint32_t{1} << n) - 1;
    for (Vertex v = 0; v < n; ++v) {
      for (const auto& ps : potential_parents(inst, v)) {
        std::uint32_t pm = 1U << v;
        for (Vertex u : ps) pm |= 1U << u;
        const std::uint32_t free = all & ~pm;
        for (std::uint32_t sub = free;; sub = (sub - 1) & free) {
          for (std::size_t i = 0; i <= ps.size(); ++i) {
            const auto got = t.entry(v, ps, sub, i);
            ++keys;
            defined += got.has_value();
            if (got != oracle::dp_entry_brute(inst, v, ps, sub, i)) o.pass = false;
          }
          if (sub == 0) break;
        }
      }
    }
  }
  o.detail = std::to_string(keys) + " keys, " + std::to_string(defined) + " defined";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"cross-solver agreement", cross_solver},
      {"full-space oracle", full_space},
      {"matroid equivalence", matroid_equivalence},
      {"representativeness", representativeness},
      {"kernel bounds and equivalence", kernel_bounds},
      {"reduction round-trips", reductions},
      {"dp scaling", dp_scaling},
      {"dp entry semantics", dp_entries},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s [%zu] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
