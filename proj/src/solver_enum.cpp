#include "polytree/solver_enum.hpp"

#include <limits>

#include "polytree/errors.hpp"

namespace polytree {

std::uint64_t combination_count(const Instance& inst) {
  std::uint64_t total = 1;
  for (Vertex v : dependent_vertices(inst)) {
    const std::uint64_t choices = inst.entries(v).size() + 1;
    if (total > std::numeric_limits<std::uint64_t>::max() / choices) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= choices;
  }
  return total;
}

Solution solve_enum(const Instance& inst, const EnumOptions& options) {
  const std::uint64_t combos = combination_count(inst);
  if (combos > options.max_combinations) {
    throw BudgetExceeded("enumeration needs " + std::to_string(combos) + " combinations (budget " +
                         std::to_string(options.max_combinations) + ")");
  }
  const auto dependents = dependent_vertices(inst);
  const std::size_t d = dependents.size();

  // choice[i] == 0 means the empty parent set, otherwise entry choice[i] - 1.
  std::vector<std::size_t> choice(d, 0);
  std::vector<std::size_t> best_choice(d, 0);
  Score best = 0;
  DisjointSetForest dsu(inst.size());

  while (true) {
    dsu.reset();
    bool ok = true;
    Score total = 0;
    for (std::size_t i = 0; i < d && ok; ++i) {
      if (choice[i] == 0) continue;
      const auto& e = inst.entries(dependents[i])[choice[i] - 1];
      total += e.score;
      for (Vertex u : e.parents) {
        if (!dsu.unite(u, dependents[i])) {
          ok = false;
          break;
        }
      }
    }
    if (ok && total > best) {
      best = total;
      best_choice = choice;
    }

    // Odometer: the last dependent vertex turns fastest, giving lex order.
    std::size_t pos = d;
    while (pos > 0) {
      --pos;
      if (++choice[pos] <= inst.entries(dependents[pos]).size()) break;
      choice[pos] = 0;
      if (pos == 0) {
        pos = d + 1;
        break;
      }
    }
    if (pos == d + 1 || d == 0) break;
  }

  Solution sol;
  sol.best_score = best;
  for (std::size_t i = 0; i < d; ++i) {
    if (best_choice[i] == 0) continue;
    for (Vertex u : inst.entries(dependents[i])[best_choice[i] - 1].parents) {
      sol.best_arcs.push_back(Arc{u, dependents[i]});
    }
  }
  sol.best_arcs = normalized(std::move(sol.best_arcs));
  return sol;
}

bool decide_enum(const Instance& inst, const EnumOptions& options) {
  return solve_enum(inst, options).best_score >= inst.threshold();
}

}  // namespace polytree
