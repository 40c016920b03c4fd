#include "polytree/solver_fpt.hpp"

#include <algorithm>
#include <stdexcept>

#include "polytree/errors.hpp"
#include "polytree/polytree.hpp"

namespace polytree {

namespace {

std::vector<std::size_t> option_elements(const SuperMatroid& sm, Vertex v, std::span<const Vertex> parents) {
  std::vector<std::size_t> out;
  out.reserve(parents.size());
  for (Vertex u : parents) {
    const auto e = sm.index_of(Arc{u, v});
    if (!e) throw std::invalid_argument("parent arc missing from the ground set");
    out.push_back(*e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

WeightedSetFamily compress(const SuperMatroid& sm, const WeightedSetFamily& f, std::size_t q,
                           const FptOptions& options) {
  RepresentativeOptions ro;
  ro.seed = options.seed;
  ro.truncate = options.truncate == Truncation::kOn;
  if (options.truncate != Truncation::kAuto) return representative_family(sm, f, q, ro);
  try {
    return representative_family(sm, f, q, ro);
  } catch (const BudgetExceeded&) {
    ro.truncate = true;
    return representative_family(sm, f, q, ro);
  }
}

}  // namespace

WeightedSetFamily extend_family(const SuperMatroid& sm, const WeightedSetFamily& family, Vertex v,
                                std::span<const Vertex> parents, Score score) {
  if (parents.empty()) throw std::invalid_argument("extension parent set is empty");
  const auto added = option_elements(sm, v, parents);
  WeightedSetFamily out(family.x() + added.size());
  std::vector<std::size_t> joined;
  for (const auto& m : family.members()) {
    for (std::size_t e : m.elements) {
      if (sm.arc(e).child == v) throw std::invalid_argument("family member already assigns parents to the vertex");
    }
    joined.clear();
    std::merge(m.elements.begin(), m.elements.end(), added.begin(), added.end(), std::back_inserter(joined));
    if (!sm.independent(joined)) continue;
    out.add(joined, m.weight + score);
  }
  return out;
}

Solution solve_fpt(const Instance& inst, const FptOptions& options, FptTrace* trace) {
  UniformPadding up = make_uniform_padding(inst);
  const std::size_t d = up.dependents.size();
  const std::size_t p = up.p;
  SuperMatroid sm(up.padded.size(), up.ground_set);

  WeightedSetFamily family(0);
  family.add({}, 0);
  if (trace) {
    trace->ground_set = sm.arcs();
    trace->families.push_back(family);
  }

  for (std::size_t i = 0; i < d; ++i) {
    const Vertex v = up.dependents[i];
    WeightedSetFamily grown(family.x() + p);
    for (const auto& opt : up.options[i]) {
      const WeightedSetFamily ext = extend_family(sm, family, v, opt.parents, opt.score);
      for (const auto& m : ext.members()) {
        grown.add(m.elements, m.weight);
      }
    }
    family = compress(sm, grown, (d - i - 1) * p, options);
    if (trace) trace->families.push_back(family);
  }

  Solution sol;
  const WeightedSet* best = nullptr;
  for (const auto& m : family.members()) {
    if (!sm.independent(m.elements)) continue;  // cannot happen; members are built independent
    if (!best || m.weight > best->weight) best = &m;
  }
  if (best) {
    sol.best_score = best->weight;
    for (std::size_t e : best->elements) {
      const Arc& a = sm.arc(e);
      if (a.parent < up.original_size) sol.best_arcs.push_back(a);
    }
  }
  sol.best_arcs = normalized(std::move(sol.best_arcs));
  const VerifyReport check = verify_solution(inst, sol.best_arcs);
  if (!check.polytree || check.score != sol.best_score) {
    throw std::logic_error("representative-set solver produced an inconsistent solution");
  }
  if (trace) trace->padding = std::move(up);
  return sol;
}

}  // namespace polytree
