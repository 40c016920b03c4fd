#include "polytree/kernelizer.hpp"

#include <algorithm>
#include <map>

#include "polytree/matroid.hpp"

namespace polytree {

KernelResult kernelize(const Instance& inst, const KernelOptions& options) {
  KernelResult out;
  const UniformPadding up = make_uniform_padding(inst);
  out.d = up.dependents.size();
  out.p = up.p;
  if (out.d == 0) {
    out.reduced = Instance({}, {}, inst.threshold());
    return out;
  }

  const SuperMatroid sm(up.padded.size(), up.ground_set);
  const std::size_t q = (out.d - 1) * out.p;
  RepresentativeOptions ro;
  ro.seed = options.seed;
  ro.truncate = options.truncate;

  // kept[v] lists surviving entry indices of v, in entry order.
  std::vector<std::vector<std::size_t>> kept(inst.size());
  std::vector<bool> necessary(inst.size(), false);
  for (std::size_t i = 0; i < out.d; ++i) {
    const Vertex v = up.dependents[i];
    necessary[v] = true;
    WeightedSetFamily family(out.p);
    std::map<std::vector<std::size_t>, const PaddedOption*> option_of;
    for (const auto& opt : up.options[i]) {
      std::vector<std::size_t> elems;
      for (Vertex u : opt.parents) elems.push_back(*sm.index_of(Arc{u, v}));
      std::sort(elems.begin(), elems.end());
      option_of[elems] = &opt;
      family.add(std::move(elems), opt.score);
    }
    const WeightedSetFamily rep = representative_family(sm, family, q, ro);
    for (const auto& m : rep.members()) {
      const PaddedOption* opt = option_of.at(m.elements);
      if (!opt->entry) continue;  // the empty parent set is always available
      kept[v].push_back(*opt->entry);
    }
    std::sort(kept[v].begin(), kept[v].end());
    for (std::size_t j : kept[v]) {
      for (Vertex u : inst.entries(v)[j].parents) necessary[u] = true;
    }
  }

  std::vector<Vertex> new_index(inst.size(), 0);
  std::vector<std::string> names;
  for (Vertex v = 0; v < inst.size(); ++v) {
    if (!necessary[v]) continue;
    new_index[v] = static_cast<Vertex>(names.size());
    names.push_back(inst.name(v));
    out.vertex_map.emplace_back(inst.name(v), inst.name(v));
  }
  std::vector<std::vector<ParentSetEntry>> entries(names.size());
  for (Vertex v = 0; v < inst.size(); ++v) {
    for (std::size_t j : kept[v]) {
      const auto& e = inst.entries(v)[j];
      ParentSetEntry ne{e.score, {}};
      for (Vertex u : e.parents) ne.parents.push_back(new_index[u]);
      entries[new_index[v]].push_back(std::move(ne));
    }
  }
  out.reduced = Instance(std::move(names), std::move(entries), inst.threshold());
  return out;
}

}  // namespace polytree
