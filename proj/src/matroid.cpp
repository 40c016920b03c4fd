#include "polytree/matroid.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "polytree/polytree.hpp"

namespace polytree {

SuperMatroid::SuperMatroid(const Instance& inst) : SuperMatroid(inst.size(), build_superstructure(inst).arcs) {}

SuperMatroid::SuperMatroid(std::size_t vertex_count, std::vector<Arc> ground_set)
    : n_(vertex_count), arcs_(normalized(std::move(ground_set))) {
  for (const Arc& a : arcs_) {
    if (a.parent >= n_ || a.child >= n_) throw std::invalid_argument("ground-set arc endpoint out of range");
    if (a.parent == a.child) throw std::invalid_argument("ground-set arc is a self-loop");
  }
  matrix_ = Gf2Matrix(n_, arcs_.size());
  for (std::size_t e = 0; e < arcs_.size(); ++e) {
    matrix_.set(arcs_[e].parent, e, true);
    matrix_.set(arcs_[e].child, e, true);
  }
}

std::optional<std::size_t> SuperMatroid::index_of(Arc a) const {
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
  if (it == arcs_.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - arcs_.begin());
}

bool SuperMatroid::independent(std::span<const std::size_t> elements) const {
  DisjointSetForest dsu(n_);
  for (std::size_t e : elements) {
    const Arc& a = arc(e);
    if (!dsu.unite(a.parent, a.child)) return false;
  }
  return true;
}

bool SuperMatroid::fits(std::span<const std::size_t> a, std::span<const std::size_t> b) const {
  for (std::size_t x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  }
  DisjointSetForest dsu(n_);
  for (auto part : {a, b}) {
    for (std::size_t e : part) {
      const Arc& arc_e = arc(e);
      if (!dsu.unite(arc_e.parent, arc_e.child)) return false;
    }
  }
  return true;
}

bool gf2_independent(const SuperMatroid& sm, std::span<const std::size_t> elements) {
  return gf2_rank(sm.representation(), elements) == elements.size();
}

void WeightedSetFamily::add(std::vector<std::size_t> elements, Score weight) {
  if (elements.size() != x_) throw std::invalid_argument("family member has the wrong cardinality");
  if (weight < 0) throw std::invalid_argument("family member has a negative weight");
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    throw std::invalid_argument("family member repeats an element");
  }
  members_.push_back(WeightedSet{std::move(elements), weight});
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

Score best_fitting(const SuperMatroid& sm, const WeightedSetFamily& f, std::span<const std::size_t> b) {
  Score best = -1;
  for (const auto& m : f.members()) {
    if (m.weight > best && sm.fits(m.elements, b)) best = m.weight;
  }
  return best;
}

}  // namespace

bool check_representative(const SuperMatroid& sm, const WeightedSetFamily& family,
                          const WeightedSetFamily& candidate, std::size_t q) {
  const std::size_t m = sm.size();
  if (q > m) return true;
  std::vector<std::size_t> b(q);
  for (std::size_t i = 0; i < q; ++i) b[i] = i;
  while (true) {
    const Score want = best_fitting(sm, family, b);
    if (want >= 0 && best_fitting(sm, candidate, b) < want) return false;
    // next q-combination of {0..m-1}
    std::size_t i = q;
    while (i > 0 && b[i - 1] == m - q + i - 1) --i;
    if (i == 0) break;
    ++b[i - 1];
    for (std::size_t j = i; j < q; ++j) b[j] = b[j - 1] + 1;
  }
  return true;
}

}  // namespace polytree
