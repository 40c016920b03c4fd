#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <stdexcept>

#include "polytree/errors.hpp"
#include "polytree/gf2.hpp"
#include "polytree/matroid.hpp"
#include "polytree/polytree.hpp"

namespace polytree {

namespace {

constexpr std::size_t kMaxSupport = std::size_t{1} << 20;
constexpr std::size_t kInitialSketch = 32;

std::vector<std::size_t> visit_order(const WeightedSetFamily& f) {
  std::vector<std::size_t> order(f.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = f[a];
    const auto& y = f[b];
    if (x.weight != y.weight) return x.weight > y.weight;
    return x.elements < y.elements;
  });
  return order;
}

// ---------------------------------------------------------------------------
// Exact mode: exterior vectors over GF(2).
//
// A forest's x-th exterior vector in the graphic representation has a 1 at
// row set R iff R omits exactly one vertex of every tree and nothing else. An
// arc with an endpoint u of degree one in the ground set is replaced by e_u
// (row_w += row_u, which leaves the matroid and the kept/dropped decisions
// unchanged); such arcs pin row u, which keeps supports small.

struct RowMask {
  std::array<std::uint64_t, 4> w{};

  void set(std::size_t r) { w[r / 64] |= std::uint64_t{1} << (r % 64); }
  void clear(std::size_t r) { w[r / 64] &= ~(std::uint64_t{1} << (r % 64)); }
  friend bool operator==(const RowMask&, const RowMask&) = default;
  friend bool operator<(const RowMask& a, const RowMask& b) {
    for (int i = 3; i >= 0; --i) {
      if (a.w[i] != b.w[i]) return a.w[i] < b.w[i];
    }
    return false;
  }
};

using SparseVector = std::vector<RowMask>;  // sorted ascending, coefficients all 1

SparseVector symmetric_difference(const SparseVector& a, const SparseVector& b) {
  SparseVector out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class ExactExterior {
 public:
  ExactExterior(const SuperMatroid& sm, const WeightedSetFamily& f) : sm_(sm), row_of_(sm.vertex_count(), kNone) {
    std::vector<std::size_t> degree(sm.vertex_count(), 0);
    for (const Arc& a : sm.arcs()) {
      ++degree[a.parent];
      ++degree[a.child];
    }
    pinned_.assign(sm.size(), kNone);
    for (std::size_t e = 0; e < sm.size(); ++e) {
      const Arc& a = sm.arc(e);
      if (degree[a.parent] == 1 && (degree[a.child] != 1 || a.parent < a.child)) {
        pinned_[e] = a.parent;
      } else if (degree[a.child] == 1) {
        pinned_[e] = a.child;
      }
    }
    // Rows are renumbered to the vertices the family touches.
    std::size_t rows = 0;
    for (const auto& m : f.members()) {
      for (std::size_t e : m.elements) {
        for (Vertex v : {sm.arc(e).parent, sm.arc(e).child}) {
          if (row_of_[v] == kNone) row_of_[v] = rows++;
        }
      }
    }
    if (rows > 256) throw BudgetExceeded("exact representative family supports at most 256 touched vertices");
  }

  // Empty result for a dependent set.
  SparseVector vector_of(const std::vector<std::size_t>& elements) const {
    const std::size_t n = sm_.vertex_count();
    DisjointSetForest dsu(n);
    for (std::size_t e : elements) {
      if (!dsu.unite(sm_.arc(e).parent, sm_.arc(e).child)) return {};
    }
    RowMask fixed;
    DisjointSetForest comp(n);
    std::vector<Vertex> touched;
    for (std::size_t e : elements) {
      const Arc& a = sm_.arc(e);
      if (pinned_[e] != kNone) {
        fixed.set(row_of_[pinned_[e]]);
        continue;
      }
      comp.unite(a.parent, a.child);
      touched.push_back(a.parent);
      touched.push_back(a.child);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    // Group the free vertices by tree.
    std::map<std::size_t, std::vector<std::size_t>> trees;
    for (Vertex v : touched) trees[comp.find(v)].push_back(row_of_[v]);
    std::size_t support = 1;
    for (const auto& [root, rows] : trees) {
      support *= rows.size();
      if (support > kMaxSupport) throw BudgetExceeded("exterior vector support exceeds the exact-mode budget");
      for (std::size_t r : rows) fixed.set(r);
    }
    // Every choice of one omitted vertex per tree.
    std::vector<const std::vector<std::size_t>*> list;
    for (const auto& [root, rows] : trees) list.push_back(&rows);
    SparseVector out;
    out.reserve(support);
    std::vector<std::size_t> pick(list.size(), 0);
    while (true) {
      RowMask key = fixed;
      for (std::size_t t = 0; t < list.size(); ++t) key.clear((*list[t])[pick[t]]);
      out.push_back(key);
      std::size_t t = 0;
      while (t < list.size() && ++pick[t] == list[t]->size()) pick[t++] = 0;
      if (t == list.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  const SuperMatroid& sm_;
  std::vector<std::size_t> pinned_;
  std::vector<std::size_t> row_of_;
};

WeightedSetFamily exact_family(const SuperMatroid& sm, const WeightedSetFamily& f) {
  WeightedSetFamily out(f.x());
  ExactExterior ext(sm, f);
  std::map<RowMask, SparseVector> basis;  // keyed by the largest row set
  for (std::size_t idx : visit_order(f)) {
    SparseVector v = ext.vector_of(f[idx].elements);
    while (!v.empty()) {
      auto it = basis.find(v.back());
      if (it == basis.end()) {
        const RowMask pivot = v.back();
        basis.emplace(pivot, std::move(v));
        out.add(f[idx].elements, f[idx].weight);
        break;
      }
      v = symmetric_difference(v, it->second);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truncated mode over GF(2^64).

class Gf64Basis {
 public:
  explicit Gf64Basis(std::size_t dim) : dim_(dim) {}

  // Reduces v in place; true (and stored) when it is independent.
  bool insert(std::vector<std::uint64_t>& v) {
    for (const auto& [pivot, b] : rows_) {
      const std::uint64_t c = v[pivot];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) v[j] ^= gf64::mul(c, b[j]);
    }
    std::size_t pivot = 0;
    while (pivot < dim_ && v[pivot] == 0) ++pivot;
    if (pivot == dim_) return false;
    const std::uint64_t s = gf64::inv(v[pivot]);
    for (std::size_t j = 0; j < dim_; ++j) v[j] = gf64::mul(s, v[j]);
    rows_.emplace_back(pivot, v);
    return true;
  }

  std::size_t size() const noexcept { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> rows_;
};

struct TruncationAttempt {
  bool failed = false;
  bool saturated = false;
  WeightedSetFamily kept;
};

TruncationAttempt truncated_attempt(const SuperMatroid& sm, const WeightedSetFamily& f, std::size_t r,
                                    std::uint64_t seed, std::size_t sketch) {
  const std::size_t x = f.x();
  const std::size_t n = sm.vertex_count();
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> proj(r * n);  // proj[i * n + v]
  for (auto& c : proj) c = rng();

  const std::uint64_t minors = binomial(r, x);
  const bool dense = sketch == 0;
  const std::size_t dim = dense ? static_cast<std::size_t>(minors) : sketch;

  std::vector<std::vector<std::size_t>> row_sets;
  std::vector<std::uint64_t> zs;  // sketch: dim matrices of x by r
  if (dense) {
    std::vector<std::size_t> c(x);
    for (std::size_t i = 0; i < x; ++i) c[i] = i;
    while (true) {
      row_sets.push_back(c);
      std::size_t i = x;
      while (i > 0 && c[i - 1] == r - x + i - 1) --i;
      if (i == 0) break;
      ++c[i - 1];
      for (std::size_t j = i; j < x; ++j) c[j] = c[j - 1] + 1;
    }
  } else {
    std::mt19937_64 zrng(seed ^ 0x9e3779b97f4a7c15ULL);
    zs.resize(dim * x * r);
    for (auto& z : zs) z = zrng();
  }

  TruncationAttempt out{false, false, WeightedSetFamily(x)};
  Gf64Basis basis(dim);
  std::vector<std::uint64_t> t(r * x), scratch, coords(dim);
  for (std::size_t idx : visit_order(f)) {
    const auto& m = f[idx];
    if (!sm.independent(m.elements)) continue;
    // T_A = R * phi(A), r by x.
    for (std::size_t c = 0; c < x; ++c) {
      const Arc& a = sm.arc(m.elements[c]);
      for (std::size_t i = 0; i < r; ++i) t[i * x + c] = proj[i * n + a.parent] ^ proj[i * n + a.child];
    }
    scratch = t;
    if (gf64::rank(scratch, r, x) < x) {
      out.failed = true;
      return out;
    }
    if (dense) {
      scratch.resize(x * x);
      for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t i = 0; i < x; ++i) {
          for (std::size_t j = 0; j < x; ++j) scratch[i * x + j] = t[row_sets[k][i] * x + j];
        }
        coords[k] = x == 0 ? 1 : gf64::det(scratch, x);
      }
    } else {
      scratch.resize(x * x);
      for (std::size_t k = 0; k < dim; ++k) {
        const std::uint64_t* z = zs.data() + k * x * r;
        for (std::size_t i = 0; i < x; ++i) {
          for (std::size_t j = 0; j < x; ++j) {
            std::uint64_t acc = 0;
            for (std::size_t l = 0; l < r; ++l) acc ^= gf64::mul(z[i * r + l], t[l * x + j]);
            scratch[i * x + j] = acc;
          }
        }
        coords[k] = gf64::det(scratch, x);
      }
    }
    if (basis.insert(coords)) {
      out.kept.add(m.elements, m.weight);
      if (!dense && basis.size() == dim && dim < minors) {
        out.saturated = true;
        return out;
      }
    }
  }
  return out;
}

WeightedSetFamily truncated_family(const SuperMatroid& sm, const WeightedSetFamily& f, std::size_t q,
                                   const RepresentativeOptions& options) {
  const std::size_t x = f.x();
  const std::size_t r = x + q;
  const std::uint64_t minors = binomial(r, x);
  std::uint64_t seed = options.seed;
  std::uint64_t last = seed;
  for (int attempt = 1; attempt <= options.max_attempts; ++attempt, ++seed) {
    last = seed;
    std::size_t sketch =
        minors <= options.dense_minor_limit ? 0 : static_cast<std::size_t>(std::min<std::uint64_t>(kInitialSketch, minors));
    while (true) {
      TruncationAttempt a = truncated_attempt(sm, f, r, seed, sketch);
      if (a.failed) break;
      if (!a.saturated) return std::move(a.kept);
      // The sketch ran out of room; widen it (it never needs more than C(r, x)).
      sketch *= 2;
      if (sketch >= minors) sketch = static_cast<std::size_t>(minors);
      if (sketch > kMaxSupport) throw BudgetExceeded("representative sketch width exceeds the budget");
    }
  }
  throw TruncationFailure(last, options.max_attempts);
}

}  // namespace

WeightedSetFamily representative_family(const SuperMatroid& sm, const WeightedSetFamily& family, std::size_t q,
                                        const RepresentativeOptions& options) {
  if (family.empty()) return WeightedSetFamily(family.x());
  if (family.x() == 0) {
    // Only the empty set; keep its heaviest copy.
    WeightedSetFamily out(0);
    const auto& best = family[visit_order(family).front()];
    out.add({}, best.weight);
    return out;
  }
  if (options.truncate) return truncated_family(sm, family, q, options);
  return exact_family(sm, family);
}

}  // namespace polytree
