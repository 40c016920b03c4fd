#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polytree/gf2.hpp"
#include "polytree/instance.hpp"

namespace polytree {

/// Graphic matroid on a set of arcs: a subset is independent iff it forms a
/// polytree. Represented over GF(2) by the n x m matrix whose column for arc
/// (v_i, v_j) has ones exactly in rows i and j.
class SuperMatroid {
 public:
  explicit SuperMatroid(const Instance& inst);
  /// Ground set given explicitly (deduplicated and sorted).
  SuperMatroid(std::size_t vertex_count, std::vector<Arc> ground_set);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t size() const noexcept { return arcs_.size(); }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  const Arc& arc(std::size_t e) const { return arcs_.at(e); }
  std::optional<std::size_t> index_of(Arc a) const;
  const Gf2Matrix& representation() const noexcept { return matrix_; }

  /// Union-find test of the arc subset (indices into the ground set).
  bool independent(std::span<const std::size_t> elements) const;
  /// A and B disjoint with A u B independent.
  bool fits(std::span<const std::size_t> a, std::span<const std::size_t> b) const;

 private:
  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
  Gf2Matrix matrix_;
};

/// Linear-algebra independence test: rank of the selected columns equals |A|.
bool gf2_independent(const SuperMatroid& sm, std::span<const std::size_t> elements);

struct WeightedSet {
  std::vector<std::size_t> elements;  // sorted ground-set indices
  Score weight = 0;

  friend bool operator==(const WeightedSet&, const WeightedSet&) = default;
};

/// A family of ground-set subsets that all have cardinality x.
class WeightedSetFamily {
 public:
  explicit WeightedSetFamily(std::size_t x = 0) : x_(x) {}

  /// Sorts `elements`; throws std::invalid_argument if the size is not x, an
  /// element repeats, or the weight is negative.
  void add(std::vector<std::size_t> elements, Score weight);

  std::size_t x() const noexcept { return x_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<WeightedSet>& members() const noexcept { return members_; }
  const WeightedSet& operator[](std::size_t i) const { return members_.at(i); }

 private:
  std::size_t x_;
  std::vector<WeightedSet> members_;
};

struct RepresentativeOptions {
  bool truncate = false;
  std::uint64_t seed = 0;
  int max_attempts = 4;  // the first try plus three retries with seed + 1, ...
  /// Up to this many coordinates the exterior vector is formed from every
  /// maximal minor; above it a seeded random sketch of the minors is used.
  std::uint64_t dense_minor_limit = 4096;
};

/// Max q-representative subfamily of `family`.
///
/// Members are visited by weight (descending, ties by element list) and kept
/// iff their exterior coordinate vector is linearly independent of the
/// vectors already kept. Without truncation the vectors live over GF(2) in
/// the exterior power of the n-row graphic representation and the result has
/// at most C(n, x) members. With truncation the representation is first
/// compressed to x + q rows over GF(2^64) by a seeded random matrix, so the
/// result has at most C(x + q, x) members; every independent member is
/// checked to stay independent after compression, and a failed check retries
/// with the next seed. Dependent members are dropped. Kept members carry
/// their original weights.
WeightedSetFamily representative_family(const SuperMatroid& sm, const WeightedSetFamily& family, std::size_t q,
                                        const RepresentativeOptions& options = {});

/// Brute force over every q-subset B of the ground set: whenever some member
/// of `family` fits B, some member of `candidate` fits B with at least the
/// same weight.
bool check_representative(const SuperMatroid& sm, const WeightedSetFamily& family,
                          const WeightedSetFamily& candidate, std::size_t q);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

}  // namespace polytree
