#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace polytree {

using Vertex = std::uint32_t;
using Score = std::int64_t;

/// Largest accepted local score. Keeps every sum over a solution far away
/// from signed overflow.
inline constexpr Score kMaxScore = Score{1} << 40;

struct Arc {
  Vertex parent = 0;
  Vertex child = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// One stored local score f_v(P) > 0. `parents` is sorted ascending.
struct ParentSetEntry {
  Score score = 0;
  std::vector<Vertex> parents;

  friend bool operator==(const ParentSetEntry&, const ParentSetEntry&) = default;
};

/// Vertex set, local scores in non-zero representation, and threshold t.
///
/// Vertex order is the fixed total order every solver relies on. Only
/// strictly positive scores of nonempty parent sets are stored; every other
/// parent set, including the empty one, scores 0. The constructor enforces
/// these invariants and throws std::invalid_argument on violation.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<std::string> names,
           std::vector<std::vector<ParentSetEntry>> entries,
           Score threshold = 0);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Vertex v) const { return names_.at(v); }
  std::optional<Vertex> find(std::string_view name) const;

  std::span<const ParentSetEntry> entries(Vertex v) const { return entries_.at(v); }

  /// f_v(P) for a sorted parent list; 0 when P is not stored.
  Score local_score(Vertex v, std::span<const Vertex> sorted_parents) const;

  Score threshold() const noexcept { return threshold_; }
  Instance with_threshold(Score t) const;

  /// delta_F: the largest number of potential parent sets (empty set included).
  std::size_t delta() const noexcept;
  /// p: the largest stored parent-set cardinality (0 for an all-zero instance).
  std::size_t max_parent_size() const noexcept;
  std::size_t entry_count() const noexcept;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.names_ == b.names_ && a.entries_ == b.entries_ && a.threshold_ == b.threshold_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<ParentSetEntry>> entries_;
  std::unordered_map<std::string, Vertex> index_;
  Score threshold_ = 0;
};

Instance parse_instance(std::string_view text, Score threshold = 0);
Instance read_instance(const std::filesystem::path& path, Score threshold = 0);

/// Canonical score-file text: vertices in instance order, entries of each
/// vertex sorted by (|P|, parent index list).
std::string write_instance(const Instance& inst);

/// P_F(v): the empty set first, then the stored parent sets in entry order.
std::vector<std::vector<Vertex>> potential_parents(const Instance& inst, Vertex v);

/// Vertices with at least one stored entry, in instance order.
std::vector<Vertex> dependent_vertices(const Instance& inst);

/// Directed superstructure S_F: (u, v) present iff u occurs in some stored
/// parent set of v. Arcs are sorted by (parent, child).
struct Superstructure {
  std::vector<Arc> arcs;
  std::map<Arc, std::size_t> arc_index;

  std::size_t m() const noexcept { return arcs.size(); }
  std::optional<std::size_t> index_of(Arc a) const;
};

Superstructure build_superstructure(const Instance& inst);

/// Name of the i-th (1-based) padding vertex created for `base`.
std::string padding_name(std::string_view base, std::size_t i);

/// Gives every dependent vertex v the fresh nondependent vertices
/// v__pad1..v__padp (appended after the original vertices, grouped by v) and
/// lifts each stored P with |P| < p to P plus v's first p - |P| pads, score
/// unchanged. Original vertex indices are preserved.
Instance pad_to_uniform(const Instance& inst, std::size_t p);

/// One parent-set choice of a dependent vertex after uniform padding.
struct PaddedOption {
  std::vector<Vertex> parents;           // sorted, exactly p vertices
  Score score = 0;
  std::optional<std::size_t> entry;      // stored entry it lifts; empty for the all-padding set
};

/// Everything the representative-set algorithms need about the padded
/// instance: per dependent vertex every nonempty option of size exactly p,
/// including the zero-score all-padding set that stands in for the empty
/// parent set, and the ground set those options span.
struct UniformPadding {
  Instance padded;
  std::size_t original_size = 0;
  std::size_t p = 0;
  std::vector<Vertex> dependents;
  std::vector<std::vector<PaddedOption>> options;  // parallel to `dependents`
  std::vector<Arc> ground_set;                     // sorted, deduplicated
};

UniformPadding make_uniform_padding(const Instance& inst);

}  // namespace polytree
