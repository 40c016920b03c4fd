#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polytree/instance.hpp"

namespace polytree {

/// A set of arcs. Functions taking an ArcSet treat it as a set; use
/// `normalized` to sort and drop duplicates.
using ArcSet = std::vector<Arc>;

ArcSet normalized(ArcSet arcs);

/// Union by rank with path compression.
class DisjointSetForest {
 public:
  explicit DisjointSetForest(std::size_t n);

  std::size_t find(std::size_t x);
  /// Merges the sets of a and b; false when they were already one set.
  bool unite(std::size_t a, std::size_t b);
  void reset();
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

/// True iff (N, arcs) is a DAG whose skeleton is a forest. Each arc is one
/// skeleton edge, so an anti-parallel pair is rejected as a 2-cycle and a
/// self-loop as a 1-cycle. Throws std::out_of_range for an index >= n.
bool is_polytree(std::size_t n, std::span<const Arc> arcs);

/// Parent set of every vertex under `arcs`, each sorted.
std::vector<std::vector<Vertex>> parent_sets(std::size_t n, std::span<const Arc> arcs);

/// Sum of f_v(P^A_v); unstored parent sets contribute 0.
Score score(const Instance& inst, std::span<const Arc> arcs);

struct VerifyReport {
  bool polytree = false;
  Score score = 0;
  bool meets_t = false;

  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

VerifyReport verify_solution(const Instance& inst, std::span<const Arc> arcs);

/// Arc list text: one "PARENT CHILD" pair of vertex names per line.
ArcSet parse_arcs(std::string_view text, const Instance& inst);
std::string write_arcs(const Instance& inst, std::span<const Arc> arcs);

}  // namespace polytree
