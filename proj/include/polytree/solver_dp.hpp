#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polytree/instance.hpp"
#include "polytree/solver_enum.hpp"

namespace polytree {

struct DpOptions {
  std::size_t max_n = 20;
  std::size_t max_memory_bytes = std::size_t{8} << 30;
};

/// Bytes the table for `inst` will occupy.
std::size_t dp_memory_estimate(const Instance& inst);

/// Dynamic program over vertex subsets.
///
/// Entry T[v, P, S, i] is the best score of a polytree on {v} u P u S in which
/// v is childless, v's parent set is exactly P, and each of the parents
/// p_{i+1}..p_{|P|} (P in vertex order) touches only its arc into v.
///
///   T[v, P, {}, i] = f_v(P)
///   T[v, P, S, 0]  = f_v(P) + G[S]
///   T[v, P, S, i]  = max_{S' subset S} T[v, P, S \ S', i-1] + G[S' u {p_i}]
///
/// where G[U] is the best polytree on exactly the vertices U, i.e. the max of
/// T[v', P', U \ (P' u {v'}), |P'|] over every v' in U and P' in P_F(v') inside
/// U. Vertex subsets are evaluated in increasing numeric order so every entry
/// reads only strictly smaller subsets. The table is kept for traceback and
/// for `entry` queries.
class DpTable {
 public:
  explicit DpTable(const Instance& inst, const DpOptions& options = {});

  Score best_score() const;
  ArcSet best_arcs() const;

  /// G[U]: best score of a polytree on the vertex set `subset`.
  Score best_on(std::uint32_t subset) const;

  /// T[v, P, S, i] with P given as an index into potential_parents(inst, v).
  /// Throws std::invalid_argument for a key violating the table's domain.
  std::optional<Score> entry(Vertex v, std::size_t parent_set, std::uint32_t subset, std::size_t i) const;
  std::optional<Score> entry(Vertex v, std::span<const Vertex> parents, std::uint32_t subset, std::size_t i) const;

  std::size_t vertex_count() const noexcept { return n_; }

 private:
  struct Block {
    Vertex child = 0;
    std::uint32_t parents = 0;             // mask of P
    std::uint32_t free = 0;                // N \ (P u {v})
    std::vector<Vertex> ordered;           // p_1 < p_2 < ...
    Score score = 0;
    std::vector<std::array<std::uint32_t, 256>> deposit;  // compressed -> mask, per byte
    std::vector<Score> value;              // layers i = 1..|P|, 2^|free| each
    std::vector<std::uint32_t> split;      // maximizing S' (compressed)
  };

  std::uint32_t expand(const Block& b, std::uint32_t compressed) const;
  std::uint32_t compress(const Block& b, std::uint32_t subset) const;
  Score layer(const Block& b, std::size_t i, std::uint32_t compressed) const;
  void run();
  void trace_best(std::uint32_t subset, ArcSet& out) const;
  void trace_entry(const Block& b, std::size_t i, std::uint32_t compressed, ArcSet& out) const;

  const Instance* inst_;
  std::size_t n_;
  std::vector<Block> blocks_;
  std::vector<std::vector<std::size_t>> blocks_of_;  // per vertex, parallel to its entries
  std::vector<Score> best_;                          // G, indexed by subset
  std::vector<std::uint8_t> best_vertex_;            // sink of the maximizing entry
  std::vector<std::uint32_t> best_block_;            // block index + 1, or 0 for the empty parent set
};

Solution solve_dp(const Instance& inst, const DpOptions& options = {});

std::optional<Score> dp_entry(const Instance& inst, Vertex v, std::span<const Vertex> parents, std::uint32_t subset,
                              std::size_t i);

}  // namespace polytree
