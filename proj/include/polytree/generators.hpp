#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polytree/instance.hpp"

namespace polytree {

/// Simple undirected graph. Edges are stored as (smaller index, larger index)
/// pairs, sorted and unique.
struct UndirectedGraph {
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t size() const noexcept { return names.size(); }
  std::vector<std::vector<std::size_t>> adjacency() const;
};

/// Builds a graph on vertices "0".."n-1"; throws std::invalid_argument for a
/// self-loop, a repeated edge or an endpoint >= n.
UndirectedGraph make_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Graph file: "n m" on the first line, then m lines "u v" with 0-based
/// endpoints. Blank lines and lines starting with '#' are skipped.
UndirectedGraph parse_graph(std::string_view text);

/// Partition file: one class per line, whitespace-separated vertex indices.
std::vector<std::vector<std::size_t>> parse_partition(std::string_view text);

/// Instance with threshold k that is a yes-instance iff G has an independent
/// set of size k. Vertices: v1..vk, vstar, then w_<a>_<b> per edge. Throws
/// std::invalid_argument for k = 0 or an isolated vertex.
Instance gen_from_independent_set(const UndirectedGraph& g, std::size_t k);

/// Instance with threshold k that is a yes-instance iff G has an independent
/// set with one vertex from each class. Throws std::invalid_argument when the
/// classes do not partition V, some class is not a clique, or k < 2.
Instance gen_from_multicolored_is(const UndirectedGraph& g, const std::vector<std::vector<std::size_t>>& classes);

/// Name of the extra vertex added when some vertex of the last class has no
/// neighbour in the other classes.
inline constexpr std::string_view kMulticolorEmptyName = "vnull";

/// n vertices "x0".."x{n-1}"; each receives up to delta - 1 distinct random
/// nonempty parent sets of size <= p, scores uniform in [1, max_score].
/// Deterministic for a seed. Throws std::invalid_argument when delta = 0,
/// p >= n (for n > 0) or max_score < 1.
Instance gen_random(std::size_t n, std::size_t delta, std::size_t p, Score max_score, std::uint64_t seed);

/// Exact independent-set decision by subset enumeration (|V| <= 20).
bool brute_is(const UndirectedGraph& g, std::size_t k);

}  // namespace polytree
