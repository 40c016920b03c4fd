#include "polytree/solver_dp.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "polytree/errors.hpp"

namespace polytree {

namespace {

constexpr std::size_t kHardMaxN = 31;

std::uint32_t bit_of(Vertex v) { return std::uint32_t{1} << v; }

std::uint32_t mask_of(std::span<const Vertex> vs) {
  std::uint32_t m = 0;
  for (Vertex v : vs) m |= bit_of(v);
  return m;
}

}  // namespace

std::size_t dp_memory_estimate(const Instance& inst) {
  const std::size_t n = inst.size();
  if (n > kHardMaxN) return static_cast<std::size_t>(-1);
  std::size_t bytes = (std::size_t{1} << n) * (sizeof(Score) + sizeof(std::uint32_t) + sizeof(std::uint8_t));
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& e : inst.entries(v)) {
      const std::size_t free_bits = n - e.parents.size() - 1;
      const std::size_t chunks = (free_bits + 7) / 8;
      bytes += e.parents.size() * (std::size_t{1} << free_bits) * (sizeof(Score) + sizeof(std::uint32_t));
      bytes += chunks * 256 * sizeof(std::uint32_t);
    }
  }
  return bytes;
}

DpTable::DpTable(const Instance& inst, const DpOptions& options) : inst_(&inst), n_(inst.size()) {
  if (n_ > options.max_n || n_ > kHardMaxN) {
    throw BudgetExceeded("subset DP refuses n = " + std::to_string(n_) + " (limit " +
                         std::to_string(std::min(options.max_n, kHardMaxN)) + "); estimated table size " +
                         std::to_string(dp_memory_estimate(inst)) + " bytes");
  }
  const std::size_t estimate = dp_memory_estimate(inst);
  if (estimate > options.max_memory_bytes) {
    throw BudgetExceeded("subset DP needs about " + std::to_string(estimate) + " bytes (budget " +
                         std::to_string(options.max_memory_bytes) + ")");
  }

  const std::uint32_t all = n_ == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n_) - 1;
  blocks_of_.resize(n_);
  for (Vertex v = 0; v < n_; ++v) {
    for (const auto& e : inst.entries(v)) {
      Block b;
      b.child = v;
      b.parents = mask_of(e.parents);
      b.free = all & ~b.parents & ~bit_of(v);
      b.ordered = e.parents;
      b.score = e.score;
      const int free_bits = std::popcount(b.free);
      const int chunks = (free_bits + 7) / 8;
      b.deposit.resize(static_cast<std::size_t>(chunks));
      std::vector<std::uint32_t> positions;
      for (std::uint32_t f = b.free; f; f &= f - 1) positions.push_back(f & (~f + 1));
      for (int c = 0; c < chunks; ++c) {
        for (std::uint32_t byte = 0; byte < 256; ++byte) {
          std::uint32_t out = 0;
          for (int k = 0; k < 8; ++k) {
            const std::size_t pos = static_cast<std::size_t>(c * 8 + k);
            if ((byte >> k) & 1U && pos < positions.size()) out |= positions[pos];
          }
          b.deposit[static_cast<std::size_t>(c)][byte] = out;
        }
      }
      const std::size_t layer_size = std::size_t{1} << free_bits;
      b.value.assign(e.parents.size() * layer_size, -1);
      b.split.assign(e.parents.size() * layer_size, 0);
      blocks_of_[v].push_back(blocks_.size());
      blocks_.push_back(std::move(b));
    }
  }
  run();
}

std::uint32_t DpTable::expand(const Block& b, std::uint32_t compressed) const {
  std::uint32_t out = 0;
  for (std::size_t c = 0; compressed != 0; ++c, compressed >>= 8) out |= b.deposit[c][compressed & 0xFFU];
  return out;
}

std::uint32_t DpTable::compress(const Block& b, std::uint32_t subset) const {
  std::uint32_t out = 0;
  std::uint32_t k = 0;
  for (std::uint32_t f = b.free; f; f &= f - 1, ++k) {
    if (subset & f & (~f + 1)) out |= std::uint32_t{1} << k;
  }
  return out;
}

Score DpTable::layer(const Block& b, std::size_t i, std::uint32_t compressed) const {
  if (i == 0) return b.score + best_[expand(b, compressed)];
  const std::size_t layer_size = std::size_t{1} << std::popcount(b.free);
  return b.value[(i - 1) * layer_size + compressed];
}

void DpTable::run() {
  const std::size_t subsets = std::size_t{1} << n_;
  best_.assign(subsets, -1);
  best_vertex_.assign(subsets, 0);
  best_block_.assign(subsets, 0);
  best_[0] = 0;

  for (std::uint32_t w = 1; w < subsets; ++w) {
    Score best = -1;
    std::uint8_t arg_vertex = 0;
    std::uint32_t arg_block = 0;
    for (std::uint32_t bits = w; bits; bits &= bits - 1) {
      const auto v = static_cast<Vertex>(std::countr_zero(bits));
      const std::uint32_t rest = w & ~bit_of(v);
      // v childless with the empty parent set: the rest is an independent polytree.
      if (best_[rest] > best) {
        best = best_[rest];
        arg_vertex = static_cast<std::uint8_t>(v);
        arg_block = 0;
      }
      for (std::size_t bi : blocks_of_[v]) {
        Block& b = blocks_[bi];
        if (b.parents & ~rest) continue;
        const std::uint32_t s = compress(b, rest & ~b.parents);
        const std::size_t layer_size = std::size_t{1} << std::popcount(b.free);
        const std::size_t k = b.ordered.size();
        for (std::size_t i = 1; i <= k; ++i) {
          const std::uint32_t pi = bit_of(b.ordered[i - 1]);
          Score top = -1;
          std::uint32_t top_split = 0;
          std::uint32_t sub = s;
          while (true) {
            const std::uint32_t keep = s ^ sub;
            const Score left = i == 1 ? b.score + best_[expand(b, keep)] : b.value[(i - 2) * layer_size + keep];
            const Score right = best_[expand(b, sub) | pi];
            if (left + right > top) {
              top = left + right;
              top_split = sub;
            }
            if (sub == 0) break;
            sub = (sub - 1) & s;
          }
          b.value[(i - 1) * layer_size + s] = top;
          b.split[(i - 1) * layer_size + s] = top_split;
        }
        const Score cand = b.value[(k - 1) * layer_size + s];
        if (cand > best) {
          best = cand;
          arg_vertex = static_cast<std::uint8_t>(v);
          arg_block = static_cast<std::uint32_t>(bi + 1);
        }
      }
    }
    best_[w] = best;
    best_vertex_[w] = arg_vertex;
    best_block_[w] = arg_block;
  }
}

Score DpTable::best_score() const { return best_[best_.size() - 1]; }

Score DpTable::best_on(std::uint32_t subset) const {
  if (subset >= best_.size()) throw std::invalid_argument("subset outside the vertex set");
  return best_[subset];
}

void DpTable::trace_best(std::uint32_t subset, ArcSet& out) const {
  while (subset != 0) {
    const Vertex v = best_vertex_[subset];
    const std::uint32_t blk = best_block_[subset];
    if (blk == 0) {
      subset &= ~bit_of(v);
      continue;
    }
    const Block& b = blocks_[blk - 1];
    trace_entry(b, b.ordered.size(), compress(b, subset & ~b.parents & ~bit_of(v)), out);
    return;
  }
}

void DpTable::trace_entry(const Block& b, std::size_t i, std::uint32_t compressed, ArcSet& out) const {
  const std::size_t layer_size = std::size_t{1} << std::popcount(b.free);
  while (i > 0) {
    const std::uint32_t sub = b.split[(i - 1) * layer_size + compressed];
    trace_best(expand(b, sub) | bit_of(b.ordered[i - 1]), out);
    compressed ^= sub;
    --i;
  }
  for (Vertex u : b.ordered) out.push_back(Arc{u, b.child});
  trace_best(expand(b, compressed), out);
}

ArcSet DpTable::best_arcs() const {
  ArcSet out;
  trace_best(static_cast<std::uint32_t>(best_.size() - 1), out);
  return normalized(std::move(out));
}

std::optional<Score> DpTable::entry(Vertex v, std::size_t parent_set, std::uint32_t subset, std::size_t i) const {
  if (v >= n_) throw std::invalid_argument("vertex out of range");
  if (subset >= best_.size()) throw std::invalid_argument("subset outside the vertex set");
  if (subset & bit_of(v)) throw std::invalid_argument("subset contains the child vertex");
  if (parent_set == 0) {
    if (i != 0) throw std::invalid_argument("index i exceeds |P| = 0");
    return best_[subset];
  }
  if (parent_set > blocks_of_[v].size()) throw std::invalid_argument("not a potential parent set of the vertex");
  const Block& b = blocks_[blocks_of_[v][parent_set - 1]];
  if (subset & b.parents) throw std::invalid_argument("subset intersects the parent set");
  if (i > b.ordered.size()) throw std::invalid_argument("index i exceeds |P|");
  const Score value = layer(b, i, compress(b, subset));
  if (value < 0) return std::nullopt;
  return value;
}

std::optional<Score> DpTable::entry(Vertex v, std::span<const Vertex> parents, std::uint32_t subset,
                                    std::size_t i) const {
  if (v >= n_) throw std::invalid_argument("vertex out of range");
  if (parents.empty()) return entry(v, 0, subset, i);
  std::vector<Vertex> sorted(parents.begin(), parents.end());
  std::sort(sorted.begin(), sorted.end());
  const auto list = inst_->entries(v);
  for (std::size_t j = 0; j < list.size(); ++j) {
    if (list[j].parents == sorted) return entry(v, j + 1, subset, i);
  }
  throw std::invalid_argument("not a potential parent set of the vertex");
}

Solution solve_dp(const Instance& inst, const DpOptions& options) {
  DpTable table(inst, options);
  return Solution{table.best_score(), table.best_arcs()};
}

std::optional<Score> dp_entry(const Instance& inst, Vertex v, std::span<const Vertex> parents, std::uint32_t subset,
                              std::size_t i) {
  DpTable table(inst);
  return table.entry(v, parents, subset, i);
}

}  // namespace polytree
