#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polytree/instance.hpp"

namespace polytree {

struct KernelOptions {
  std::uint64_t seed = 0;
  bool truncate = true;
};

struct KernelResult {
  Instance reduced;
  std::vector<std::pair<std::string, std::string>> vertex_map;  // (reduced name, original name)
  std::size_t d = 0;
  std::size_t p = 0;
};

/// Shrinks `inst` to its necessary vertices: the dependent vertices plus every
/// parent used by a kept entry. For each dependent v the padded parent-set
/// choices are compressed to a max ((d - 1) p)-representative family; only
/// stored entries surviving that compression remain, with their original
/// parent sets and scores. The optimum (and so every yes/no answer) is
/// preserved, |N'| <= (dp)^(p+1) + d and each vertex keeps at most (dp)^p
/// stored entries. The threshold is carried over.
KernelResult kernelize(const Instance& inst, const KernelOptions& options = {});

}  // namespace polytree
