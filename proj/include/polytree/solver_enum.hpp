#pragma once

#include <cstdint>

#include "polytree/instance.hpp"
#include "polytree/polytree.hpp"

namespace polytree {

struct Solution {
  Score best_score = 0;
  ArcSet best_arcs;
};

struct EnumOptions {
  std::uint64_t max_combinations = 100'000'000;
};

/// Product of |P_F(v)| over dependent vertices, saturating at UINT64_MAX.
std::uint64_t combination_count(const Instance& inst);

/// Tries every combination of one potential parent set per dependent vertex
/// and keeps the best polytree. Ties go to the lexicographically smallest
/// choice vector (dependent vertices in instance order, options in P_F order).
/// Throws BudgetExceeded when the combination count exceeds the budget.
Solution solve_enum(const Instance& inst, const EnumOptions& options = {});

/// solve_enum(inst).best_score >= inst.threshold().
bool decide_enum(const Instance& inst, const EnumOptions& options = {});

}  // namespace polytree
