#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polytree/instance.hpp"
#include "polytree/matroid.hpp"
#include "polytree/solver_enum.hpp"

namespace polytree {

enum class Truncation {
  kOff,   // exact GF(2) exterior vectors
  kOn,    // randomized truncation to rank x + q
  kAuto,  // exact, falling back to truncation when the exact budget runs out
};

struct FptOptions {
  std::uint64_t seed = 0;
  Truncation truncate = Truncation::kAuto;
};

/// F (+)_v P: every member of F extended by the arcs P x {v}; unions that are
/// not polytrees are dropped and survivors gain weight f_v(P). Throws
/// std::invalid_argument when P is empty, an arc of P x {v} is missing from
/// the ground set, or a member already gives v a parent.
WeightedSetFamily extend_family(const SuperMatroid& sm, const WeightedSetFamily& family, Vertex v,
                                std::span<const Vertex> parents, Score score);

/// Intermediate state of solve_fpt, recorded for testing.
struct FptTrace {
  UniformPadding padding;
  std::vector<Arc> ground_set;
  std::vector<WeightedSetFamily> families;  // families[i] after processing i dependent vertices
};

/// Iterated representative-family compression over the padded instance.
/// Dependent vertices are processed in instance order; after step i the
/// family keeps a max ((d - i) p)-representative of all partial solutions.
/// The returned arcs have padding stripped and are re-verified.
Solution solve_fpt(const Instance& inst, const FptOptions& options = {}, FptTrace* trace = nullptr);

}  // namespace polytree
