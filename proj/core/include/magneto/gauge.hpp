#pragma once

#include <cstdint>
#include <optional>

#include "magneto/graph.hpp"
#include "magneto/tolerances.hpp"

namespace magneto {

inline constexpr std::int64_t kDefaultEnumerationBudget = 10'000'000;

struct FrustrationResult {
  double value;
  SwitchingAssignment minimizer;
  /// True when produced by exhaustive (gauge-fixed) enumeration.
  bool exact;
  std::int64_t evaluations;
};

/// sum over induced edges of w_uv |tau(u) - s_uv tau(v)|.
double l1_switch_cost(const MagneticGraph& g, VertexSet subset, const SwitchingAssignment& tau);

/// Size of the gauge-fixed search space: one vertex per connected component of
/// the induced subgraph is pinned to 1 and components are searched
/// independently, so this is sum_C k^(|C| - 1). Saturates at INT64_MAX.
std::int64_t gauge_fixed_search_size(const MagneticGraph& g, VertexSet subset);

/// Exact frustration index over S^1_k by branch and bound. Among minimisers
/// the lexicographically smallest exponent vector (in vertex order) is
/// returned. Throws kContinuousGroup on S^1 and kBudgetExceeded when the
/// search space exceeds `budget`.
FrustrationResult frustration_exact(const MagneticGraph& g, VertexSet subset,
                                    std::int64_t budget = kDefaultEnumerationBudget,
                                    const Tolerances& tol = default_tolerances());

/// Same search, abandoned as soon as the index is known to exceed `cutoff`.
/// Returns nullopt in that case.
std::optional<FrustrationResult> frustration_exact_below(const MagneticGraph& g, VertexSet subset, double cutoff,
                                                         std::int64_t budget = kDefaultEnumerationBudget,
                                                         const Tolerances& tol = default_tolerances());

struct HeuristicOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  /// Extra starting point tried before the random restarts.
  std::optional<SwitchingAssignment> warm_start;
  int max_sweeps = 10'000;
};

/// Coordinate descent on the switching cost; an upper bound on the index.
/// Starts from the spanning-forest gauge, the optional warm start and
/// `restarts` random assignments; keeps the best.
FrustrationResult frustration_heuristic(const MagneticGraph& g, VertexSet subset, const HeuristicOptions& options = {},
                                        const Tolerances& tol = default_tolerances());

/// Frustration of a unit-weight cycle with signature product sigma: |1 - sigma|.
double frustration_cycle_oracle(const GroupElement& sigma);

}  // namespace magneto
