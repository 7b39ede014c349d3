#pragma once

#include <limits>
#include <span>
#include <vector>

#include "magneto/gauge.hpp"

namespace magneto {

inline constexpr double kInfiniteDimension = std::numeric_limits<double>::infinity();

enum class FrustrationPolicy {
  kExact,             // exhaustive search; fails loudly on budget overrun
  kHeuristic,         // coordinate descent everywhere; upper bounds only
  kExactOrHeuristic,  // exact where the search fits in the budget
};

struct CutReport {
  VertexSet subset;
  double frustration = 0.0;
  double boundary = 0.0;
  double volume = 0.0;
  /// (frustration + boundary) / volume^((delta-1)/delta).
  double objective = 0.0;
  bool frustration_exact = true;
};

struct IsoperimetryOptions {
  int max_vertices = 14;
  std::int64_t frustration_budget = kDefaultEnumerationBudget;
  FrustrationPolicy policy = FrustrationPolicy::kExact;
  HeuristicOptions heuristic{};
  bool collect_profile = false;
  int threads = 1;
  Tolerances tol{};
};

struct IsoperimetricResult {
  double delta;
  double constant;
  CutReport argmin;
  /// Minimising switching on argmin.subset.
  SwitchingAssignment argmin_switching;
  /// Every nonempty subset in enumeration order, when requested.
  std::vector<CutReport> profile;
  /// Some frustration value came from the heuristic, so `constant` is only an
  /// upper bound.
  bool upper_bound;
};

/// (delta - 1) / delta, or 1 for delta = infinity. kBadDelta unless delta > 1.
double volume_exponent(double delta);

/// Minimises (iota(V1) + |E(V1, V1^c)|) / vol(V1)^((delta-1)/delta) over all
/// nonempty V1. Subsets are visited by increasing size, then increasing
/// bitmask; the argmin is the first subset within tolerance of the minimum.
IsoperimetricResult isoperimetric_constant(const MagneticGraph& g, double delta,
                                           const IsoperimetryOptions& options = {});

/// Signed one-way Cheeger constant (delta = infinity).
IsoperimetricResult cheeger_constant(const MagneticGraph& g, const IsoperimetryOptions& options = {});

struct ProductAdditivityReport {
  std::vector<double> factor_constants;
  double factor_sum;
  double product_constant;
  double lower;  // factor_sum / 3
  double upper;  // 3 * factor_sum
  double lower_margin;
  double upper_margin;
  bool holds;
  bool upper_bound_mode;
  int product_vertices;
};

/// Computes h of each factor and of their signed Cartesian product and checks
/// (1/3) sum h(G_j) <= h(G_1 x ... x G_m) <= 3 sum h(G_j).
ProductAdditivityReport verify_product_additivity(std::span<const MagneticGraph> factors,
                                                  const IsoperimetryOptions& options = {});

struct TorusBounds {
  double lower;
  double upper;
};

/// Certified interval for h of a unit-weight torus C_{n_1} x ... x C_{n_m}
/// with cycle signatures sigma_j.
TorusBounds torus_cheeger_bounds(std::span<const int> cycle_lengths, std::span<const GroupElement> cycle_signatures);

}  // namespace magneto
