#include "magneto/isoperimetry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

namespace magneto {

namespace {

struct Candidate {
  std::int64_t order;
  CutReport report;
  SwitchingAssignment tau;
};

struct WorkerOutput {
  std::vector<Candidate> candidates;
  std::vector<std::pair<std::int64_t, CutReport>> profile;
  bool used_heuristic = false;
  std::exception_ptr error;
};

double slack(double value, const Tolerances& tol) { return tol.improvement * std::max(1.0, std::abs(value)); }

void atomic_min(std::atomic<double>& target, double value) {
  double current = target.load(std::memory_order_relaxed);
  while (value < current && !target.compare_exchange_weak(current, value, std::memory_order_relaxed)) {
  }
}

/// Calls f(order, subset) for every nonempty subset of {0..n-1} by increasing
/// popcount, then increasing mask (Gosper's hack).
template <class F>
void for_each_subset(int n, F&& f) {
  std::int64_t order = 0;
  const std::uint64_t limit = n >= 64 ? 0 : (std::uint64_t{1} << n);
  for (int size = 1; size <= n; ++size) {
    std::uint64_t mask = size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1;
    while (true) {
      f(order++, VertexSet(mask));
      if (size == n) break;
      const std::uint64_t lowest = mask & (~mask + 1);
      const std::uint64_t ripple = mask + lowest;
      if (ripple == 0 || (limit != 0 && ripple >= limit)) break;
      mask = (((ripple ^ mask) >> 2) / lowest) | ripple;
      if (limit != 0 && mask >= limit) break;
    }
  }
}

class QuotientMinimizer {
 public:
  QuotientMinimizer(const MagneticGraph& g, double exponent, const IsoperimetryOptions& options)
      : g_(g), exponent_(exponent), options_(options), best_(std::numeric_limits<double>::infinity()) {}

  void process(std::int64_t order, VertexSet subset, WorkerOutput& out) {
    const double vol = volume(g_, subset);
    const double boundary = boundary_measure(g_, subset);
    const double denom = exponent_ == 1.0 ? vol : std::pow(vol, exponent_);
    const double best_now = best_.load(std::memory_order_relaxed);
    const double admit = best_now + slack(best_now, options_.tol);
    const bool profile = options_.collect_profile;
    if (!profile && boundary / denom > admit) return;

    const double cutoff = profile ? std::numeric_limits<double>::infinity() : admit * denom - boundary;
    std::optional<FrustrationResult> frustration = frustrate(subset, cutoff, out);
    if (!frustration) return;

    CutReport report{subset, frustration->value, boundary, vol, (frustration->value + boundary) / denom,
                     frustration->exact};
    if (profile) out.profile.emplace_back(order, report);
    if (report.objective <= admit) {
      out.candidates.push_back({order, report, std::move(frustration->minimizer)});
      atomic_min(best_, report.objective);
    }
  }

  double best() const { return best_.load(); }

 private:
  std::optional<FrustrationResult> frustrate(VertexSet subset, double cutoff, WorkerOutput& out) {
    bool exact = options_.policy == FrustrationPolicy::kExact;
    if (options_.policy == FrustrationPolicy::kExactOrHeuristic) {
      exact = g_.group().is_cyclic() && gauge_fixed_search_size(g_, subset) <= options_.frustration_budget;
    }
    if (exact) {
      return frustration_exact_below(g_, subset, cutoff, options_.frustration_budget, options_.tol);
    }
    out.used_heuristic = true;
    return frustration_heuristic(g_, subset, options_.heuristic, options_.tol);
  }

  const MagneticGraph& g_;
  double exponent_;
  const IsoperimetryOptions& options_;
  std::atomic<double> best_;
};

}  // namespace

double volume_exponent(double delta) {
  if (std::isnan(delta) || !(delta > 1.0)) {
    throw Error(ErrorCode::kBadDelta, "isoperimetric dimension must exceed 1");
  }
  if (std::isinf(delta)) return 1.0;
  return (delta - 1.0) / delta;
}

IsoperimetricResult isoperimetric_constant(const MagneticGraph& g, double delta, const IsoperimetryOptions& options) {
  const double exponent = volume_exponent(delta);
  const int n = g.vertex_count();
  if (n < 1) throw Error(ErrorCode::kBudgetExceeded, "graph has no vertices");
  if (n > std::min(options.max_vertices, VertexSet::kMaxVertices - 1)) {
    throw Error(ErrorCode::kBudgetExceeded, "subset enumeration over " + std::to_string(n) +
                                                " vertices exceeds the limit of " + std::to_string(options.max_vertices));
  }
  if (options.policy == FrustrationPolicy::kExact && !g.group().is_cyclic()) {
    throw Error(ErrorCode::kContinuousGroup, "exact isoperimetric constants need a cyclic signature group");
  }

  QuotientMinimizer minimizer(g, exponent, options);
  const int threads = std::max(1, options.threads);
  std::vector<WorkerOutput> outputs(static_cast<std::size_t>(threads));
  auto work = [&](int t) {
    try {
      for_each_subset(n, [&](std::int64_t order, VertexSet subset) {
        if (order % threads == t) minimizer.process(order, subset, outputs[t]);
      });
    } catch (...) {
      outputs[t].error = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (auto& out : outputs) {
    if (out.error) std::rethrow_exception(out.error);
  }

  const double best = minimizer.best();
  const double admit = best + slack(best, options.tol);
  const Candidate* chosen = nullptr;
  bool used_heuristic = false;
  for (const auto& out : outputs) {
    used_heuristic = used_heuristic || out.used_heuristic;
    for (const Candidate& c : out.candidates) {
      if (c.report.objective <= admit && (chosen == nullptr || c.order < chosen->order)) chosen = &c;
    }
  }

  std::vector<CutReport> profile;
  if (options.collect_profile) {
    std::vector<std::pair<std::int64_t, CutReport>> merged;
    for (auto& out : outputs) merged.insert(merged.end(), out.profile.begin(), out.profile.end());
    std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    profile.reserve(merged.size());
    for (auto& entry : merged) profile.push_back(entry.second);
  }

  return IsoperimetricResult{delta, chosen->report.objective, chosen->report, chosen->tau, std::move(profile),
                             used_heuristic};
}

IsoperimetricResult cheeger_constant(const MagneticGraph& g, const IsoperimetryOptions& options) {
  return isoperimetric_constant(g, kInfiniteDimension, options);
}

ProductAdditivityReport verify_product_additivity(std::span<const MagneticGraph> factors,
                                                  const IsoperimetryOptions& options) {
  if (factors.empty()) throw Error(ErrorCode::kDimensionMismatch, "need at least one factor");
  ProductAdditivityReport report{};
  bool upper_bound = false;
  for (const MagneticGraph& factor : factors) {
    IsoperimetricResult h = cheeger_constant(factor, options);
    report.factor_constants.push_back(h.constant);
    upper_bound = upper_bound || h.upper_bound;
  }
  MagneticGraph product = cartesian_product(factors);
  IsoperimetricResult h_product = cheeger_constant(product, options);
  upper_bound = upper_bound || h_product.upper_bound;

  for (double h : report.factor_constants) report.factor_sum += h;
  report.product_constant = h_product.constant;
  report.lower = report.factor_sum / 3.0;
  report.upper = 3.0 * report.factor_sum;
  report.lower_margin = report.product_constant - report.lower;
  report.upper_margin = report.upper - report.product_constant;
  const double tol = options.tol.sobolev_slack * std::max(1.0, report.upper);
  report.holds = report.lower_margin >= -tol && report.upper_margin >= -tol;
  report.upper_bound_mode = upper_bound;
  report.product_vertices = product.vertex_count();
  return report;
}

TorusBounds torus_cheeger_bounds(std::span<const int> cycle_lengths, std::span<const GroupElement> cycle_signatures) {
  if (cycle_lengths.size() != cycle_signatures.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one signature per cycle is required");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < cycle_lengths.size(); ++j) {
    if (cycle_lengths[j] < 3) throw Error(ErrorCode::kNotACycle, "cycle lengths must be at least 3");
    sum += cycle_signatures[j].distance_to_one() / cycle_lengths[j];
  }
  return TorusBounds{sum / 3.0, 3.0 * sum};
}

}  // namespace magneto
