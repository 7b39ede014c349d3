#include "magneto/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace magneto {

namespace {

void require_subset(const MagneticGraph& g, VertexSet subset) {
  if (!g.supports_vertex_sets()) {
    throw Error(ErrorCode::kTooManyVertices, "vertex subsets need n <= 64");
  }
  if (!subset.is_subset_of(VertexSet::full(g.vertex_count()))) {
    throw Error(ErrorCode::kVertexOutOfRange, "subset contains vertices outside the graph");
  }
}

double threshold(double value, const Tolerances& tol) { return tol.improvement * std::max(1.0, std::abs(value)); }

/// Connected components of the induced subgraph, each sorted ascending.
std::vector<std::vector<int>> components(const MagneticGraph& g, VertexSet subset) {
  std::vector<std::vector<int>> out;
  VertexSet unseen = subset;
  while (!unseen.empty()) {
    VertexSet comp;
    VertexSet frontier = VertexSet::single(std::countr_zero(unseen.bits()));
    while (!frontier.empty()) {
      comp = comp | frontier;
      VertexSet next;
      frontier.for_each([&](int u) { next = next | g.neighbor_mask(u); });
      frontier = VertexSet(next.bits() & subset.bits() & ~comp.bits());
    }
    unseen = VertexSet(unseen.bits() & ~comp.bits());
    out.push_back(comp.members());
  }
  return out;
}

std::int64_t saturating_pow(std::int64_t base, int exp) {
  std::int64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (result > std::numeric_limits<std::int64_t>::max() / base) return std::numeric_limits<std::int64_t>::max();
    result *= base;
  }
  return result;
}

struct BackEdge {
  int earlier;  // position in component order
  double weight;
  int exponent;  // s_{earlier, current}
};

/// Branch and bound over one connected component in ascending vertex order,
/// first vertex pinned to exponent 0.
class ComponentSearch {
 public:
  ComponentSearch(const MagneticGraph& g, const std::vector<int>& vertices, const Tolerances& tol)
      : k_(g.group().order()), tol_(tol), size_(static_cast<int>(vertices.size())), back_(vertices.size()) {
    distance_.resize(k_);
    for (int j = 0; j < k_; ++j) distance_[j] = GroupElement::cyclic(j, k_).distance_to_one();
    for (int i = 0; i < size_; ++i) {
      for (int p = 0; p < i; ++p) {
        auto idx = g.find_edge(vertices[p], vertices[i]);
        if (!idx) continue;
        back_[i].push_back({p, g.edges()[*idx].weight, g.signature(vertices[p], vertices[i]).exponent()});
      }
    }
    current_.assign(size_, 0);
  }

  /// Minimum cost not above `cutoff`; false if none exists.
  bool run(double cutoff) {
    cutoff_ = cutoff;
    found_ = false;
    leaves_ = 0;
    if (size_ == 1) {
      ++leaves_;
      found_ = 0.0 <= cutoff_;
      best_value_ = 0.0;
      best_ = current_;
      return found_;
    }
    descend(1, 0.0);
    return found_;
  }

  double best_value() const { return best_value_; }
  const std::vector<int>& best() const { return best_; }
  std::int64_t leaves() const { return leaves_; }

 private:
  bool prune(double partial) const {
    return found_ ? partial >= best_value_ - threshold(best_value_, tol_) : partial > cutoff_;
  }

  void descend(int pos, double partial) {
    for (int j = 0; j < k_; ++j) {
      double cost = partial;
      for (const BackEdge& e : back_[pos]) {
        // w |tau(a) - s tau(b)| = w |1 - xi^{-j_a + s + j_b}|
        int d = (e.exponent + j - current_[e.earlier]) % k_;
        if (d < 0) d += k_;
        cost += e.weight * distance_[d];
      }
      if (prune(cost)) continue;
      current_[pos] = j;
      if (pos + 1 == size_) {
        ++leaves_;
        found_ = true;
        best_value_ = cost;
        best_ = current_;
      } else {
        descend(pos + 1, cost);
      }
    }
    current_[pos] = 0;
  }

  int k_;
  const Tolerances& tol_;
  int size_;
  std::vector<std::vector<BackEdge>> back_;
  std::vector<double> distance_;
  std::vector<int> current_;
  std::vector<int> best_;
  double best_value_ = 0.0;
  double cutoff_ = 0.0;
  bool found_ = false;
  std::int64_t leaves_ = 0;
};

}  // namespace

double l1_switch_cost(const MagneticGraph& g, VertexSet subset, const SwitchingAssignment& tau) {
  require_subset(g, subset);
  if (!(tau.group() == g.group())) {
    throw Error(ErrorCode::kWrongGroup, "switching in " + tau.group().describe() + ", graph in " + g.group().describe());
  }
  if (!tau.covers(subset)) throw Error(ErrorCode::kIncompleteAssignment, "switching must cover the subset");
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    if (!subset.contains(e.u) || !subset.contains(e.v)) continue;
    total += e.weight * (tau.at(e.u).inverse() * e.signature * tau.at(e.v)).distance_to_one();
  }
  return total;
}

std::int64_t gauge_fixed_search_size(const MagneticGraph& g, VertexSet subset) {
  require_subset(g, subset);
  const std::int64_t k = g.group().is_cyclic() ? g.group().order() : std::numeric_limits<std::int64_t>::max();
  std::int64_t total = 0;
  for (const auto& comp : components(g, subset)) {
    std::int64_t size = comp.size() == 1 ? 1 : saturating_pow(k, static_cast<int>(comp.size()) - 1);
    if (size > std::numeric_limits<std::int64_t>::max() - total) return std::numeric_limits<std::int64_t>::max();
    total += size;
  }
  return total;
}

std::optional<FrustrationResult> frustration_exact_below(const MagneticGraph& g, VertexSet subset, double cutoff,
                                                         std::int64_t budget, const Tolerances& tol) {
  require_subset(g, subset);
  if (!g.group().is_cyclic()) {
    throw Error(ErrorCode::kContinuousGroup, "exact frustration needs a cyclic signature group");
  }
  const std::int64_t space = gauge_fixed_search_size(g, subset);
  if (space > budget) {
    throw Error(ErrorCode::kBudgetExceeded,
                "gauge-fixed search space " + std::to_string(space) + " exceeds budget " + std::to_string(budget));
  }

  const int k = g.group().order();
  SwitchingAssignment tau(g.group(), g.vertex_count());
  std::int64_t evaluations = 0;
  double spent = 0.0;
  for (const auto& comp : components(g, subset)) {
    VertexSet comp_set;
    for (int v : comp) comp_set.insert(v);
    // A balanced component has a unique zero-cost switching once its root is
    // pinned: the inverse of the trivialising gauge.
    BalanceReport balance = check_balance(g, comp_set, tol.angle);
    if (balance.balanced) {
      for (int v : comp) tau.set(v, balance.gauge.at(v).inverse());
      ++evaluations;
      continue;
    }
    ComponentSearch search(g, comp, tol);
    const bool found = search.run(cutoff - spent);
    evaluations += search.leaves();
    if (!found) return std::nullopt;
    spent += search.best_value();
    for (std::size_t i = 0; i < comp.size(); ++i) tau.set(comp[i], GroupElement::cyclic(search.best()[i], k));
  }
  const double value = l1_switch_cost(g, subset, tau);
  return FrustrationResult{value, std::move(tau), true, evaluations};
}

FrustrationResult frustration_exact(const MagneticGraph& g, VertexSet subset, std::int64_t budget,
                                    const Tolerances& tol) {
  auto result = frustration_exact_below(g, subset, std::numeric_limits<double>::infinity(), budget, tol);
  return std::move(*result);
}

FrustrationResult frustration_heuristic(const MagneticGraph& g, VertexSet subset, const HeuristicOptions& options,
                                        const Tolerances& tol) {
  require_subset(g, subset);
  const Group& group = g.group();
  const std::vector<int> members = subset.members();
  std::mt19937_64 rng(options.seed);

  // Neighbours of each member inside the subset, with oriented signatures.
  struct Link {
    int v;
    double weight;
    GroupElement sig;  // s_{uv}
  };
  std::vector<std::vector<Link>> links(static_cast<std::size_t>(g.vertex_count()));
  for (int u : members) {
    for (const Incidence& inc : g.neighbors(u)) {
      if (subset.contains(inc.neighbor)) {
        links[u].push_back({inc.neighbor, g.edges()[inc.edge].weight, g.signature(u, inc.neighbor)});
      }
    }
  }
  auto local_cost = [&](int u, const GroupElement& value, const SwitchingAssignment& tau) {
    double c = 0.0;
    for (const Link& l : links[u]) c += l.weight * distance(value, l.sig * tau.at(l.v));
    return c;
  };

  auto descend = [&](SwitchingAssignment tau) {
    double cost = l1_switch_cost(g, subset, tau);
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      const double before = cost;
      for (int u : members) {
        if (links[u].empty()) continue;
        GroupElement best = tau.at(u);
        double best_cost = local_cost(u, best, tau);
        auto consider = [&](const GroupElement& candidate) {
          double c = local_cost(u, candidate, tau);
          if (c < best_cost - 1e-15 * std::max(1.0, best_cost)) {
            best_cost = c;
            best = candidate;
          }
        };
        if (group.is_cyclic()) {
          for (int j = 0; j < group.order(); ++j) consider(GroupElement::cyclic(j, group.order()));
        } else {
          // The local cost is concave on each arc between the points s_uv tau(v),
          // so its minimum over the circle sits at one of them.
          for (const Link& l : links[u]) consider(l.sig * tau.at(l.v));
        }
        tau.set(u, best);
      }
      cost = l1_switch_cost(g, subset, tau);
      if (before - cost < 1e-12) break;
    }
    return std::pair(cost, std::move(tau));
  };

  std::vector<SwitchingAssignment> starts;
  starts.push_back(check_balance(g, subset, tol.angle).gauge.inverse());
  if (options.warm_start) {
    if (!options.warm_start->covers(subset)) {
      throw Error(ErrorCode::kIncompleteAssignment, "warm start must cover the subset");
    }
    SwitchingAssignment warm(group, g.vertex_count());
    for (int u : members) warm.set(u, options.warm_start->at(u));
    starts.push_back(std::move(warm));
  }
  std::uniform_int_distribution<int> pick_exponent(0, std::max(0, group.order() - 1));
  std::uniform_real_distribution<double> pick_angle(0.0, 2.0 * std::numbers::pi);
  for (int r = 0; r < options.restarts; ++r) {
    SwitchingAssignment tau(group, g.vertex_count());
    for (int u : members) {
      tau.set(u, group.is_cyclic() ? GroupElement::cyclic(pick_exponent(rng), group.order())
                                   : GroupElement::circle(pick_angle(rng)));
    }
    starts.push_back(std::move(tau));
  }

  std::optional<FrustrationResult> best;
  std::int64_t evaluations = 0;
  for (auto& start : starts) {
    auto [cost, tau] = descend(std::move(start));
    ++evaluations;
    if (!best || cost < best->value - threshold(best->value, tol)) {
      best = FrustrationResult{cost, std::move(tau), false, 0};
    }
  }
  best->evaluations = evaluations;
  return std::move(*best);
}

double frustration_cycle_oracle(const GroupElement& sigma) { return sigma.distance_to_one(); }

}  // namespace magneto
