#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "graphs.hpp"
#include "magneto/gauge.hpp"

using namespace magneto;
using namespace magneto::testing;

TEST_CASE("l1 switch cost by hand") {
  const MagneticGraph c4 = cycle_graph(4, 1, 2);
  const VertexSet all = VertexSet::full(4);
  CHECK(l1_switch_cost(c4, all, SwitchingAssignment::identity(c4.group(), 4)) == 2.0);

  const EdgeSpec e{0, 1, 3.0, xi(1, 4)};
  const MagneticGraph single = MagneticGraph::build(Group::cyclic(4), 2, std::span<const EdgeSpec>(&e, 1));
  CHECK(l1_switch_cost(single, VertexSet::full(2), SwitchingAssignment::identity(single.group(), 2)) ==
        doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-15));

  SwitchingAssignment wrong = SwitchingAssignment::identity(Group::cyclic(3), 4);
  CHECK_THROWS_AS(l1_switch_cost(c4, all, wrong), Error);
}

TEST_CASE("exact frustration on cycles matches |1 - sigma|") {
  for (int n = 3; n <= 8; ++n) {
    for (int k : {2, 3, 4, 6}) {
      for (int j = 0; j < k; ++j) {
        const FrustrationResult r = frustration_exact(cycle_graph(n, j, k), VertexSet::full(n));
        CHECK(r.exact);
        CHECK(std::abs(r.value - 2.0 * std::sin(std::numbers::pi * j / k)) <= 1e-12);
      }
    }
  }
  CHECK(frustration_exact(cycle_graph(5, 1, 3), VertexSet::full(5)).value == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("trees, single vertices and the minimiser value") {
  Rng rng(2);
  RandomGraphOptions tree;
  tree.extra_edge_probability = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const MagneticGraph g = random_graph(Group::cyclic(4), rng, tree);
    CHECK(frustration_exact(g, VertexSet::full(g.vertex_count())).value == 0.0);
  }
  const MagneticGraph c4 = cycle_graph(4, 1, 2);
  CHECK(frustration_exact(c4, VertexSet::single(2)).value == 0.0);
  CHECK(frustration_exact(c4, VertexSet{}).value == 0.0);

  for (int trial = 0; trial < 30; ++trial) {
    const MagneticGraph g = random_graph(Group::cyclic(3), rng);
    const VertexSet all = VertexSet::full(g.vertex_count());
    const FrustrationResult r = frustration_exact(g, all);
    CHECK(r.value == doctest::Approx(l1_switch_cost(g, all, r.minimizer)).epsilon(1e-14));
  }
}

TEST_CASE("exact frustration agrees with brute force and picks the lexicographic minimiser") {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    RandomGraphOptions opts;
    opts.max_vertices = 6;
    opts.connected = trial % 3 != 0;
    const int k = 2 + trial % 3;
    const MagneticGraph g = random_graph(Group::cyclic(k), rng, opts);
    const int n = g.vertex_count();
    const VertexSet all = VertexSet::full(n);

    // Brute force over every assignment with tau(0) free; the first strict
    // improvement in lexicographic order is the expected minimiser.
    double best = std::numeric_limits<double>::infinity();
    double value_at_best = best;
    std::vector<int> best_exps;
    std::vector<int> exps(static_cast<std::size_t>(n), 0);
    while (true) {
      SwitchingAssignment tau(g.group(), n);
      for (int u = 0; u < n; ++u) tau.set(u, xi(exps[u], k));
      const double cost = l1_switch_cost(g, all, tau);
      if (cost < best - 1e-12) {
        best = cost;
        best_exps = exps;
      }
      value_at_best = std::min(value_at_best, cost);
      int pos = n - 1;
      while (pos >= 0 && ++exps[pos] == k) exps[pos--] = 0;
      if (pos < 0) break;
    }
    const FrustrationResult r = frustration_exact(g, all);
    CHECK(r.value == doctest::Approx(value_at_best).epsilon(1e-12));
    for (int u = 0; u < n; ++u) CHECK(r.minimizer.at(u).exponent() == best_exps[u]);
  }
}

TEST_CASE("switching invariance and weight scaling") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const MagneticGraph g = random_graph(Group::cyclic(4), rng);
    const int n = g.vertex_count();
    const VertexSet all = VertexSet::full(n);
    const double base = frustration_exact(g, all).value;
    const MagneticGraph switched = apply_switching(g, random_switching(g.group(), n, rng));
    CHECK(frustration_exact(switched, all).value == doctest::Approx(base).epsilon(1e-12));

    std::vector<EdgeSpec> doubled;
    for (const Edge& e : g.edges()) doubled.push_back({e.u, e.v, 2.0 * e.weight, e.signature});
    const MagneticGraph heavy = MagneticGraph::build(g.group(), n, doubled);
    CHECK(frustration_exact(heavy, all).value == doctest::Approx(2.0 * base).epsilon(1e-12));
  }
}

TEST_CASE("budget and group restrictions") {
  const MagneticGraph c8 = cycle_graph(8, 1, 6);
  CHECK(gauge_fixed_search_size(c8, VertexSet::full(8)) == 279936);
  CHECK(gauge_fixed_search_size(c8, VertexSet::of({0, 2, 4})) == 3);
  try {
    frustration_exact(c8, VertexSet::full(8), 1000);
    FAIL("expected budget error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBudgetExceeded);
  }
  try {
    frustration_exact(cycle_graph(4, GroupElement::circle(1.0)), VertexSet::full(4));
    FAIL("expected continuous group error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kContinuousGroup);
  }
}

TEST_CASE("cutoff search") {
  const MagneticGraph c4 = cycle_graph(4, 1, 2);
  CHECK_FALSE(frustration_exact_below(c4, VertexSet::full(4), 1.5).has_value());
  const auto r = frustration_exact_below(c4, VertexSet::full(4), 2.5);
  REQUIRE(r.has_value());
  CHECK(r->value == 2.0);
}

TEST_CASE("heuristic is an upper bound and is exact on cycles") {
  for (int n = 3; n <= 8; ++n) {
    for (int k : {2, 3, 4, 6}) {
      for (int j = 0; j < k; ++j) {
        const MagneticGraph g = cycle_graph(n, j, k);
        const FrustrationResult h = frustration_heuristic(g, VertexSet::full(n));
        CHECK_FALSE(h.exact);
        CHECK(h.value == doctest::Approx(2.0 * std::sin(std::numbers::pi * j / k)).epsilon(1e-12));
      }
    }
  }
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const MagneticGraph g = random_graph(Group::cyclic(3), rng);
    const VertexSet all = VertexSet::full(g.vertex_count());
    const FrustrationResult h = frustration_heuristic(g, all);
    CHECK(h.value >= frustration_exact(g, all).value - 1e-12);
    CHECK(h.value == doctest::Approx(l1_switch_cost(g, all, h.minimizer)).epsilon(1e-12));
  }
}

TEST_CASE("heuristic on balanced graphs and on the circle") {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const MagneticGraph base = with_trivial_signature(random_graph(Group::circle(), rng));
    const MagneticGraph g = apply_switching(base, random_switching(Group::circle(), base.vertex_count(), rng));
    CHECK(frustration_heuristic(g, VertexSet::full(g.vertex_count())).value <= 1e-9);
  }
  for (int n = 3; n <= 7; ++n) {
    const MagneticGraph g = cycle_graph(n, GroupElement::circle(std::numbers::pi / 2));
    CHECK(std::abs(frustration_heuristic(g, VertexSet::full(n)).value - std::sqrt(2.0)) <= 1e-6);
  }
}

TEST_CASE("heuristic is deterministic in its seed") {
  Rng rng(47);
  const MagneticGraph g = random_graph(Group::cyclic(5), rng);
  HeuristicOptions opts;
  opts.seed = 99;
  const FrustrationResult a = frustration_heuristic(g, VertexSet::full(g.vertex_count()), opts);
  const FrustrationResult b = frustration_heuristic(g, VertexSet::full(g.vertex_count()), opts);
  CHECK(a.value == b.value);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("cycle oracle") {
  CHECK(frustration_cycle_oracle(xi(0, 5)) == 0.0);
  CHECK(frustration_cycle_oracle(xi(1, 2)) == 2.0);
  CHECK(frustration_cycle_oracle(xi(1, 3)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(frustration_cycle_oracle(GroupElement::circle(std::numbers::pi)) == doctest::Approx(2.0));
}
