#include <cmath>
#include <numbers>

#include <doctest.h>

#include "graphs.hpp"
#include "magneto/isoperimetry.hpp"

using namespace magneto;
using namespace magneto::testing;

TEST_CASE("cheeger constant of the signed four-cycle") {
  const IsoperimetricResult r = cheeger_constant(cycle_graph(4, 1, 2));
  CHECK(r.constant == 0.5);
  CHECK(r.argmin.subset == VertexSet::full(4));
  CHECK(r.argmin.frustration == 2.0);
  CHECK(r.argmin.boundary == 0.0);
  CHECK(r.argmin.volume == 4.0);
  CHECK_FALSE(r.upper_bound);
  CHECK(std::isinf(r.delta));
}

TEST_CASE("balanced graphs have zero constants attained at V") {
  Rng rng(4);
  const MagneticGraph g = apply_switching(cycle_graph(5, 0, 3), random_switching(Group::cyclic(3), 5, rng));
  for (double delta : {kInfiniteDimension, 1.5, 3.0}) {
    const IsoperimetricResult r = isoperimetric_constant(g, delta);
    CHECK(r.constant == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.argmin.subset == VertexSet::full(5));
  }
}

TEST_CASE("triangle with cubic-root product") {
  const IsoperimetricResult r = cheeger_constant(cycle_graph(3, 1, 3));
  CHECK(r.constant == doctest::Approx(std::sqrt(3.0) / 3.0).epsilon(1e-14));
}

TEST_CASE("isoperimetric constants by hand") {
  const IsoperimetricResult c3 = isoperimetric_constant(cycle_graph(4, 1, 2), 3.0);
  CHECK(c3.constant == doctest::Approx(2.0 / std::pow(4.0, 2.0 / 3.0)).epsilon(1e-14));
  CHECK(c3.constant == doctest::Approx(0.7937005).epsilon(1e-7));

  // A single signed edge is a tree, hence balanced: the whole vertex set has
  // zero frustration and zero boundary.
  const IsoperimetricResult edge = isoperimetric_constant(edge_graph(xi(1, 2)), 2.0);
  CHECK(edge.constant == 0.0);
  CHECK(edge.argmin.subset == VertexSet::full(2));

  // Signed triangle, delta = 2: V gives 2 / sqrt(3), pairs (2 / sqrt(2)) and
  // singletons (2 / 1) are larger.
  const IsoperimetricResult tri = isoperimetric_constant(cycle_graph(3, 1, 2), 2.0);
  CHECK(tri.constant == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));

  CHECK_THROWS_AS(isoperimetric_constant(cycle_graph(4, 1, 2), 1.0), Error);
  CHECK_THROWS_AS(volume_exponent(0.5), Error);
  CHECK(volume_exponent(kInfiniteDimension) == 1.0);
  CHECK(volume_exponent(4.0) == 0.75);
}

TEST_CASE("cycle cheeger constants equal |1 - sigma| / n") {
  for (int n = 3; n <= 7; ++n) {
    for (int k : {2, 3, 4}) {
      for (int j = 0; j < k; ++j) {
        const IsoperimetricResult r = cheeger_constant(cycle_graph(n, j, k));
        CHECK(std::abs(r.constant - 2.0 * std::sin(std::numbers::pi * j / k) / n) <= 1e-12);
        if (j != 0) CHECK(r.argmin.subset == VertexSet::full(n));
      }
    }
  }
}

TEST_CASE("the defining inequality holds for every subset") {
  Rng rng(9);
  for (int trial = 0; trial < 25; ++trial) {
    RandomGraphOptions opts;
    opts.max_vertices = 6;
    const MagneticGraph g = random_graph(Group::cyclic(2 + trial % 3), rng, opts);
    const int n = g.vertex_count();
    for (double delta : {kInfiniteDimension, 2.5, 4.0}) {
      IsoperimetryOptions options;
      options.collect_profile = true;
      const IsoperimetricResult r = isoperimetric_constant(g, delta, options);
      CHECK(r.profile.size() == (std::size_t{1} << n) - 1);
      const double exponent = volume_exponent(delta);
      for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
        const VertexSet x(bits);
        const double lhs = frustration_exact(g, x).value + boundary_measure(g, x);
        CHECK(lhs >= r.constant * std::pow(volume(g, x), exponent) - 1e-12);
      }
      CHECK(r.argmin.objective == doctest::Approx(r.constant).epsilon(1e-14));
    }
  }
}

TEST_CASE("profile follows size-then-bitmask order") {
  IsoperimetryOptions options;
  options.collect_profile = true;
  const IsoperimetricResult r = cheeger_constant(cycle_graph(4, 1, 2), options);
  REQUIRE(r.profile.size() == 15);
  for (std::size_t i = 1; i < r.profile.size(); ++i) {
    const VertexSet a = r.profile[i - 1].subset;
    const VertexSet b = r.profile[i].subset;
    CHECK((a.size() < b.size() || (a.size() == b.size() && a.bits() < b.bits())));
  }
}

TEST_CASE("switching invariance and thread determinism") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const MagneticGraph g = random_graph(Group::cyclic(3), rng);
    const MagneticGraph s = apply_switching(g, random_switching(g.group(), g.vertex_count(), rng));
    const IsoperimetricResult a = cheeger_constant(g);
    CHECK(cheeger_constant(s).constant == doctest::Approx(a.constant).epsilon(1e-12));

    IsoperimetryOptions threaded;
    threaded.threads = 4;
    const IsoperimetricResult b = cheeger_constant(g, threaded);
    CHECK(b.constant == a.constant);
    CHECK(b.argmin.subset == a.argmin.subset);
  }
}

TEST_CASE("policies and limits") {
  const MagneticGraph c4 = cycle_graph(4, 1, 2);
  IsoperimetryOptions small;
  small.max_vertices = 3;
  CHECK_THROWS_AS(cheeger_constant(c4, small), Error);

  IsoperimetryOptions heuristic;
  heuristic.policy = FrustrationPolicy::kHeuristic;
  const IsoperimetricResult h = cheeger_constant(c4, heuristic);
  CHECK(h.upper_bound);
  CHECK(h.constant == doctest::Approx(0.5));

  try {
    cheeger_constant(cycle_graph(4, GroupElement::circle(1.0)));
    FAIL("expected continuous group error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kContinuousGroup);
  }

  IsoperimetryOptions tiny_budget;
  tiny_budget.frustration_budget = 2;
  CHECK_THROWS_AS(cheeger_constant(cycle_graph(5, 1, 3), tiny_budget), Error);
  tiny_budget.policy = FrustrationPolicy::kExactOrHeuristic;
  const IsoperimetricResult mixed = cheeger_constant(cycle_graph(5, 1, 3), tiny_budget);
  CHECK(mixed.upper_bound);
  CHECK(mixed.constant == doctest::Approx(std::sqrt(3.0) / 5.0).epsilon(1e-12));
}

TEST_CASE("product additivity sandwich") {
  const MagneticGraph c3 = cycle_graph(3, 1, 2);
  const std::vector<MagneticGraph> two{c3, c3};
  const ProductAdditivityReport r = verify_product_additivity(two);
  REQUIRE(r.factor_constants.size() == 2);
  CHECK(r.factor_constants[0] == doctest::Approx(2.0 / 3.0));
  CHECK(r.lower == doctest::Approx(4.0 / 9.0));
  CHECK(r.upper == doctest::Approx(4.0));
  CHECK(r.product_vertices == 9);
  CHECK(r.holds);
  CHECK(r.product_constant >= r.lower);
  CHECK(r.product_constant <= r.upper);

  const std::vector<MagneticGraph> one{c3};
  const ProductAdditivityReport single = verify_product_additivity(one);
  CHECK(single.holds);
  CHECK(single.product_constant == doctest::Approx(2.0 / 3.0));

  const MagneticGraph balanced = cycle_graph(3, 0, 2);
  const std::vector<MagneticGraph> flat{balanced, balanced};
  const ProductAdditivityReport zero = verify_product_additivity(flat);
  CHECK(zero.holds);
  CHECK(zero.product_constant == doctest::Approx(0.0));
  CHECK(zero.upper == 0.0);
}

TEST_CASE("torus bounds") {
  const std::vector<int> one_len{4};
  const std::vector<GroupElement> one_sig{xi(1, 2)};
  const TorusBounds a = torus_cheeger_bounds(one_len, one_sig);
  CHECK(a.lower == doctest::Approx(1.0 / 6.0));
  CHECK(a.upper == doctest::Approx(1.5));

  const std::vector<int> lens{3, 4};
  const std::vector<GroupElement> sigs{xi(1, 2), xi(1, 4)};
  const TorusBounds b = torus_cheeger_bounds(lens, sigs);
  const double sum = 2.0 / 3.0 + std::sqrt(2.0) / 4.0;
  CHECK(b.lower == doctest::Approx(sum / 3.0).epsilon(1e-14));
  CHECK(b.upper == doctest::Approx(3.0 * sum).epsilon(1e-14));

  const std::vector<GroupElement> trivial{xi(0, 2), xi(0, 4)};
  const TorusBounds c = torus_cheeger_bounds(lens, trivial);
  CHECK(c.lower == 0.0);
  CHECK(c.upper == 0.0);

  // The bound brackets the enumerated constant of a small torus.
  const MagneticGraph torus = cartesian_product(cycle_graph(3, 2, 4), cycle_graph(4, 1, 4));
  const double h = cheeger_constant(torus).constant;
  CHECK(h >= b.lower);
  CHECK(h <= b.upper);
}
