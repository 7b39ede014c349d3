// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and sizes are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "graphs.hpp"
#include "magneto/functional.hpp"
#include "magneto/gauge.hpp"
#include "magneto/isoperimetry.hpp"
#include "magneto/spectral.hpp"

using namespace magneto;
using namespace magneto::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kOracleTol = 1e-12;        // criteria 1, 2
constexpr double kQuotientTol = 1e-9;       // criterion 3
constexpr double kCoareaSlack = 1e-9;       // criterion 4
constexpr double kSpectralTol = 1e-9;       // criteria 9, 12
constexpr double kBernoulliSlack = 1e-12;   // criterion 7

// Pinned runtime limits in seconds.
constexpr double kLimitCycleFrustration = 10.0;
constexpr double kLimitCycleCheeger = 60.0;
constexpr double kLimitKeyLemmas = 60.0;
constexpr double kLimitProduct = 600.0;

struct Verdict {
  bool pass;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

int hardware_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// --- 1 -----------------------------------------------------------------------
Verdict cycle_frustration() {
  Stopwatch clock;
  double worst = 0.0;
  int cases = 0;
  for (int n = 3; n <= 8; ++n) {
    for (int k : {2, 3, 4, 6}) {
      for (int j = 0; j < k; ++j) {
        const double value = frustration_exact(cycle_graph(n, j, k), VertexSet::full(n)).value;
        worst = std::max(worst, std::abs(value - 2.0 * std::sin(kPi * j / k)));
        ++cases;
      }
    }
  }
  const double t = clock.seconds();
  return {worst <= kOracleTol && t < kLimitCycleFrustration,
          fmt("%d cycles, max |iota - 2 sin(pi j/k)| = %.2e (tol %.0e), %.2f s (limit %.0f s)", cases, worst,
              kOracleTol, t, kLimitCycleFrustration)};
}

// --- 2 -----------------------------------------------------------------------
Verdict cycle_cheeger() {
  Stopwatch clock;
  double worst = 0.0;
  int cases = 0;
  int wrong_argmin = 0;
  for (int n = 3; n <= 8; ++n) {
    for (int k : {2, 3, 4, 6}) {
      for (int j = 0; j < k; ++j) {
        const IsoperimetricResult r = cheeger_constant(cycle_graph(n, j, k));
        worst = std::max(worst, std::abs(r.constant - 2.0 * std::sin(kPi * j / k) / n));
        if (j != 0 && !(r.argmin.subset == VertexSet::full(n))) ++wrong_argmin;
        ++cases;
      }
    }
  }
  const double t = clock.seconds();
  return {worst <= kOracleTol && wrong_argmin == 0 && t < kLimitCycleCheeger,
          fmt("%d cycles, max |h - 2 sin(pi j/k)/n| = %.2e (tol %.0e), argmin != V for j != 0: %d, %.2f s (limit %.0f s)",
              cases, worst, kOracleTol, wrong_argmin, t, kLimitCycleCheeger)};
}

// --- 3 -----------------------------------------------------------------------
MagneticGraph as_circle_graph(const MagneticGraph& g) {
  std::vector<EdgeSpec> edges;
  for (const Edge& e : g.edges()) {
    edges.push_back({e.u, e.v, e.weight, GroupElement::circle_turns(static_cast<double>(e.signature.exponent()) / e.signature.order())});
  }
  return MagneticGraph::build(Group::circle(), g.vertex_count(), edges,
                              std::vector<double>(g.measure().begin(), g.measure().end()));
}

Verdict variational_sandwich() {
  Rng rng(301);
  constexpr int kGraphs = 50;
  constexpr std::int64_t kSearchBudget = 3000;
  double cert_err = 0.0;
  double min_ratio = std::numeric_limits<double>::infinity();  // best_quotient / h
  int below = 0;
  double circle_cert_err = 0.0;
  double circle_min_ratio = std::numeric_limits<double>::infinity();
  int circle_below = 0;
  for (int i = 0; i < kGraphs; ++i) {
    const MagneticGraph g = random_unbalanced_graph(Group::cyclic(2 + i % 3), rng);
    const IsoperimetricResult h = cheeger_constant(g);
    const VertexFunction cert = extremal_certificate(g, h);
    cert_err = std::max(cert_err, std::abs(sobolev_quotient(g, cert, 1.0, 1.0) - h.constant));
    const InfimumSearchResult s = quotient_infimum_search(g, 1.0, 1.0, kSearchBudget, 1000 + i);
    min_ratio = std::min(min_ratio, s.best_quotient / h.constant);
    if (s.best_quotient < h.constant / 3.0 - kQuotientTol) ++below;

    // Same graph with its k-th-root signatures read in S^1. The circle
    // Cheeger constant comes from coordinate descent (an upper bound), and the
    // factor 3 improves to 2.
    const MagneticGraph c = as_circle_graph(g);
    IsoperimetryOptions heuristic;
    heuristic.policy = FrustrationPolicy::kHeuristic;
    const IsoperimetricResult hc = cheeger_constant(c, heuristic);
    const VertexFunction cc = extremal_certificate(c, hc);
    circle_cert_err = std::max(circle_cert_err, std::abs(sobolev_quotient(c, cc, 1.0, 1.0) - hc.constant));
    const InfimumSearchResult sc = quotient_infimum_search(c, 1.0, 1.0, kSearchBudget, 2000 + i, heuristic);
    circle_min_ratio = std::min(circle_min_ratio, sc.best_quotient / hc.constant);
    if (sc.best_quotient < hc.constant / 2.0 - kQuotientTol) ++circle_below;
  }
  const bool pass = cert_err <= kQuotientTol && below == 0 && circle_cert_err <= kQuotientTol && circle_below == 0;
  return {pass, fmt("%d graphs: S^1_k |Q(cert) - h| <= %.1e, min inf/h = %.4f (floor 1/3), below: %d; "
                    "S^1 |Q(cert) - h| <= %.1e, min inf/h = %.4f (floor 1/2), below: %d (tol %.0e)",
                    kGraphs, cert_err, min_ratio, below, circle_cert_err, circle_min_ratio, circle_below,
                    kQuotientTol)};
}

// --- 4, 5 ------------------------------------------------------------------------
std::vector<MagneticGraph> corpus() {
  Rng rng(401);
  std::vector<MagneticGraph> graphs;
  for (int i = 0; i < 20; ++i) graphs.push_back(random_unbalanced_graph(Group::cyclic(2 + i % 5), rng));
  return graphs;
}

Verdict coarea(const std::vector<MagneticGraph>& graphs) {
  Rng rng(402);
  int checked = 0;
  int violations = 0;
  double worst = 0.0;
  for (const MagneticGraph& g : graphs) {
    for (int i = 0; i < 50; ++i) {
      const VertexFunction f = normalize(random_function(g.vertex_count(), rng));
      const double lhs = coarea_lhs(g, f);
      const double rhs = 3.0 * signed_gradient_norm(g, f, 1.0);
      if (lhs > rhs + kCoareaSlack) ++violations;
      if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
      ++checked;
    }
  }
  return {violations == 0 && checked == 1000,
          fmt("%d functions on %zu graphs, violations: %d, max lhs / (3 |grad f|_1) = %.4f (slack %.0e)", checked,
              graphs.size(), violations, worst, kCoareaSlack)};
}

Verdict sobolev(const std::vector<MagneticGraph>& graphs) {
  Rng rng(501);
  struct Mode {
    SobolevMode mode;
    const char* name;
    int checked = 0;
    int violations = 0;
    double min_ratio = std::numeric_limits<double>::infinity();
  };
  Mode modes[] = {{SobolevMode::kIsoP1, "iso p=1"},
                  {SobolevMode::kIsoGeneral, "iso p>1"},
                  {SobolevMode::kCheegerP1, "cheeger p=1"},
                  {SobolevMode::kCheegerP, "cheeger p>1"}};
  const double deltas[] = {2.5, 3.0, 4.0};
  for (const MagneticGraph& g : graphs) {
    const double h = cheeger_constant(g).constant;
    double c[3];
    for (int d = 0; d < 3; ++d) c[d] = isoperimetric_constant(g, deltas[d]).constant;
    for (int i = 0; i < 50; ++i) {
      const VertexFunction f = random_function(g.vertex_count(), rng);
      const int d = i % 3;
      const SobolevConstants k{deltas[d], c[d], h};
      const double p_iso = i % 2 == 0 ? 1.5 : 2.0;
      const double p_cheeger = 1.5 + 0.5 * (i % 4);
      const double p[] = {1.0, p_iso, 1.0, p_cheeger};
      for (int m = 0; m < 4; ++m) {
        const QuotientReport r = verify_sobolev(g, f, modes[m].mode, p[m], k);
        ++modes[m].checked;
        if (!r.satisfied) ++modes[m].violations;
        modes[m].min_ratio = std::min(modes[m].min_ratio, r.quotient / r.bound_low);
      }
    }
  }
  bool pass = true;
  std::string detail;
  for (const Mode& m : modes) {
    pass = pass && m.violations == 0 && m.checked == 1000;
    detail += fmt("%s: %d/%d ok, min Q/(1/C) = %.3f; ", m.name, m.checked - m.violations, m.checked, m.min_ratio);
  }
  detail += "delta in {2.5, 3, 4}, slack 1e-9";
  return {pass, detail};
}

// --- 6 -----------------------------------------------------------------------
Verdict key_lemmas() {
  Stopwatch clock;
  Rng rng(601);
  constexpr int kPairs = 100000;
  int circle_bad = 0;
  int cyclic_bad = 0;
  double max_err_bound = 0.0;
  double circle_worst = 0.0;
  double cyclic_worst = 0.0;
  for (int i = 0; i < kPairs; ++i) {
    const Complex z1 = random_disk_point(rng);
    const Complex z2 = random_disk_point(rng);
    const double dist = std::abs(z1 - z2);
    const double c = key_average_circle(z1, z2);
    if (c > 2.0 * dist) ++circle_bad;
    if (dist > 0.0) circle_worst = std::max(circle_worst, c / dist);
    for (int k : {2, 3, 4, 6}) {
      const QuadratureEstimate e = key_average_cyclic(z1, z2, k);
      max_err_bound = std::max(max_err_bound, e.error_bound);
      if (e.value > 3.0 * dist + e.error_bound) ++cyclic_bad;
      if (dist > 0.0) cyclic_worst = std::max(cyclic_worst, e.value / dist);
    }
  }
  const double t = clock.seconds();
  return {circle_bad == 0 && cyclic_bad == 0 && t < kLimitKeyLemmas,
          fmt("%d pairs: circle violations %d (max ratio %.4f <= 2), cyclic k in {2,3,4,6} violations %d "
              "(max ratio %.4f <= 3, quadrature bound <= %.1e), %.2f s (limit %.0f s)",
              kPairs, circle_bad, circle_worst, cyclic_bad, cyclic_worst, max_err_bound, t, kLimitKeyLemmas)};
}

// --- 7 -----------------------------------------------------------------------
Verdict bernoulli() {
  Rng rng(701);
  constexpr int kPairs = 100000;
  int bad = 0;
  for (int i = 0; i < kPairs; ++i) {
    const Complex z1 = random_disk_point(rng);
    const Complex z2 = random_disk_point(rng);
    for (double alpha : {1.0, 1.5, 2.0, 3.7}) {
      if (!bernoulli_check(z1, z2, alpha, kBernoulliSlack)) ++bad;
    }
  }
  return {bad == 0, fmt("%d pairs x alpha in {1, 1.5, 2, 3.7}: failures %d (slack %.0e)", kPairs, bad, kBernoulliSlack)};
}

// --- 8 -----------------------------------------------------------------------
Verdict product_additivity() {
  Stopwatch clock;
  const MagneticGraph c3 = cycle_graph(3, 1, 2);
  const MagneticGraph c4 = cycle_graph(4, 1, 2);
  const MagneticGraph k2 = edge_graph(xi(1, 2));
  IsoperimetryOptions options;
  options.max_vertices = 18;
  options.policy = FrustrationPolicy::kExactOrHeuristic;
  options.threads = hardware_threads();

  bool pass = true;
  std::string detail;
  const std::vector<std::pair<const char*, std::vector<MagneticGraph>>> lists{{"C3- x C4-", {c3, c4}},
                                                                              {"C3- x C3- x K2-", {c3, c3, k2}}};
  for (const auto& [name, factors] : lists) {
    const ProductAdditivityReport r = verify_product_additivity(factors, options);
    pass = pass && r.holds;
    detail += fmt("%s (%d vertices): %.4f <= h = %.6f <= %.4f%s; ", name, r.product_vertices, r.lower,
                  r.product_constant, r.upper, r.upper_bound_mode ? " [upper-bound mode]" : " [exact]");
  }
  const double t = clock.seconds();
  pass = pass && t < kLimitProduct;
  detail += fmt("%.1f s (limit %.0f s)", t, kLimitProduct);
  return {pass, detail};
}

// --- 9 -----------------------------------------------------------------------
Verdict spectral_envelope() {
  Rng rng(901);
  int envelope_bad = 0;
  int switching_bad = 0;
  int balance_bad = 0;
  int balanced = 0;
  for (int i = 0; i < 200; ++i) {
    const Group group = i % 4 == 3 ? Group::circle() : Group::cyclic(2 + i % 4);
    RandomGraphOptions opts;
    opts.max_vertices = 8;
    opts.extra_edge_probability = i % 5 == 0 ? 0.0 : 0.35;  // some trees, hence balanced
    const MagneticGraph g = random_graph(group, rng, opts);
    const SpectralData s = eigendecomposition(magnetic_laplacian(g));
    const double top = s.eigenvalues[s.eigenvalues.size() - 1];
    if (s.eigenvalues[0] < -kSpectralTol || top > 2.0 * max_mu_degree(g) + kSpectralTol) ++envelope_bad;
    const SpectralData t =
        eigendecomposition(magnetic_laplacian(apply_switching(g, random_switching(group, g.vertex_count(), rng))));
    if ((s.eigenvalues - t.eigenvalues).cwiseAbs().maxCoeff() > kSpectralTol) ++switching_bad;
    const bool is_balanced = check_balance(g).balanced;
    balanced += is_balanced;
    if ((s.eigenvalues[0] < kSpectralTol) != is_balanced) ++balance_bad;
  }
  return {envelope_bad + switching_bad + balance_bad == 0,
          fmt("200 connected graphs (%d balanced): envelope violations %d, switching mismatches %d, "
              "lambda_1 ~ 0 vs balance mismatches %d (tol %.0e)",
              balanced, envelope_bad, switching_bad, balance_bad, kSpectralTol)};
}

// --- 10 ----------------------------------------------------------------------
Verdict heat_suite() {
  Rng rng(1001);
  int semigroup = 0, fd = 0, sqrt_mu = 0, kato = 0, domination = 0, other = 0;
  int checks = 0;
  for (int i = 0; i < 50; ++i) {
    const Group group = i % 3 == 2 ? Group::circle() : Group::cyclic(2 + i % 5);
    const MagneticGraph g = random_graph(group, rng);
    for (double t : {0.1, 1.0, 10.0}) {
      const HeatKernelReport r = heat_kernel_properties_check(g, t, t / 3.0);
      semigroup += !r.semigroup;
      fd += !r.heat_equation;
      sqrt_mu += !r.fixes_sqrt_mu;
      other += !(r.hermitian && r.delta_action && r.unsigned_nonnegative);
      for (int j = 0; j < 5; ++j) {
        const VertexFunction f = random_function(g.vertex_count(), rng);
        kato += !kato_check(g, f);
        domination += !domination_check(g, t, f);
      }
      ++checks;
    }
  }
  return {semigroup + fd + sqrt_mu + kato + domination + other == 0,
          fmt("%d (graph, t) pairs, t in {0.1, 1, 10}: semigroup %d, heat-equation FD %d, K_t sqrt(mu) %d, "
              "Kato %d, domination %d, other %d violations",
              checks, semigroup, fd, sqrt_mu, kato, domination, other)};
}

// --- 11 ----------------------------------------------------------------------
Verdict trace_and_eigenvalue_bounds() {
  const MagneticGraph c4 = cycle_graph(4, 1, 2);
  const double c3 = isoperimetric_constant(c4, 3.0).constant;
  const double expected_c3 = 2.0 / std::pow(4.0, 2.0 / 3.0);
  const TraceBoundReport trace = trace_bound_check(c4, 3.0, c3, {0.01, 0.1, 1.0, 10.0, 100.0});
  double min_margin = std::numeric_limits<double>::infinity();
  for (const TraceBoundRow& row : trace.rows) min_margin = std::min(min_margin, row.bound / row.trace);
  bool eig_ok = true;
  double min_eig_margin = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 4; ++k) {
    const EigenvalueBoundReport e = eigenvalue_lower_bound_check(c4, 3.0, c3, k);
    eig_ok = eig_ok && e.holds;
    min_eig_margin = std::min(min_eig_margin, e.eigenvalue / e.bound);
  }
  const bool pass = std::abs(c3 - expected_c3) <= 1e-12 && trace.holds && eig_ok;
  return {pass, fmt("c_3 = %.7f (2/4^(2/3) = %.7f), C_3 = %.4e; trace bound at t in {0.01..100}: %s (min bound/trace "
                    "%.3e); lambda_k bound k = 1..4: %s (min lambda/bound %.3e)",
                    c3, expected_c3, trace.constant, trace.holds ? "holds" : "FAILS", min_margin,
                    eig_ok ? "holds" : "FAILS", min_eig_margin)};
}

// --- 12 ----------------------------------------------------------------------
Verdict magnetic_cycle_spectrum() {
  std::ifstream in(MAGNETO_FIXTURE_DIR "/magnetic_cycles.json");
  if (!in) return {false, "fixture magnetic_cycles.json not found"};
  const nlohmann::json doc = nlohmann::json::parse(in);
  double worst = 0.0;
  int cases = 0;
  for (const auto& c : doc["cases"]) {
    const int n = c["n"];
    const SpectralData s =
        eigendecomposition(magnetic_laplacian(cycle_graph(n, c["j"].get<int>(), c["k"].get<int>(), true)));
    for (int m = 0; m < n; ++m) worst = std::max(worst, std::abs(s.eigenvalues[m] - c["eigenvalues"][m].get<double>()));
    ++cases;
  }
  return {worst <= kSpectralTol && cases == 90,
          fmt("%d cycles (n 3..8, k in {2,3,4,6}, all j), max |lambda - circulant| = %.2e (tol %.0e)", cases, worst,
              kSpectralTol)};
}

}  // namespace

int main() {
  const std::vector<MagneticGraph> shared = corpus();
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"cycle frustration oracle", cycle_frustration},
      {"cycle Cheeger oracle", cycle_cheeger},
      {"variational sandwich", variational_sandwich},
      {"coarea inequality", [&] { return coarea(shared); }},
      {"Sobolev suite", [&] { return sobolev(shared); }},
      {"key lemmas", key_lemmas},
      {"complex Bernoulli", bernoulli},
      {"product additivity", product_additivity},
      {"spectral envelope", spectral_envelope},
      {"heat-kernel suite", heat_suite},
      {"trace and eigenvalue bounds", trace_and_eigenvalue_bounds},
      {"magnetic cycle spectrum", magnetic_cycle_spectrum},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Verdict v{false, ""};
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] %2d %s: %s\n", v.pass ? "PASS" : "FAIL", index, name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
