#include "magneto/cli.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "magneto/functional.hpp"
#include "magneto/gauge.hpp"
#include "magneto/io.hpp"
#include "magneto/isoperimetry.hpp"
#include "magneto/spectral.hpp"

namespace magneto::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Status { kOk, kViolation, kError };

std::string_view status_name(Status s) {
  switch (s) {
    case Status::kOk:
      return "OK";
    case Status::kViolation:
      return "VIOLATION";
    case Status::kError:
      return "ERROR";
  }
  return "ERROR";
}

std::string fnv1a64(const std::vector<std::string>& args) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::string& a : args) {
    for (unsigned char c : a) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string hex_subset(VertexSet s, int n) {
  if (s == VertexSet::full(n)) return "V";
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(s.bits()));
  return buf;
}

VertexSet parse_subset(const std::string& text, int n) {
  if (text == "V") return VertexSet::full(n);
  std::string digits = text;
  if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) digits = digits.substr(2);
  if (digits.empty() || digits.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
    throw Error(ErrorCode::kParseError, "subset must be a hex bitmask, got \"" + text + "\"");
  }
  const std::uint64_t bits = std::stoull(digits, nullptr, 16);
  const VertexSet s(bits);
  if (!s.is_subset_of(VertexSet::full(n))) throw Error(ErrorCode::kVertexOutOfRange, "subset mentions vertices >= n");
  return s;
}

double parse_delta(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return kInfiniteDimension;
  try {
    std::size_t used = 0;
    const double d = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "delta must be a number or \"inf\"");
  }
}

json element_json(const GroupElement& g) {
  if (g.is_cyclic()) return g.exponent();
  return g.angle() / (2.0 * std::numbers::pi);
}

json switching_json(const SwitchingAssignment& tau) {
  json out = json::array();
  for (int u = 0; u < tau.size(); ++u) out.push_back(tau.is_defined(u) ? element_json(tau.at(u)) : json());
  return out;
}

json cut_json(const CutReport& c, int n) {
  return json{{"subset", hex_subset(c.subset, n)},
              {"frustration", c.frustration},
              {"boundary", c.boundary},
              {"volume", c.volume},
              {"objective", c.objective},
              {"frustration_exact", c.frustration_exact}};
}

json delta_json(double delta) { return std::isinf(delta) ? json("inf") : json(delta); }

std::string format_delta(double delta) {
  if (std::isinf(delta)) return "inf";
  std::ostringstream s;
  s << delta;
  return s.str();
}

struct Outcome {
  json results = json::object();
  Status status = Status::kOk;
  std::string summary;
};

// Shared flags for the enumeration-based commands.
struct EnumerationFlags {
  bool heuristic = false;
  bool fallback = false;
  int max_vertices = 14;
  int restarts = 8;
  std::uint64_t seed = 0;
};

IsoperimetryOptions iso_options(const EnumerationFlags& f, int threads, const Environment& env) {
  IsoperimetryOptions o;
  o.max_vertices = f.max_vertices;
  if (env.budget) o.frustration_budget = *env.budget;
  o.policy = f.heuristic ? FrustrationPolicy::kHeuristic
             : f.fallback ? FrustrationPolicy::kExactOrHeuristic
                          : FrustrationPolicy::kExact;
  o.heuristic.restarts = f.restarts;
  o.heuristic.seed = f.seed;
  o.threads = threads;
  return o;
}

// Random test function in the closed unit disk; about a quarter of the
// entries vanish so superlevel sets vary.
VertexFunction random_function(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  VertexFunction f = VertexFunction::zeros(n);
  for (int u = 0; u < n; ++u) {
    if (unit(rng) < 0.25) continue;
    f[u] = std::polar(std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
  }
  if (f.is_zero()) f[0] = 1.0;
  return f;
}

// --- verify suites ------------------------------------------------------------

struct SuiteContext {
  const MagneticGraph& g;
  double delta;
  int trials;
  std::uint64_t seed;
  IsoperimetryOptions iso;
};

struct SuiteResult {
  json body = json::object();
  std::int64_t checked = 0;
  std::int64_t violations = 0;
};

SuiteResult skipped(const std::string& reason) {
  SuiteResult r;
  r.body["skipped"] = reason;
  return r;
}

SuiteResult suite_coarea(const SuiteContext& c) {
  SuiteResult r;
  std::mt19937_64 rng(c.seed);
  CoareaOptions opts;
  opts.budget = c.iso.frustration_budget;
  const double factor = coarea_factor(c.g.group());
  double worst = 0.0;
  for (int i = 0; i < c.trials; ++i) {
    const VertexFunction f = normalize(random_function(c.g.vertex_count(), rng));
    const double lhs = coarea_lhs(c.g, f, opts);
    const double rhs = factor * signed_gradient_norm(c.g, f, 1.0);
    ++r.checked;
    if (lhs > rhs + 1e-9) ++r.violations;
    if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
  }
  r.body["factor"] = factor;
  r.body["max_ratio"] = worst;
  return r;
}

SuiteResult suite_sobolev(const SuiteContext& c) {
  if (!c.g.group().is_cyclic()) return skipped("exact constants need a cyclic signature group");
  if (!(c.delta > 1.0) || std::isinf(c.delta)) return skipped("needs a finite delta > 1");
  const double h = cheeger_constant(c.g, c.iso).constant;
  const double c_delta = isoperimetric_constant(c.g, c.delta, c.iso).constant;
  if (!(h > 0.0) || !(c_delta > 0.0)) return skipped("balanced graph: the constants vanish");
  const SobolevConstants constants{c.delta, c_delta, h};
  const double p_iso = std::min(2.0, (1.0 + c.delta) / 2.0);
  const std::vector<std::pair<SobolevMode, double>> modes{{SobolevMode::kIsoP1, 1.0},
                                                          {SobolevMode::kIsoGeneral, p_iso},
                                                          {SobolevMode::kCheegerP1, 1.0},
                                                          {SobolevMode::kCheegerP, 2.0}};
  SuiteResult r;
  std::mt19937_64 rng(c.seed);
  std::array<double, 4> min_slack{};
  min_slack.fill(std::numeric_limits<double>::infinity());
  for (int i = 0; i < c.trials; ++i) {
    const VertexFunction f = random_function(c.g.vertex_count(), rng);
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const QuotientReport q = verify_sobolev(c.g, f, modes[m].first, modes[m].second, constants);
      ++r.checked;
      if (!q.satisfied) ++r.violations;
      min_slack[m] = std::min(min_slack[m], q.quotient / q.bound_low);
    }
  }
  r.body["h"] = h;
  r.body["c_delta"] = c_delta;
  r.body["p_general"] = p_iso;
  r.body["min_quotient_over_bound"] = json{{"iso_p1", min_slack[0]},
                                           {"iso_general", min_slack[1]},
                                           {"cheeger_p1", min_slack[2]},
                                           {"cheeger_p", min_slack[3]}};
  return r;
}

SuiteResult suite_kato(const SuiteContext& c) {
  SuiteResult r;
  std::mt19937_64 rng(c.seed);
  for (int i = 0; i < c.trials; ++i) {
    ++r.checked;
    if (!kato_check(c.g, random_function(c.g.vertex_count(), rng))) ++r.violations;
  }
  return r;
}

SuiteResult suite_positivity(const SuiteContext& c) {
  SuiteResult r;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < c.trials; ++i) {
    Eigen::VectorXd f(c.g.vertex_count());
    for (Eigen::Index u = 0; u < f.size(); ++u) f[u] = unit(rng) < 0.3 ? 0.0 : unit(rng);
    ++r.checked;
    if (!positivity_check(c.g, 0.05 + 2.0 * unit(rng), f)) ++r.violations;
  }
  return r;
}

SuiteResult suite_heat(const SuiteContext& c) {
  SuiteResult r;
  json rows = json::array();
  for (double t : {0.1, 1.0, 10.0}) {
    const HeatKernelReport k = heat_kernel_properties_check(c.g, t, t / 3.0);
    ++r.checked;
    if (!k.all()) ++r.violations;
    rows.push_back(json{{"t", t},
                        {"hermitian", k.hermitian},
                        {"semigroup", k.semigroup},
                        {"delta_action", k.delta_action},
                        {"heat_equation", k.heat_equation},
                        {"unsigned_nonnegative", k.unsigned_nonnegative},
                        {"fixes_sqrt_mu", k.fixes_sqrt_mu},
                        {"semigroup_error", k.semigroup_error},
                        {"heat_equation_residual", k.heat_equation_residual}});
  }
  r.body["rows"] = std::move(rows);
  return r;
}

SuiteResult suite_domination(const SuiteContext& c) {
  SuiteResult r;
  std::mt19937_64 rng(c.seed);
  for (int i = 0; i < c.trials; ++i) {
    const VertexFunction f = random_function(c.g.vertex_count(), rng);
    for (double t : {0.1, 1.0, 10.0}) {
      ++r.checked;
      if (!domination_check(c.g, t, f)) ++r.violations;
    }
  }
  return r;
}

SuiteResult suite_trace(const SuiteContext& c) {
  if (!c.g.group().is_cyclic()) return skipped("exact constants need a cyclic signature group");
  if (!(c.delta > 2.0) || std::isinf(c.delta)) return skipped("needs a finite delta > 2");
  const double c_delta = isoperimetric_constant(c.g, c.delta, c.iso).constant;
  if (!(c_delta > 0.0)) return skipped("balanced graph: the constants vanish");
  SuiteResult r;
  const TraceBoundReport trace = trace_bound_check(c.g, c.delta, c_delta, {0.01, 0.1, 1.0, 10.0, 100.0});
  json rows = json::array();
  for (const TraceBoundRow& row : trace.rows) {
    ++r.checked;
    if (!row.holds) ++r.violations;
    rows.push_back(json{{"t", row.t}, {"trace", row.trace}, {"bound", row.bound}, {"diagonal_ok", row.diagonal_ok}});
  }
  json eig = json::array();
  for (int k = 1; k <= c.g.vertex_count(); ++k) {
    const EigenvalueBoundReport e = eigenvalue_lower_bound_check(c.g, c.delta, c_delta, k);
    ++r.checked;
    if (!e.holds) ++r.violations;
    eig.push_back(json{{"k", k}, {"eigenvalue", e.eigenvalue}, {"bound", e.bound}});
  }
  r.body["c_delta"] = c_delta;
  r.body["constant"] = trace.constant;
  r.body["trace"] = std::move(rows);
  r.body["eigenvalues"] = std::move(eig);
  return r;
}

SuiteResult suite_product(const SuiteContext& c) {
  if (!c.g.group().is_cyclic()) return skipped("exact constants need a cyclic signature group");
  const EdgeSpec e{0, 1, 1.0, GroupElement::identity(c.g.group())};
  const MagneticGraph k2 = MagneticGraph::build(c.g.group(), 2, std::span<const EdgeSpec>(&e, 1));
  const std::vector<MagneticGraph> factors{c.g, k2};
  IsoperimetryOptions iso = c.iso;
  if (iso.policy == FrustrationPolicy::kExact) iso.policy = FrustrationPolicy::kExactOrHeuristic;
  const ProductAdditivityReport p = verify_product_additivity(factors, iso);
  SuiteResult r;
  r.checked = 1;
  r.violations = p.holds ? 0 : 1;
  r.body = json{{"factors", "G x K2"},
                {"factor_constants", p.factor_constants},
                {"product_constant", p.product_constant},
                {"lower", p.lower},
                {"upper", p.upper},
                {"upper_bound_mode", p.upper_bound_mode}};
  return r;
}

using SuiteFn = SuiteResult (*)(const SuiteContext&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table{
      {"coarea", suite_coarea},   {"sobolev", suite_sobolev},       {"kato", suite_kato},
      {"positivity", suite_positivity}, {"heat", suite_heat},     {"domination", suite_domination},
      {"trace", suite_trace},     {"product", suite_product}};
  return table;
}

SuiteResult run_suite(SuiteFn fn, const SuiteContext& c) {
  try {
    return fn(c);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBudgetExceeded || e.code() == ErrorCode::kContinuousGroup) return skipped(e.what());
    throw;
  }
}

// --- commands -------------------------------------------------------------------

void add_enumeration_flags(CLI::App* cmd, EnumerationFlags& f) {
  cmd->add_flag("--heuristic", f.heuristic, "coordinate descent for every frustration (upper bounds)");
  cmd->add_flag("--auto", f.fallback, "exact where the budget allows, heuristic elsewhere");
  cmd->add_option("--max-vertices", f.max_vertices, "refuse larger graphs")->check(CLI::Range(1, 64));
  cmd->add_option("--restarts", f.restarts, "random restarts of the heuristic")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", f.seed, "seed of the heuristic");
}

json iso_results(const MagneticGraph& g, const IsoperimetricResult& r, bool profile) {
  const int n = g.vertex_count();
  json out;
  out["delta"] = delta_json(r.delta);
  out[std::isinf(r.delta) ? "h" : "c_delta"] = r.constant;
  out["argmin"] = hex_subset(r.argmin.subset, n);
  out["frustration"] = r.argmin.frustration;
  out["boundary"] = r.argmin.boundary;
  out["volume"] = r.argmin.volume;
  out["upper_bound"] = r.upper_bound;
  out["switching"] = switching_json(r.argmin_switching);
  if (profile) {
    json rows = json::array();
    for (const CutReport& c : r.profile) rows.push_back(cut_json(c, n));
    out["profile"] = std::move(rows);
  }
  return out;
}

// Frustration over S^1 with switchings restricted to k-th roots of unity: the
// signatures are rounded to S^1_k to find a candidate, which is then priced on
// the original graph and polished by coordinate descent. The value is an upper
// bound on the S^1 index, not a certified minimum.
FrustrationResult discretized_frustration(const MagneticGraph& g, VertexSet subset, int k, std::int64_t budget,
                                          const HeuristicOptions& heuristic) {
  const Group cyclic = Group::cyclic(k);
  std::vector<EdgeSpec> rounded;
  for (const Edge& e : g.edges()) {
    const long j = std::lround(e.signature.angle() / (2.0 * std::numbers::pi) * k);
    rounded.push_back({e.u, e.v, e.weight, GroupElement::cyclic(j, k)});
  }
  const MagneticGraph coarse = MagneticGraph::build(cyclic, g.vertex_count(), rounded,
                                                    std::vector<double>(g.measure().begin(), g.measure().end()));
  const FrustrationResult exact = frustration_exact(coarse, subset, budget);
  SwitchingAssignment lifted(g.group(), g.vertex_count());
  subset.for_each([&](int u) {
    lifted.set(u, GroupElement::circle_turns(static_cast<double>(exact.minimizer.at(u).exponent()) / k));
  });
  HeuristicOptions polish = heuristic;
  polish.warm_start = lifted;
  polish.restarts = 0;
  FrustrationResult r = frustration_heuristic(g, subset, polish);
  const double lifted_cost = l1_switch_cost(g, subset, lifted);
  if (lifted_cost < r.value) r = FrustrationResult{lifted_cost, lifted, false, r.evaluations};
  r.evaluations += exact.evaluations;
  return r;
}

}  // namespace

Environment environment_from_process() {
  Environment env;
  if (const char* raw = std::getenv("MAGNETO_BUDGET")) {
    char* end = nullptr;
    const long long v = std::strtoll(raw, &end, 10);
    if (end != raw && *end == '\0' && v > 0) env.budget = v;
  }
  return env;
}

ExitCode run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Isoperimetric, gauge and spectral computations on magnetic graphs", "magneto"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  int threads = 1;
  bool timing = false;
  app.add_option("--threads", threads, "worker threads for subset enumeration")->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "report wall-clock time (output is then not reproducible)");
  const std::int64_t budget = env.budget.value_or(kDefaultEnumerationBudget);

  std::string graph_path;
  std::function<Outcome()> action;

  // frustration
  std::string subset_text;
  int discretize = 0;
  EnumerationFlags fr_flags;
  auto* fr = app.add_subcommand("frustration", "frustration index of a vertex subset");
  fr->add_option("graph", graph_path, "graph JSON")->required();
  fr->add_option("--subset", subset_text, "hex bitmask of vertices (default: all)");
  fr->add_option("--discretize", discretize, "on S^1 graphs, search switchings among k-th roots of unity")
      ->check(CLI::Range(2, 64));
  fr->add_flag("--heuristic", fr_flags.heuristic, "coordinate descent instead of enumeration");
  fr->add_option("--restarts", fr_flags.restarts, "random restarts of the heuristic")->check(CLI::NonNegativeNumber);
  fr->add_option("--seed", fr_flags.seed, "seed of the heuristic");
  fr->final_callback([&] {
    action = [&] {
      const MagneticGraph g = load_graph(graph_path);
      const VertexSet subset = subset_text.empty() ? VertexSet::full(g.vertex_count())
                                                   : parse_subset(subset_text, g.vertex_count());
      HeuristicOptions h;
      h.restarts = fr_flags.restarts;
      h.seed = fr_flags.seed;
      Outcome o;
      FrustrationResult r{0.0, SwitchingAssignment(g.group(), g.vertex_count()), false, 0};
      std::string mode;
      if (fr_flags.heuristic) {
        r = frustration_heuristic(g, subset, h);
        mode = "heuristic";
      } else if (g.group().is_circle() && discretize > 0) {
        r = discretized_frustration(g, subset, discretize, budget, h);
        mode = "discretized";
        o.results["warning"] = "switchings restricted to k-th roots of unity; the value is an upper bound only";
        o.results["discretization"] = discretize;
      } else {
        r = frustration_exact(g, subset, budget);
        mode = "exact";
      }
      json head{{"subset", hex_subset(subset, g.vertex_count())}, {"value", r.value}, {"mode", mode},
                {"exact", r.exact}, {"evaluations", r.evaluations}, {"minimizer", switching_json(r.minimizer)}};
      head.update(o.results);
      o.results = std::move(head);
      o.summary = "frustration(" + hex_subset(subset, g.vertex_count()) + ") = " + std::to_string(r.value) +
                  (r.exact ? "" : " (upper bound)");
      return o;
    };
  });

  // cheeger / isoperimetric
  EnumerationFlags ch_flags;
  bool profile = false;
  auto* ch = app.add_subcommand("cheeger", "signed one-way Cheeger constant by subset enumeration");
  ch->add_option("graph", graph_path, "graph JSON")->required();
  ch->add_flag("--profile", profile, "list every subset");
  add_enumeration_flags(ch, ch_flags);
  ch->final_callback([&] {
    action = [&] {
      const MagneticGraph g = load_graph(graph_path);
      IsoperimetryOptions o = iso_options(ch_flags, threads, env);
      o.collect_profile = profile;
      const IsoperimetricResult r = cheeger_constant(g, o);
      Outcome out;
      out.results = iso_results(g, r, profile);
      out.summary = "h = " + std::to_string(r.constant) + " at " + hex_subset(r.argmin.subset, g.vertex_count()) +
                    (r.upper_bound ? " (upper bound)" : "");
      return out;
    };
  });

  EnumerationFlags is_flags;
  std::string delta_text;
  bool is_profile = false;
  auto* is = app.add_subcommand("isoperimetric", "isoperimetric constant c_delta by subset enumeration");
  is->add_option("graph", graph_path, "graph JSON")->required();
  is->add_option("--delta", delta_text, "isoperimetric dimension (> 1, or inf)")->required();
  is->add_flag("--profile", is_profile, "list every subset");
  add_enumeration_flags(is, is_flags);
  is->final_callback([&] {
    action = [&] {
      const MagneticGraph g = load_graph(graph_path);
      IsoperimetryOptions o = iso_options(is_flags, threads, env);
      o.collect_profile = is_profile;
      const IsoperimetricResult r = isoperimetric_constant(g, parse_delta(delta_text), o);
      Outcome out;
      out.results = iso_results(g, r, is_profile);
      out.summary = "c_" + format_delta(r.delta) + " = " + std::to_string(r.constant) +
                    (r.upper_bound ? " (upper bound)" : "");
      return out;
    };
  });

  // product
  std::vector<std::string> factor_paths;
  std::string product_out;
  auto* pr = app.add_subcommand("product", "signed Cartesian product of graph files");
  pr->add_option("graphs", factor_paths, "factor graphs")->required()->expected(1, -1);
  pr->add_option("-o,--output", product_out, "where to write the product graph")->required();
  pr->final_callback([&] {
    action = [&] {
      std::vector<MagneticGraph> factors;
      for (const std::string& p : factor_paths) factors.push_back(load_graph(p));
      const MagneticGraph g = cartesian_product(factors);
      std::ofstream file(product_out);
      if (!file) throw Error(ErrorCode::kParseError, "cannot write " + product_out);
      file << graph_to_json(g) << '\n';
      Outcome o;
      o.results = json{{"factors", factors.size()},
                       {"vertices", g.vertex_count()},
                       {"edges", g.edge_count()},
                       {"output", product_out}};
      o.summary = "product with " + std::to_string(g.vertex_count()) + " vertices and " +
                  std::to_string(g.edge_count()) + " edges written to " + product_out;
      return o;
    };
  });

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "eigenvalues of the magnetic Laplacian");
  sp->add_option("graph", graph_path, "graph JSON")->required();
  sp->final_callback([&] {
    action = [&] {
      const MagneticGraph g = load_graph(graph_path);
      const SpectralData s = eigendecomposition(magnetic_laplacian(g));
      Outcome o;
      o.results = json{{"eigenvalues", std::vector<double>(s.eigenvalues.begin(), s.eigenvalues.end())},
                       {"d_mu", max_mu_degree(g)},
                       {"balanced", check_balance(g).balanced},
                       {"residual", s.residual}};
      o.summary = "lambda_1 = " + std::to_string(s.eigenvalues[0]);
      return o;
    };
  });

  // heat
  double heat_t = 0.0;
  bool heat_unsigned = false;
  auto* he = app.add_subcommand("heat", "heat kernel e^{-t Delta}");
  he->add_option("graph", graph_path, "graph JSON")->required();
  he->add_option("--t", heat_t, "time")->required();
  he->add_flag("--unsigned", heat_unsigned, "drop the signature");
  he->final_callback([&] {
    action = [&] {
      const MagneticGraph g = load_graph(graph_path);
      const HeatKernel k =
          heat_kernel(g, heat_t, heat_unsigned ? SignatureMode::kUnsigned : SignatureMode::kSigned);
      json re = json::array();
      json im = json::array();
      for (Eigen::Index i = 0; i < k.matrix.rows(); ++i) {
        json rr = json::array();
        json ii = json::array();
        for (Eigen::Index j = 0; j < k.matrix.cols(); ++j) {
          rr.push_back(k.matrix(i, j).real());
          ii.push_back(k.matrix(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
      }
      Outcome o;
      o.results = json{{"t", heat_t},
                       {"mode", heat_unsigned ? "unsigned" : "signed"},
                       {"trace", k.matrix.trace().real()},
                       {"kernel", json{{"re", std::move(re)}, {"im", std::move(im)}}}};
      o.summary = "trace K_t = " + std::to_string(k.matrix.trace().real());
      return o;
    };
  });

  // verify
  std::string suite = "all";
  std::string verify_delta = "3";
  int trials = 100;
  std::uint64_t verify_seed = 0;
  EnumerationFlags ve_flags;
  std::vector<std::string> suite_names{"all"};
  for (const auto& [name, fn] : suites()) suite_names.push_back(name);
  auto* ve = app.add_subcommand("verify", "check the inequalities on random test functions");
  ve->add_option("graph", graph_path, "graph JSON")->required();
  ve->add_option("--suite", suite, "which checks to run")->check(CLI::IsMember(suite_names));
  ve->add_option("--delta", verify_delta, "isoperimetric dimension for the Sobolev and trace suites");
  ve->add_option("--trials", trials, "random functions per suite")->check(CLI::NonNegativeNumber);
  ve->add_option("--seed", verify_seed, "seed for the random functions");
  ve->add_flag("--auto", ve_flags.fallback, "heuristic frustration where the exact budget is exceeded");
  ve->add_option("--max-vertices", ve_flags.max_vertices, "refuse larger graphs")->check(CLI::Range(1, 64));
  ve->final_callback([&] {
    action = [&] {
      const MagneticGraph g = load_graph(graph_path);
      const SuiteContext ctx{g, parse_delta(verify_delta), trials, verify_seed, iso_options(ve_flags, threads, env)};
      Outcome o;
      std::int64_t checked = 0;
      std::int64_t violations = 0;
      json per_suite = json::object();
      for (const auto& [name, fn] : suites()) {
        if (suite != "all" && suite != name) continue;
        SuiteResult r = run_suite(fn, ctx);
        r.body["checked"] = r.checked;
        r.body["violations"] = r.violations;
        checked += r.checked;
        violations += r.violations;
        per_suite[name] = std::move(r.body);
      }
      o.results = json{{"suite", suite},
                       {"trials", trials},
                       {"seed", verify_seed},
                       {"checked", checked},
                       {"violations", violations},
                       {"suites", std::move(per_suite)}};
      o.status = violations == 0 ? Status::kOk : Status::kViolation;
      o.summary = "verify " + suite + ": " + std::to_string(checked) + " checks, " + std::to_string(violations) +
                  " violations";
      return o;
    };
  });

  // oracle cycle
  int oracle_n = 0;
  int oracle_k = 0;
  int oracle_j = 0;
  std::string oracle_delta = "3";
  auto* orc = app.add_subcommand("oracle", "closed forms");
  orc->require_subcommand(1, 1);
  auto* cyc = orc->add_subcommand("cycle", "unit-weight cycle with signature product xi_k^j, mu = 1");
  cyc->add_option("--n", oracle_n, "cycle length")->required()->check(CLI::Range(3, 1 << 30));
  cyc->add_option("--k", oracle_k, "group order")->required()->check(CLI::PositiveNumber);
  cyc->add_option("--j", oracle_j, "exponent of the signature product")->required();
  cyc->add_option("--delta", oracle_delta, "isoperimetric dimension for c_delta");
  cyc->final_callback([&] {
    action = [&] {
      const double delta = parse_delta(oracle_delta);
      const double iota = frustration_cycle_oracle(GroupElement::cyclic(oracle_j, oracle_k));
      Outcome o;
      o.results = json{{"n", oracle_n}, {"k", oracle_k}, {"j", oracle_j}};
      o.results["iota"] = iota;
      o.results["h"] = iota / oracle_n;
      o.results["c_delta(" + format_delta(delta) + ")"] = iota / std::pow(oracle_n, volume_exponent(delta));
      o.summary = "cycle C_" + std::to_string(oracle_n) + ": iota = " + std::to_string(iota);
      return o;
    };
  });

  json report;
  Outcome outcome;
  std::string command = args.empty() ? "" : args.front();
  try {
    std::vector<const char*> argv{"magneto"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return ExitCode::kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return ExitCode::kOk;
    } catch (const CLI::ParseError& e) {
      throw Error(ErrorCode::kParseError, e.what());
    }
    if (!app.get_subcommands().empty()) {
      command = app.get_subcommands().front()->get_name();
      if (command == "oracle") command = "oracle cycle";
    }
    outcome = action();
  } catch (const Error& e) {
    outcome.status = Status::kError;
    outcome.results = json{{"error", to_string(e.code())}, {"message", e.what()}};
    outcome.summary = e.what();
  } catch (const std::exception& e) {
    outcome.status = Status::kError;
    outcome.results = json{{"error", "INTERNAL"}, {"message", e.what()}};
    outcome.summary = e.what();
  }

  report["command"] = command;
  report["inputs"] = json{{"args", args}, {"digest", fnv1a64(args)}};
  report["results"] = std::move(outcome.results);
  report["status"] = status_name(outcome.status);
  if (timing) {
    report["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  } else {
    report["wall_time"] = nullptr;
  }
  out << report.dump() << '\n';
  err << "magneto " << command << ": " << outcome.summary << " [" << status_name(outcome.status) << "]\n";

  switch (outcome.status) {
    case Status::kOk:
      return ExitCode::kOk;
    case Status::kViolation:
      return ExitCode::kViolation;
    case Status::kError:
      return ExitCode::kError;
  }
  return ExitCode::kError;
}

}  // namespace magneto::cli
