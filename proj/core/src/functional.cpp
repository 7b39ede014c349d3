#include "magneto/functional.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace magneto {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double positive_angle(double radians) {
  double a = std::fmod(radians, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a >= kTwoPi ? 0.0 : a;
}

int sector_of_angle(double arg, double theta, int k) {
  int j = static_cast<int>(std::floor(positive_angle(arg - theta) * k / kTwoPi));
  return std::clamp(j, 0, k - 1);
}

void check_t(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorCode::kBadT, "t must lie in (0, 1]");
}

}  // namespace

double VertexFunction::max_abs() const {
  double m = 0.0;
  for (const Complex& z : values) m = std::max(m, std::abs(z));
  return m;
}

VertexFunction VertexFunction::modulus() const {
  VertexFunction out = zeros(size());
  for (int u = 0; u < size(); ++u) out[u] = std::abs(values[u]);
  return out;
}

VertexFunction normalize(const VertexFunction& f) {
  const double m = f.max_abs();
  if (m == 0.0) throw Error(ErrorCode::kZeroFunction, "cannot normalise the zero function");
  VertexFunction out = f;
  for (Complex& z : out.values) z /= m;
  return out;
}

double coarea_factor(const Group& group) { return group.is_cyclic() ? 3.0 : 2.0; }

int sector_index(Complex z, double theta, int k) {
  if (k < 1) throw Error(ErrorCode::kWrongGroup, "sector count must be >= 1");
  return sector_of_angle(std::arg(z), theta, k);
}

Complex sector_function(Complex z, double t, double theta, int k) {
  check_t(t);
  if (std::abs(z) < t) return {0.0, 0.0};
  return GroupElement::cyclic(sector_index(z, theta, k), k).value();
}

Complex radial_function(Complex z, double t) {
  check_t(t);
  const double r = std::abs(z);
  if (r < t) return {0.0, 0.0};
  return z / r;
}

QuadratureEstimate key_average_cyclic(Complex z1, Complex z2, int k, int n_theta) {
  if (k < 1) throw Error(ErrorCode::kWrongGroup, "sector count must be >= 1");
  if (n_theta < 1) throw Error(ErrorCode::kBadT, "need at least one quadrature panel");
  const double r1 = std::abs(z1);
  const double r2 = std::abs(z2);
  const double big = std::max(r1, r2);
  const double small = std::min(r1, r2);
  if (small == 0.0) return {big, 0.0};

  std::vector<double> chord(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) chord[j] = GroupElement::cyclic(j, k).distance_to_one();

  // Inner integral, per the piecewise-constant profile in t:
  // |xi^{j1} - xi^{j2}| on (0, small], 1 on (small, big], 0 above.
  const double a1 = std::arg(z1);
  const double a2 = std::arg(z2);
  const double panel = kTwoPi / n_theta;
  double sum = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = (i + 0.5) * panel;
    int d = sector_of_angle(a1, theta, k) - sector_of_angle(a2, theta, k);
    if (d < 0) d += k;
    sum += chord[d];
  }
  const double value = (sum / n_theta) * small + (big - small);
  // The sector difference changes at most 2k times; each jump moves the
  // integrand by at most 2 * small and spoils one panel.
  const double error_bound = 4.0 * k * small / n_theta;
  return {value, error_bound};
}

double key_average_circle(Complex z1, Complex z2) {
  double r1 = std::abs(z1);
  double r2 = std::abs(z2);
  if (r1 < r2) {
    std::swap(z1, z2);
    std::swap(r1, r2);
  }
  if (r1 == 0.0) return 0.0;
  if (r2 == 0.0) return r1;
  return std::abs(z1 / r1 - z2 / r2) * r2 + (r1 - r2);
}

double signed_gradient_norm(const MagneticGraph& g, const VertexFunction& f, double p) {
  if (f.size() != g.vertex_count()) throw Error(ErrorCode::kDimensionMismatch, "function length != vertex count");
  if (!(p >= 1.0)) throw Error(ErrorCode::kBadExponents, "gradient exponent must be >= 1");
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    const double diff = std::abs(f[e.u] - e.signature.value() * f[e.v]);
    total += e.weight * (p == 1.0 ? diff : std::pow(diff, p));
  }
  return total;
}

double measure_norm(const MagneticGraph& g, const VertexFunction& f, double r) {
  if (f.size() != g.vertex_count()) throw Error(ErrorCode::kDimensionMismatch, "function length != vertex count");
  if (!(r >= 1.0)) throw Error(ErrorCode::kBadExponents, "norm exponent must be >= 1");
  double total = 0.0;
  for (int u = 0; u < g.vertex_count(); ++u) {
    const double m = std::abs(f[u]);
    total += (r == 1.0 ? m : std::pow(m, r)) * g.measure(u);
  }
  return r == 1.0 ? total : std::pow(total, 1.0 / r);
}

double coarea_lhs(const MagneticGraph& g, const VertexFunction& f, const CoareaOptions& options) {
  if (f.size() != g.vertex_count()) throw Error(ErrorCode::kDimensionMismatch, "function length != vertex count");
  if (std::abs(f.max_abs() - 1.0) > options.tol.complex_abs) {
    throw Error(ErrorCode::kNotNormalized, "coarea integral needs max |f| = 1");
  }
  const int n = g.vertex_count();
  std::vector<double> levels{0.0};
  for (int u = 0; u < n; ++u) levels.push_back(std::abs(f[u]));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const double t = levels[i + 1];
    VertexSet superlevel;
    for (int u = 0; u < n; ++u) {
      if (std::abs(f[u]) >= t) superlevel.insert(u);
    }
    double iota = 0.0;
    if (g.group().is_cyclic()) {
      iota = frustration_exact(g, superlevel, options.budget, options.tol).value;
    } else {
      HeuristicOptions h = options.heuristic;
      SwitchingAssignment phase(g.group(), n);
      superlevel.for_each([&](int u) { phase.set(u, GroupElement::circle(std::arg(f[u]))); });
      h.warm_start = std::move(phase);
      iota = frustration_heuristic(g, superlevel, h, options.tol).value;
    }
    total += (t - levels[i]) * (iota + boundary_measure(g, superlevel));
  }
  return total;
}

double sobolev_constant(const MagneticGraph& g, SobolevMode mode, double p, const SobolevConstants& constants) {
  const double factor = coarea_factor(g.group());
  switch (mode) {
    case SobolevMode::kIsoP1:
    case SobolevMode::kIsoGeneral: {
      const double delta = constants.delta;
      if (!(delta > 1.0) || std::isinf(delta)) throw Error(ErrorCode::kBadDelta, "need finite delta > 1");
      if (!(constants.c_delta > 0.0)) throw Error(ErrorCode::kZeroConstant, "isoperimetric constant is zero");
      if (mode == SobolevMode::kIsoP1 || p == 1.0) {
        if (mode == SobolevMode::kIsoGeneral && !(p < delta)) throw Error(ErrorCode::kBadExponents, "need p < delta");
        return factor / constants.c_delta;
      }
      if (!(p >= 1.0 && p < delta)) throw Error(ErrorCode::kBadExponents, "need 1 <= p < delta");
      const double inv_p_conj = 1.0 - 1.0 / p;
      return 2.0 * std::pow(max_mu_degree(g), inv_p_conj) * ((delta - 1.0) * p / (delta - p)) * factor /
             constants.c_delta;
    }
    case SobolevMode::kCheegerP1:
    case SobolevMode::kCheegerP: {
      if (!(constants.h > 0.0)) throw Error(ErrorCode::kZeroConstant, "Cheeger constant is zero");
      if (mode == SobolevMode::kCheegerP1) return factor / constants.h;
      if (!(p >= 1.0)) throw Error(ErrorCode::kBadExponents, "need p >= 1");
      const double inv_p_conj = 1.0 - 1.0 / p;
      return 2.0 * factor * p * std::pow(max_mu_degree(g), inv_p_conj) / constants.h;
    }
  }
  return 0.0;
}

QuotientReport verify_sobolev(const MagneticGraph& g, const VertexFunction& f, SobolevMode mode, double p,
                              const SobolevConstants& constants, const Tolerances& tol) {
  if (f.size() != g.vertex_count()) throw Error(ErrorCode::kDimensionMismatch, "function length != vertex count");
  if (f.is_zero()) throw Error(ErrorCode::kZeroFunction, "Sobolev quotient undefined for f = 0");

  double grad_p = 1.0;
  double q = 1.0;
  switch (mode) {
    case SobolevMode::kIsoP1:
      grad_p = 1.0;
      q = constants.delta / (constants.delta - 1.0);
      break;
    case SobolevMode::kIsoGeneral:
      grad_p = p;
      q = constants.delta * p / (constants.delta - p);
      break;
    case SobolevMode::kCheegerP1:
      grad_p = 1.0;
      q = 1.0;
      break;
    case SobolevMode::kCheegerP:
      grad_p = p;
      q = p;
      break;
  }
  const double constant = sobolev_constant(g, mode, grad_p, constants);

  QuotientReport r{};
  r.p = grad_p;
  r.q = q;
  const double grad = signed_gradient_norm(g, f, grad_p);
  r.numerator = grad_p == 1.0 ? grad : std::pow(grad, 1.0 / grad_p);
  r.denominator = measure_norm(g, f, q);
  r.quotient = r.numerator / r.denominator;
  r.constant = constant;
  r.bound_low = 1.0 / constant;
  r.bound_high = std::numeric_limits<double>::infinity();
  r.satisfied = r.quotient >= r.bound_low - tol.sobolev_slack * std::max(1.0, r.bound_low);
  return r;
}

VertexFunction extremal_certificate(const MagneticGraph& g, const IsoperimetricResult& result) {
  VertexFunction f = VertexFunction::zeros(g.vertex_count());
  result.argmin.subset.for_each([&](int u) { f[u] = result.argmin_switching.at(u).value(); });
  return f;
}

VertexFunction extremal_certificate(const MagneticGraph& g, const IsoperimetryOptions& options) {
  return extremal_certificate(g, cheeger_constant(g, options));
}

double sobolev_quotient(const MagneticGraph& g, const VertexFunction& f, double p, double q) {
  const double grad = signed_gradient_norm(g, f, p);
  return (p == 1.0 ? grad : std::pow(grad, 1.0 / p)) / measure_norm(g, f, q);
}

InfimumSearchResult quotient_infimum_search(const MagneticGraph& g, double p, double q, std::int64_t budget,
                                            std::uint64_t seed, const IsoperimetryOptions& options) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw Error(ErrorCode::kBadExponents, "need p, q >= 1");
  IsoperimetryOptions iso = options;
  if (!g.group().is_cyclic() && iso.policy == FrustrationPolicy::kExact) iso.policy = FrustrationPolicy::kHeuristic;

  // q = delta / (delta - 1) with p = 1 is the isoperimetric quotient.
  const double delta = (p == 1.0 && q > 1.0) ? q / (q - 1.0) : kInfiniteDimension;
  VertexFunction current = extremal_certificate(g, isoperimetric_constant(g, delta, iso));
  double current_q = sobolev_quotient(g, current, p, q);
  InfimumSearchResult best{current, current_q, 1};

  const int n = g.vertex_count();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_vertex(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double step = 0.5;
  int failures = 0;
  while (best.evaluations < budget) {
    VertexFunction candidate = current;
    const int u = pick_vertex(rng);
    const double move = unit(rng);
    if (move < 0.15) {
      candidate[u] = 0.0;
    } else if (move < 0.35) {
      candidate[u] *= std::polar(1.0, step * gauss(rng));
    } else {
      candidate[u] += step * Complex(gauss(rng), gauss(rng));
    }
    ++best.evaluations;
    if (candidate.is_zero()) continue;
    const double cq = sobolev_quotient(g, candidate, p, q);
    if (cq < current_q) {
      current = std::move(candidate);
      current_q = cq;
      failures = 0;
      if (cq < best.best_quotient) {
        best.best_quotient = cq;
        best.best_f = current;
      }
    } else if (++failures > 4 * n) {
      failures = 0;
      step *= 0.6;
      if (step < 1e-6) {
        // Restart from a perturbed copy of the incumbent.
        step = 0.5;
        current = best.best_f;
        for (Complex& z : current.values) z += 0.3 * Complex(gauss(rng), gauss(rng));
        if (current.is_zero()) current = best.best_f;
        current_q = sobolev_quotient(g, current, p, q);
        ++best.evaluations;
      }
    }
  }
  return best;
}

Complex complex_power(Complex z, double alpha) {
  if (!(alpha >= 1.0)) throw Error(ErrorCode::kBadAlpha, "alpha must be >= 1");
  const double r = std::abs(z);
  if (r == 0.0) return {0.0, 0.0};
  return z * std::pow(r, alpha - 1.0);
}

bool bernoulli_check(Complex z1, Complex z2, double alpha, double slack) {
  const double lhs = std::abs(complex_power(z1, alpha) - complex_power(z2, alpha));
  const double rhs =
      alpha * std::abs(z1 - z2) * (std::pow(std::abs(z1), alpha - 1.0) + std::pow(std::abs(z2), alpha - 1.0));
  return lhs <= rhs + slack;
}

}  // namespace magneto
