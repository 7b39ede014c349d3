#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "magneto/isoperimetry.hpp"

namespace magneto {

using Complex = std::complex<double>;

/// Complex-valued function on the vertices of a graph.
struct VertexFunction {
  std::vector<Complex> values;

  VertexFunction() = default;
  explicit VertexFunction(std::vector<Complex> v) : values(std::move(v)) {}
  static VertexFunction zeros(int n) { return VertexFunction(std::vector<Complex>(static_cast<std::size_t>(n))); }

  int size() const noexcept { return static_cast<int>(values.size()); }
  Complex& operator[](int u) { return values[u]; }
  const Complex& operator[](int u) const { return values[u]; }

  double max_abs() const;
  bool is_zero() const { return max_abs() == 0.0; }
  /// Pointwise modulus |f|.
  VertexFunction modulus() const;
};

/// Scales f so that max |f(u)| = 1. kZeroFunction if f == 0.
VertexFunction normalize(const VertexFunction& f);

/// 3 for cyclic signature groups, 2 for the circle.
double coarea_factor(const Group& group);

// --- truncation functions -------------------------------------------------

/// Index j of the sector [theta + 2 pi j/k, theta + 2 pi (j+1)/k) holding arg z.
int sector_index(Complex z, double theta, int k);

/// 0 if |z| < t, otherwise xi^j with j = sector_index(z, theta, k).
Complex sector_function(Complex z, double t, double theta, int k);

/// z / |z| if |z| >= t, otherwise 0.
Complex radial_function(Complex z, double t);

struct QuadratureEstimate {
  double value;
  /// Bound on |value - exact|, from counting the jumps of the integrand.
  double error_bound;
};

/// (1/2pi) int_0^{2pi} int_0^1 |Y_{t,theta}(z1) - Y_{t,theta}(z2)| dt dtheta.
/// The t-integral is exact; the theta-integral uses the midpoint rule.
QuadratureEstimate key_average_cyclic(Complex z1, Complex z2, int k, int n_theta = 4096);

/// int_0^1 |X_t(z1) - X_t(z2)| dt, exactly.
double key_average_circle(Complex z1, Complex z2);

// --- gradients and norms ----------------------------------------------------

/// sum over edges of w_uv |f(u) - s_uv f(v)|^p.
double signed_gradient_norm(const MagneticGraph& g, const VertexFunction& f, double p);

/// (sum_u |f(u)|^r mu(u))^{1/r}.
double measure_norm(const MagneticGraph& g, const VertexFunction& f, double r);

struct CoareaOptions {
  std::int64_t budget = kDefaultEnumerationBudget;
  HeuristicOptions heuristic = [] {
    HeuristicOptions h;
    h.restarts = 4;
    return h;
  }();
  Tolerances tol{};
};

/// int_0^1 iota({|f| >= t}) + |E({|f| >= t}, {|f| >= t}^c)| dt, evaluated
/// exactly as a finite sum over the distinct values of |f|. Requires
/// max |f| = 1 (kNotNormalized). On S^1 the frustration of each superlevel set
/// is an upper bound from coordinate descent started at f / |f|.
double coarea_lhs(const MagneticGraph& g, const VertexFunction& f, const CoareaOptions& options = {});

// --- Sobolev inequalities ---------------------------------------------------

enum class SobolevMode {
  kIsoP1,       // ||f||_{delta/(delta-1)} <= (3/c) ||grad f||_1
  kIsoGeneral,  // ||f||_q <= C(p, delta, c, d_mu) ||grad f||_p
  kCheegerP1,   // ||f||_1 <= (3/h) ||grad f||_1
  kCheegerP,    // ||f||_p <= (6 p d_mu^{1/p'} / h) ||grad f||_p
};

struct SobolevConstants {
  double delta = kInfiniteDimension;
  double c_delta = 0.0;
  double h = 0.0;
};

struct QuotientReport {
  double p;
  double q;
  double numerator;    // (sum w |f(u) - s f(v)|^p)^{1/p}
  double denominator;  // ||f||_{q, mu}
  double quotient;
  double constant;     // Sobolev constant C with denominator <= C numerator
  double bound_low;    // 1 / C
  double bound_high;
  bool satisfied;
};

/// Sobolev constant for `mode`; factor 3 on S^1_k, 2 on S^1.
double sobolev_constant(const MagneticGraph& g, SobolevMode mode, double p, const SobolevConstants& constants);

QuotientReport verify_sobolev(const MagneticGraph& g, const VertexFunction& f, SobolevMode mode, double p,
                              const SobolevConstants& constants, const Tolerances& tol = default_tolerances());

// --- variational characterisation ----------------------------------------

/// f = chi_{V1} tau for the argmin subset V1 and its optimal switching tau.
VertexFunction extremal_certificate(const MagneticGraph& g, const IsoperimetricResult& result);
VertexFunction extremal_certificate(const MagneticGraph& g, const IsoperimetryOptions& options = {});

/// (sum w |f(u) - s f(v)|^p)^{1/p} / ||f||_{q, mu}.
double sobolev_quotient(const MagneticGraph& g, const VertexFunction& f, double p, double q);

struct InfimumSearchResult {
  VertexFunction best_f;
  double best_quotient;
  std::int64_t evaluations;
};

/// Gradient-free local search for small values of sobolev_quotient(., p, q),
/// warm-started at the extremal certificate. The result is an upper bound on
/// the infimum.
InfimumSearchResult quotient_infimum_search(const MagneticGraph& g, double p, double q, std::int64_t budget,
                                            std::uint64_t seed, const IsoperimetryOptions& options = {});

// --- complex Bernoulli ------------------------------------------------------

/// z |z|^{alpha - 1}. kBadAlpha unless alpha >= 1.
Complex complex_power(Complex z, double alpha);

/// |z1^a - z2^a| <= a |z1 - z2| (|z1|^{a-1} + |z2|^{a-1}) up to `slack`.
bool bernoulli_check(Complex z1, Complex z2, double alpha, double slack = 1e-12);

}  // namespace magneto
