#include "magneto/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace magneto {

namespace {

void check_delta(double delta, double c_delta) {
  if (!(delta > 2.0) || std::isinf(delta)) throw Error(ErrorCode::kBadDelta, "heat kernel bounds need finite delta > 2");
  if (!(c_delta > 0.0)) throw Error(ErrorCode::kZeroConstant, "isoperimetric constant is zero");
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Eigen::VectorXd sqrt_measure(const MagneticGraph& g) {
  Eigen::VectorXd s(g.vertex_count());
  for (int u = 0; u < g.vertex_count(); ++u) s[u] = std::sqrt(g.measure(u));
  return s;
}

ComplexVector to_vector(const VertexFunction& f) {
  ComplexVector v(f.size());
  for (int u = 0; u < f.size(); ++u) v[u] = f[u];
  return v;
}

}  // namespace

HermitianMatrix::HermitianMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw Error(ErrorCode::kNotHermitian, "matrix is not square");
  const double err = max_abs(m_ - m_.adjoint());
  if (err > tol * std::max(1.0, max_abs(m_))) {
    throw Error(ErrorCode::kNotHermitian, "asymmetry " + std::to_string(err));
  }
}

HermitianMatrix magnetic_laplacian(const MagneticGraph& g, SignatureMode mode) {
  const int n = g.vertex_count();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int u = 0; u < n; ++u) m(u, u) = g.degree(u) / g.measure(u);
  for (const Edge& e : g.edges()) {
    const Complex s = mode == SignatureMode::kSigned ? e.signature.value() : Complex(1.0, 0.0);
    const double scale = e.weight / std::sqrt(g.measure(e.u) * g.measure(e.v));
    m(e.u, e.v) = -scale * s;
    m(e.v, e.u) = -scale * std::conj(s);
  }
  return HermitianMatrix(std::move(m));
}

SpectralData eigendecomposition(const HermitianMatrix& h, const Tolerances& tol) {
  const int n = h.dimension();
  const Eigen::MatrixXd re = h.matrix().real();
  const Eigen::MatrixXd im = h.matrix().imag();
  Eigen::MatrixXd embedded(2 * n, 2 * n);
  embedded << re, -im, im, re;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(embedded);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::kPairingFailure, "real eigensolver did not converge");
  const Eigen::VectorXd& doubled = solver.eigenvalues();
  const Eigen::MatrixXd& real_vectors = solver.eigenvectors();

  const double scale = std::max(1.0, n == 0 ? 0.0 : doubled.cwiseAbs().maxCoeff());
  const double gap = tol.eigen_pairing * scale;

  SpectralData out{Eigen::VectorXd(n), ComplexMatrix(n, n), 0.0};
  int filled = 0;
  int begin = 0;
  while (begin < 2 * n) {
    int end = begin + 1;
    while (end < 2 * n && doubled[end] - doubled[end - 1] <= gap) ++end;
    const int size = end - begin;
    if (size % 2 != 0) {
      throw Error(ErrorCode::kPairingFailure, "eigenvalue cluster of odd size " + std::to_string(size) + " near " +
                                                  std::to_string(doubled[begin]));
    }
    for (int i = begin; i < end; i += 2) {
      if (doubled[i + 1] - doubled[i] > gap) throw Error(ErrorCode::kPairingFailure, "unpaired eigenvalue");
    }

    // Each real eigenvector [x; y] gives a complex eigenvector x + i y; the
    // cluster's 2m real vectors span an m-dimensional complex space.
    std::vector<ComplexVector> candidates;
    for (int c = begin; c < end; ++c) {
      ComplexVector z(n);
      for (int u = 0; u < n; ++u) z[u] = Complex(real_vectors(u, c), real_vectors(u + n, c));
      candidates.push_back(std::move(z));
    }
    const int m = size / 2;
    for (int pick = 0; pick < m; ++pick) {
      auto it = std::max_element(candidates.begin(), candidates.end(),
                                 [](const ComplexVector& a, const ComplexVector& b) { return a.norm() < b.norm(); });
      const double norm = it->norm();
      if (norm < 1e-6) throw Error(ErrorCode::kPairingFailure, "degenerate eigenvector cluster");
      ComplexVector q = *it / norm;
      candidates.erase(it);
      for (ComplexVector& c : candidates) c -= q * q.dot(c);
      out.eigenvectors.col(filled) = q;
      out.eigenvalues[filled] = 0.5 * (doubled[begin + 2 * pick] + doubled[begin + 2 * pick + 1]);
      ++filled;
    }
    begin = end;
  }

  for (int j = 0; j < n; ++j) {
    const ComplexVector r = h.matrix() * out.eigenvectors.col(j) - out.eigenvalues[j] * out.eigenvectors.col(j);
    out.residual = std::max(out.residual, r.norm());
  }
  return out;
}

HeatKernel heat_kernel(const SpectralData& data, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::kNegativeTime, "heat kernel needs t >= 0");
  return HeatKernel{t, spectral_calculus(data, [t](double lambda) { return std::exp(-lambda * t); })};
}

HeatKernel heat_kernel(const MagneticGraph& g, double t, SignatureMode mode, const Tolerances& tol) {
  if (!(t >= 0.0)) throw Error(ErrorCode::kNegativeTime, "heat kernel needs t >= 0");
  return heat_kernel(eigendecomposition(magnetic_laplacian(g, mode), tol), t);
}

HeatKernelReport heat_kernel_properties_check(const MagneticGraph& g, double t, double a, const Tolerances& tol) {
  if (!(t >= 0.0)) throw Error(ErrorCode::kNegativeTime, "heat kernel needs t >= 0");
  if (!(a >= 0.0 && a <= t)) throw Error(ErrorCode::kNegativeTime, "need 0 <= a <= t");
  const int n = g.vertex_count();
  const HermitianMatrix lap = magnetic_laplacian(g, SignatureMode::kSigned);
  const SpectralData data = eigendecomposition(lap, tol);
  const ComplexMatrix k_t = heat_kernel(data, t).matrix;
  HeatKernelReport r{};

  r.hermitian_error = max_abs(k_t - k_t.adjoint());
  r.hermitian = r.hermitian_error <= tol.heat_kernel;

  const ComplexMatrix composed = heat_kernel(data, a).matrix * heat_kernel(data, t - a).matrix;
  r.semigroup_error = max_abs(k_t - composed);
  r.semigroup = r.semigroup_error <= tol.heat_kernel;

  // (K f)(u) = sum_v K(u, v) f(v), checked on delta functions by explicit sums.
  r.delta_action_error = 0.0;
  for (int v = 0; v < n; ++v) {
    ComplexVector delta = ComplexVector::Zero(n);
    delta[v] = 1.0;
    const ComplexVector image = k_t * delta;
    for (int u = 0; u < n; ++u) {
      Complex sum = 0.0;
      for (int z = 0; z < n; ++z) sum += k_t(u, z) * delta[z];
      r.delta_action_error = std::max({r.delta_action_error, std::abs(image[u] - sum), std::abs(image[u] - k_t(u, v))});
    }
  }
  r.delta_action = r.delta_action_error <= tol.heat_kernel;

  const double step = tol.heat_fd_step;
  ComplexMatrix derivative;
  if (t >= step) {
    derivative = (heat_kernel(data, t + step).matrix - heat_kernel(data, t - step).matrix) / (2.0 * step);
  } else {
    // Second-order one-sided difference near t = 0.
    derivative = (-3.0 * k_t + 4.0 * heat_kernel(data, t + step).matrix - heat_kernel(data, t + 2.0 * step).matrix) /
                 (2.0 * step);
  }
  const ComplexMatrix generator = lap.matrix() * k_t;
  r.heat_equation_residual = max_abs(derivative + generator);
  // Subtracting two O(|K|) matrices and dividing by the step leaves a roundoff
  // floor that dominates once Delta K_t has decayed (balanced graphs, large t).
  const double roundoff = n * std::numeric_limits<double>::epsilon() * max_abs(k_t) / step;
  r.heat_equation_tolerance = tol.heat_fd_rel * max_abs(generator) + roundoff;
  r.heat_equation = r.heat_equation_residual <= r.heat_equation_tolerance;

  const ComplexMatrix unsigned_k = heat_kernel(g, t, SignatureMode::kUnsigned, tol).matrix;
  r.min_unsigned_entry = n == 0 ? 0.0 : unsigned_k.real().minCoeff();
  r.unsigned_nonnegative = r.min_unsigned_entry >= -tol.kernel_nonneg && unsigned_k.imag().cwiseAbs().maxCoeff() <= tol.heat_kernel;
  const Eigen::VectorXd root = sqrt_measure(g);
  r.sqrt_mu_error = n == 0 ? 0.0 : (unsigned_k * root.cast<Complex>() - root.cast<Complex>()).cwiseAbs().maxCoeff();
  r.fixes_sqrt_mu = r.sqrt_mu_error <= tol.heat_kernel;
  return r;
}

Eigen::VectorXd unsigned_resolvent(const MagneticGraph& g, double lambda, const Eigen::VectorXd& f) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::kSingularSolve, "resolvent needs lambda > 0");
  if (f.size() != g.vertex_count()) throw Error(ErrorCode::kDimensionMismatch, "vector length != vertex count");
  const SpectralData data = eigendecomposition(magnetic_laplacian(g, SignatureMode::kUnsigned));
  const ComplexMatrix inverse = spectral_calculus(data, [lambda](double mu) { return 1.0 / (mu + lambda); });
  return (inverse * f.cast<Complex>()).real();
}

bool positivity_check(const MagneticGraph& g, double lambda, const Eigen::VectorXd& f, const Tolerances& tol) {
  if (f.size() > 0 && f.minCoeff() < 0.0) throw Error(ErrorCode::kDimensionMismatch, "positivity check needs f >= 0");
  const Eigen::VectorXd sol = unsigned_resolvent(g, lambda, f);
  return sol.size() == 0 || sol.minCoeff() >= -tol.pointwise;
}

bool kato_check(const MagneticGraph& g, const VertexFunction& f, const Tolerances& tol) {
  if (f.size() != g.vertex_count()) throw Error(ErrorCode::kDimensionMismatch, "function length != vertex count");
  const ComplexVector v = to_vector(f);
  const ComplexVector abs_v = v.cwiseAbs().cast<Complex>();
  const ComplexVector lhs_op = magnetic_laplacian(g, SignatureMode::kUnsigned).matrix() * abs_v;
  const ComplexVector rhs_op = magnetic_laplacian(g, SignatureMode::kSigned).matrix() * v;
  for (int u = 0; u < g.vertex_count(); ++u) {
    const double lhs = std::abs(v[u]) * lhs_op[u].real();
    const double rhs = (rhs_op[u] * std::conj(v[u])).real();
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (lhs > rhs + tol.pointwise * scale) return false;
  }
  return true;
}

bool domination_check(const MagneticGraph& g, double t, const VertexFunction& f, const Tolerances& tol) {
  if (f.size() != g.vertex_count()) throw Error(ErrorCode::kDimensionMismatch, "function length != vertex count");
  const ComplexMatrix k_signed = heat_kernel(g, t, SignatureMode::kSigned, tol).matrix;
  const ComplexMatrix k_unsigned = heat_kernel(g, t, SignatureMode::kUnsigned, tol).matrix;
  const ComplexVector v = to_vector(f);
  const ComplexVector lhs = k_signed * v;
  const ComplexVector rhs = k_unsigned * v.cwiseAbs().cast<Complex>();
  for (int u = 0; u < g.vertex_count(); ++u) {
    if (std::abs(lhs[u]) > rhs[u].real() + tol.pointwise) return false;
    for (int w = 0; w < g.vertex_count(); ++w) {
      if (std::abs(k_signed(u, w)) > k_unsigned(u, w).real() + tol.pointwise) return false;
    }
  }
  return true;
}

double heat_trace_constant(double delta, double c_delta, double d_mu) {
  check_delta(delta, c_delta);
  return std::pow(72.0 * delta * d_mu, delta / 2.0) / std::pow(c_delta, delta) *
         std::pow((delta - 1.0) / (delta - 2.0), delta);
}

TraceBoundReport trace_bound_check(const MagneticGraph& g, double delta, double c_delta,
                                   const std::vector<double>& t_grid, const Tolerances& tol) {
  const double constant = heat_trace_constant(delta, c_delta, max_mu_degree(g));
  const double vol = total_volume(g);
  const SpectralData data = eigendecomposition(magnetic_laplacian(g), tol);
  TraceBoundReport report{constant, {}, true};
  for (double t : t_grid) {
    if (!(t > 0.0)) throw Error(ErrorCode::kNegativeTime, "trace bound needs t > 0");
    TraceBoundRow row{t, 0.0, constant * vol / std::pow(t, delta / 2.0), true, true};
    for (Eigen::Index j = 0; j < data.eigenvalues.size(); ++j) row.trace += std::exp(-data.eigenvalues[j] * t);
    const ComplexMatrix k_t = heat_kernel(data, t).matrix;
    for (int u = 0; u < g.vertex_count(); ++u) {
      const double diag_bound = constant * g.measure(u) / std::pow(t, delta / 2.0);
      if (k_t(u, u).real() > diag_bound * (1.0 + tol.spectral) + tol.spectral) row.diagonal_ok = false;
    }
    row.holds = row.diagonal_ok && row.trace <= row.bound * (1.0 + tol.spectral) + tol.spectral;
    report.holds = report.holds && row.holds;
    report.rows.push_back(row);
  }
  return report;
}

EigenvalueBoundReport eigenvalue_lower_bound_check(const MagneticGraph& g, double delta, double c_delta, int k,
                                                   const Tolerances& tol) {
  const double constant = heat_trace_constant(delta, c_delta, max_mu_degree(g));
  if (k < 1 || k > g.vertex_count()) throw Error(ErrorCode::kDimensionMismatch, "eigenvalue index out of range");
  const SpectralData data = eigendecomposition(magnetic_laplacian(g), tol);
  EigenvalueBoundReport r{};
  r.k = k;
  r.eigenvalue = data.eigenvalues[k - 1];
  r.bound = delta / (2.0 * std::numbers::e) * std::pow(k / (constant * total_volume(g)), 2.0 / delta);
  r.holds = r.eigenvalue >= r.bound - tol.spectral;
  return r;
}

}  // namespace magneto
