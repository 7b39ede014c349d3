#pragma once

#include <vector>

#include <Eigen/Dense>

#include "magneto/functional.hpp"
#include "magneto/graph.hpp"
#include "magneto/tolerances.hpp"

namespace magneto {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum class SignatureMode { kSigned, kUnsigned };

/// Dense complex matrix checked to be Hermitian on construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix m, double tol = 1e-12);

  int dimension() const noexcept { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  ComplexMatrix m_;
};

struct SpectralData {
  Eigen::VectorXd eigenvalues;  // ascending
  ComplexMatrix eigenvectors;   // orthonormal columns
  double residual;              // max_j ||H v_j - lambda_j v_j||
};

struct HeatKernel {
  double t;
  ComplexMatrix matrix;
};

/// D_mu^{-1/2} (D - A^s) D_mu^{-1/2}; kUnsigned drops the signature.
HermitianMatrix magnetic_laplacian(const MagneticGraph& g, SignatureMode mode = SignatureMode::kSigned);

/// Full spectrum of H through the real symmetric embedding
/// [[Re H, -Im H], [Im H, Re H]], whose eigenvalues are those of H doubled.
SpectralData eigendecomposition(const HermitianMatrix& h, const Tolerances& tol = default_tolerances());

/// sum_j phi(lambda_j) v_j v_j^*.
template <class F>
ComplexMatrix spectral_calculus(const SpectralData& data, F&& phi) {
  ComplexVector weights(data.eigenvalues.size());
  for (Eigen::Index j = 0; j < data.eigenvalues.size(); ++j) weights[j] = phi(data.eigenvalues[j]);
  return data.eigenvectors * weights.asDiagonal() * data.eigenvectors.adjoint();
}

HeatKernel heat_kernel(const SpectralData& data, double t);
HeatKernel heat_kernel(const MagneticGraph& g, double t, SignatureMode mode = SignatureMode::kSigned,
                       const Tolerances& tol = default_tolerances());

struct HeatKernelReport {
  bool hermitian;
  double hermitian_error;
  bool semigroup;
  double semigroup_error;
  bool delta_action;
  double delta_action_error;
  bool heat_equation;
  double heat_equation_residual;
  double heat_equation_tolerance;
  bool unsigned_nonnegative;
  double min_unsigned_entry;
  bool fixes_sqrt_mu;
  double sqrt_mu_error;

  bool all() const {
    return hermitian && semigroup && delta_action && heat_equation && unsigned_nonnegative && fixes_sqrt_mu;
  }
};

/// Hermitian symmetry, K_t = K_a K_{t-a}, action on delta functions, the heat
/// equation by finite differences, and K_t >= 0 with K_t sqrt(mu) = sqrt(mu)
/// for the unsigned kernel.
HeatKernelReport heat_kernel_properties_check(const MagneticGraph& g, double t, double a,
                                              const Tolerances& tol = default_tolerances());

/// g = (Delta + lambda I)^{-1} f for the unsigned Laplacian.
Eigen::VectorXd unsigned_resolvent(const MagneticGraph& g, double lambda, const Eigen::VectorXd& f);

/// For f >= 0, checks that (Delta + lambda I)^{-1} f >= -tol.pointwise.
bool positivity_check(const MagneticGraph& g, double lambda, const Eigen::VectorXd& f,
                      const Tolerances& tol = default_tolerances());

/// |f| Delta|f| <= Re(Delta_sigma f * conj f) at every vertex.
bool kato_check(const MagneticGraph& g, const VertexFunction& f, const Tolerances& tol = default_tolerances());

/// |e^{-t Delta_sigma} f| <= e^{-t Delta} |f| pointwise, and
/// |K^sigma_t(u, v)| <= K_t(u, v) entrywise.
bool domination_check(const MagneticGraph& g, double t, const VertexFunction& f,
                      const Tolerances& tol = default_tolerances());

/// C_delta = (72 delta d_mu)^{delta/2} / c_delta^delta * ((delta-1)/(delta-2))^delta.
double heat_trace_constant(double delta, double c_delta, double d_mu);

struct TraceBoundRow {
  double t;
  double trace;  // sum_j e^{-lambda_j t}
  double bound;  // C_delta vol / t^{delta/2}
  bool diagonal_ok;
  bool holds;
};

struct TraceBoundReport {
  double constant;
  std::vector<TraceBoundRow> rows;
  bool holds;
};

TraceBoundReport trace_bound_check(const MagneticGraph& g, double delta, double c_delta,
                                   const std::vector<double>& t_grid, const Tolerances& tol = default_tolerances());

struct EigenvalueBoundReport {
  int k;
  double eigenvalue;
  double bound;  // (delta / 2e) (k / (C_delta vol))^{2/delta}
  bool holds;
};

EigenvalueBoundReport eigenvalue_lower_bound_check(const MagneticGraph& g, double delta, double c_delta, int k,
                                                   const Tolerances& tol = default_tolerances());

}  // namespace magneto
