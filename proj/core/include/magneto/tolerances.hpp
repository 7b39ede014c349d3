#pragma once

namespace magneto {

/// Numerical tolerances shared by every module. Acceptance tests construct a
/// tightened copy; library entry points take one by const reference.
struct Tolerances {
  // Group element comparisons on S^1 (angles in radians).
  double angle = 1e-12;
  // Strict-improvement threshold for minimisation (relative to max(1, value)).
  double improvement = 1e-12;
  // Complex-number comparisons in the functional module.
  double complex_abs = 1e-12;
  // Slack on the satisfied flag of Sobolev checks.
  double sobolev_slack = 1e-9;
  // Hermitian symmetry of input matrices.
  double hermitian = 1e-12;
  // Relative tolerance for pairing eigenvalues of the real 2N embedding.
  double eigen_pairing = 1e-9;
  // Residual, orthonormality and spectral envelope checks.
  double spectral = 1e-9;
  // Semigroup and reconstruction checks on heat kernels.
  double heat_kernel = 1e-9;
  // Centered-difference step and relative tolerance for the heat equation.
  double heat_fd_step = 1e-5;
  double heat_fd_rel = 1e-6;
  // Pointwise slack for positivity, Kato and domination checks.
  double pointwise = 1e-10;
  // Entrywise nonnegativity of the unsigned heat kernel.
  double kernel_nonneg = 1e-12;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace magneto
