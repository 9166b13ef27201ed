#pragma once

#include "aac/mat.hpp"

namespace aac {

/**
 * Solve the continuous Lyapunov equation  Acl^T P + P Acl = -Q  for P.
 *
 * Method: Kronecker vectorization, (I (x) Acl^T + Acl^T (x) I) vec(P) =
 * -vec(Q), solved by Gaussian elimination with partial pivoting. Intended
 * for n <= 10.
 *
 * Q must be symmetric positive definite. The returned P is symmetric,
 * satisfies ||Acl^T P + P Acl + Q||_inf <= 1e-9 ||Q||_inf, and has all
 * leading principal minors positive (checked with tolerance 1e-10).
 *
 * Throws SingularSystem when the Kronecker system is numerically singular
 * (Acl not Hurwitz, or a pair of eigenvalues sums to ~0), and
 * NotPositiveDefinite when the solution fails the minor test or the
 * residual bound.
 */
Mat solve_lyapunov(const Mat& acl, const Mat& q);

/// ||Acl^T P + P Acl + Q||_inf, the defect of a candidate solution.
double lyapunov_residual(const Mat& acl, const Mat& p, const Mat& q);

/// Leading-principal-minor test with absolute tolerance `tol`.
bool is_positive_definite(const Mat& m, double tol = 1e-10);

}  // namespace aac
