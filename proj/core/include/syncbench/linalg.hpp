#pragma once

#include "syncbench/types.hpp"

namespace syncbench {

// Outcome of a power-iteration eigensolve. `residual` is ||M v - value v||
// recomputed from scratch at exit; residual_trace holds the residual at
// fixed checkpoints (every kEigCheckpoint iterations) for monotonicity
// diagnostics. Non-convergence is reported through `converged`, never by
// throwing: the best iterate is still returned.
template <class Scalar>
struct EigResult {
  double value = 0.0;
  VectorX<Scalar> vector;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> residual_trace;
};

inline constexpr int kEigCheckpoint = 25;

// Dense product M x with a square-shape check. Thin wrapper so every caller
// goes through one audited entry point.
Eigen::VectorXcd matvec(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& x);
Eigen::VectorXd matvec(const Eigen::MatrixXd& M, const Eigen::VectorXd& x);

// Gram matrix V^H V of a unit-column state; Hermitian PSD with unit diagonal
// up to roundoff.
Eigen::MatrixXcd gram(const ComplexLifted& V);
Eigen::MatrixXd gram(const RealLifted& V);

// Leading eigenpair of a Hermitian/symmetric M by power iteration on
// M + c I, where c = max(0, -(Gershgorin lower bound)) makes the spectrum
// nonnegative so the top eigenvalue of M wins in magnitude. The start vector
// is drawn deterministically from `seed`; if progress stagnates far from
// convergence (start nearly orthogonal to the leading space) the iteration
// reseeds once. Exit test is the phase-invariant successive distance
// sqrt(2 - 2 |<x_t, x_{t-1}>|) < tol.
template <class Scalar>
EigResult<Scalar> leading_eigenvector(const MatrixX<Scalar>& M, double tol,
                                      int max_iter, const SeedSpec& seed);

// Second-largest eigenvalue estimate via one deflation step: power iteration
// on M - value * v v^H using the leading pair already computed. Used by the
// rank-one recovery diagnostics.
template <class Scalar>
double second_eigenvalue(const MatrixX<Scalar>& M, const EigResult<Scalar>& top,
                         double tol, int max_iter, const SeedSpec& seed);

}  // namespace syncbench
