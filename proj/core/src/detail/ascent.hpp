#pragma once

// Shared core of the complex and real lifted solvers. The two models run the
// same formulas; Hermitian symmetry of the hollowed data matrix D0 turns the
// conjugated column sums into plain products: sum_{k != j} conj(D0_jk) V_k =
// (V * D0).col(j).

#include <cassert>
#include <cmath>

#include "syncbench/types.hpp"

namespace syncbench::detail {

inline double real_part(double v) { return v; }
inline double real_part(Complex v) { return v.real(); }

// Tr(D0 V^H V) accumulated as sum_ij conj(V_ij) (V D0)_ij given T = V * D0.
// Returned unreduced so callers can inspect the imaginary residue.
template <class Scalar>
Scalar trace_objective_given(const MatrixX<Scalar>& T, const MatrixX<Scalar>& V) {
  return V.conjugate().cwiseProduct(T).sum();
}

// Simultaneous fixed-point map image and mean column distance to it. Columns
// whose sum vanishes are kept, contributing zero distance.
template <class Scalar>
double mean_residual_given(const MatrixX<Scalar>& T, const MatrixX<Scalar>& V) {
  const Eigen::Index n = V.cols();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double norm = T.col(j).norm();
    if (norm > 0.0) acc += (V.col(j) - T.col(j) / norm).norm();
  }
  return acc / static_cast<double>(n);
}

template <class Scalar>
MatrixX<Scalar> jacobi_image(const MatrixX<Scalar>& D0, const MatrixX<Scalar>& V) {
  MatrixX<Scalar> T = V * D0;
  for (Eigen::Index j = 0; j < T.cols(); ++j) {
    const double norm = T.col(j).norm();
    if (norm > 0.0)
      T.col(j) /= norm;
    else
      T.col(j) = V.col(j);
  }
  return T;
}

// Sequential column sweeps over V (modified in place). Every update solves
// its one-column subproblem exactly, so the objective trace never decreases;
// exit is governed by the simultaneous-map residual evaluated once per
// completed sweep (and once up front, so a fixed-point start costs no sweep).
template <class Scalar>
SolveDiagnostics ascent_sweeps(const MatrixX<Scalar>& D0, MatrixX<Scalar>& V,
                               int max_sweeps, double tol) {
  if (max_sweeps < 1 || !(tol > 0.0))
    throw std::invalid_argument("ascent_sweeps: bad max_sweeps/tol");
  const Eigen::Index n = V.cols();
  SolveDiagnostics diag;

  MatrixX<Scalar> T = V * D0;
  diag.objective_trace.push_back(real_part(trace_objective_given(T, V)));
  diag.fixed_point_residual = mean_residual_given(T, V);
  if (diag.fixed_point_residual < tol) {
    diag.converged = true;
    return diag;
  }

  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (Eigen::Index j = 0; j < n; ++j) {
      VectorX<Scalar> s = V * D0.col(j);
      const double norm = s.norm();
      if (norm > 0.0) {
#ifndef NDEBUG
        // Exact one-column maximization: new local value ||s|| can only beat
        // the old one Re(V_j^H s).
        const double before = real_part(Scalar(V.col(j).dot(s)));
        assert(norm >= before - 1e-9 * (1.0 + std::abs(before)));
#endif
        V.col(j) = s / norm;
      }
    }
    T.noalias() = V * D0;
    diag.objective_trace.push_back(real_part(trace_objective_given(T, V)));
    diag.fixed_point_residual = mean_residual_given(T, V);
    diag.iterations = sweep;
    if (diag.fixed_point_residual < tol) {
      diag.converged = true;
      break;
    }
  }
  return diag;
}

}  // namespace syncbench::detail
