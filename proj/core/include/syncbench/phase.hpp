#pragma once

#include "syncbench/linalg.hpp"
#include "syncbench/types.hpp"

namespace syncbench {

inline constexpr double kDefaultTol = 1e-8;
inline constexpr int kDefaultMaxIter = 200;
inline constexpr int kDefaultMaxSweeps = 200;

// Phase estimate plus the eigensolve that produced it (round_to_vector and
// spectral_init both surface the solver's convergence state this way).
struct RoundedPhases {
  PhaseVector estimate;
  EigResult<Complex> eig;
};

struct PhaseSolve {
  PhaseVector estimate;
  SolveDiagnostics diagnostics;
};

struct LiftedSolve {
  ComplexLifted state;
  SolveDiagnostics diagnostics;
};

// Entrywise phases of the leading eigenvector of the masked data matrix;
// exact zero entries round to 1. Eigensolver trouble shows up in .eig, the
// estimate is returned regardless.
RoundedPhases spectral_init(const ComplexObservation& obs);

// One simultaneous update z_j <- normalize(sum_{k != j} (A o Y)_jk z_k);
// coordinates with a vanishing sum keep their previous value.
PhaseVector gpm_step(const ComplexObservation& obs, const PhaseVector& z);

// Iterates gpm_step until the phase-aligned successive distance
// sqrt(2 (1 - |<z_t, z_{t-1}>| / n)) drops below tol or max_iter is hit.
// objective_trace records z^H (A o Y) z per iterate (z0 first).
PhaseSolve gpm_run(const ComplexObservation& obs, const PhaseVector& z0,
                   int max_iter = kDefaultMaxIter, double tol = kDefaultTol);

// Full simultaneous (Jacobi) update of the lifted state:
// V_j <- normalize(sum_{k != j} (A o conj(Y))_jk V_k), zero sums keep the old
// column. This is the fixed-point map the solver's residual measures.
ComplexLifted lifted_step(const ComplexObservation& obs, const ComplexLifted& V);

// Tr((A o Y) V^H V). The exact value is real; an imaginary residue above
// 1e-9 (relative) means the inputs were not Hermitian and raises.
double sdp_objective(const ComplexObservation& obs, const ComplexLifted& V);

// Sequential (Gauss-Seidel) block-coordinate ascent on the unit-column
// factorization. Each sweep updates columns in index order using current
// values, then evaluates the simultaneous map once to get the fixed-point
// residual (mean column distance between V and its image); exit when that
// residual drops below tol. objective_trace is nondecreasing up to roundoff.
LiftedSolve sdp_solve(const ComplexObservation& obs, const ComplexLifted& V0,
                      int max_sweeps = kDefaultMaxSweeps, double tol = kDefaultTol);

// Same, started from the rank-one embedding of spectral_init (column j =
// conj(z0_j) e1).
LiftedSolve sdp_solve(const ComplexObservation& obs,
                      int max_sweeps = kDefaultMaxSweeps, double tol = kDefaultTol);

// Entrywise phases of the leading eigenvector of a PSD gram matrix (or of
// gram(V), computed here). Zero entries round to 1; a degenerate spectrum
// still yields a valid PhaseVector, the eig residual tells the story.
RoundedPhases round_to_vector(const Eigen::MatrixXcd& gram_matrix);
RoundedPhases round_to_vector(const ComplexLifted& V);

// Fixed point of the gpm_step map from a caller-supplied start; identical
// machinery to gpm_run, kept as its own entry point because callers treat
// the result as the likelihood maximizer's surrogate rather than a descent
// iterate.
PhaseSolve mle_fixed_point(const ComplexObservation& obs, const PhaseVector& z0,
                           int max_iter = kDefaultMaxIter, double tol = kDefaultTol);

}  // namespace syncbench
