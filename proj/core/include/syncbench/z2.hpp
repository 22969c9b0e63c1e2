#pragma once

#include "syncbench/linalg.hpp"
#include "syncbench/types.hpp"

namespace syncbench {

// SolveDiagnostics plus the per-coordinate noise diagnostic
//   U_j = sigma / ((n-1) p) * sum_{k != j} z*_k A_jk W_jk,
// which only synthetic callers can fill (it needs the true noise); solvers
// leave u_stats empty.
struct Z2Diagnostics : SolveDiagnostics {
  Eigen::VectorXd u_stats;
  int exceed_count(double threshold) const {
    int c = 0;
    for (Eigen::Index j = 0; j < u_stats.size(); ++j)
      if (std::abs(u_stats[j]) > threshold) ++c;
    return c;
  }
};

struct RoundedSigns {
  SignVector estimate;
  EigResult<double> eig;
};

struct Z2Solve {
  SignVector estimate;
  SolveDiagnostics diagnostics;
};

struct Z2LiftedSolve {
  RealLifted state;
  Z2Diagnostics diagnostics;
};

// Signs of the leading eigenvector of the masked data matrix; zero entries
// round to +1. Real mirror of spectral_init.
RoundedSigns spectral_init_z2(const RealObservation& obs);

// One simultaneous update z_j <- sign(sum_{k != j} (A o Y)_jk z_k);
// coordinates with a vanishing sum keep their previous sign.
SignVector gpm_step_z2(const RealObservation& obs, const SignVector& z);

// Iterates gpm_step_z2 until the sign vector repeats (a true fixed point;
// the simultaneous map can two-cycle, which shows up as converged = false at
// the cap). objective_trace records z^T (A o Y) z.
Z2Solve gpm_run_z2(const RealObservation& obs, const SignVector& z0,
                   int max_iter = 200);

// Sequential block-coordinate ascent on the real unit-column factorization,
// same sweep/residual/exit contract as the complex solver.
Z2LiftedSolve sdp_solve_z2(const RealObservation& obs, const RealLifted& V0,
                           int max_sweeps = 200, double tol = 1e-8);

// Same, started from the rank-one embedding of spectral_init_z2.
Z2LiftedSolve sdp_solve_z2(const RealObservation& obs, int max_sweeps = 200,
                           double tol = 1e-8);

// Signs of the leading eigenvector of a PSD gram matrix (or gram(V)).
RoundedSigns round_to_signs(const Eigen::MatrixXd& gram_matrix);
RoundedSigns round_to_signs(const RealLifted& V);

// True iff gram(V_hat) collapsed onto the truth: matrix loss below 1e-10 and
// second eigenvalue below 1e-6 * n.
bool exact_recovery(const RealLifted& V_hat, const SignVector& z_star);

// The U_j diagnostic above. `noise_W` must be the symmetric ground-truth
// noise (synthetic runs only); requesting it without one is a caller error.
Eigen::VectorXd u_statistic(const MaskMatrix& mask, const Eigen::MatrixXd& noise_W,
                            const SignVector& z_star, const ModelParams& params);

}  // namespace syncbench
