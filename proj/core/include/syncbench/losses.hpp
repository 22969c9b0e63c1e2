#pragma once

#include "syncbench/types.hpp"

namespace syncbench {

// Alignment-minimizing squared error between phase vectors,
//   min over |a|=1 of (1/n) sum_j |zhat_j - z_j a|^2  =  2 (1 - |z^H zhat| / n),
// with aligner a = (sum_j conj(z_j) zhat_j) / |...|. Zero inner product means
// every alignment ties: loss 2, aligner 1. Range [0, 2].
AlignmentResult loss_vector(const PhaseVector& z_hat, const PhaseVector& z_ref);

// Lifted analogue over unit vectors a:
//   min over ||a||=1 of (1/n) sum_j ||V_j - conj(z_j) a||^2  =  2 (1 - ||m||),
// where m = (1/n) sum_j z_j V_j and the minimizer is a = m / ||m||. m = 0
// leaves the aligner undefined (flagged) and the loss exactly 2.
LiftedAlignment<Complex> loss_lifted(const ComplexLifted& V, const PhaseVector& z_ref);
LiftedAlignment<double> loss_lifted(const RealLifted& V, const SignVector& z_ref);

// Normalized squared Frobenius distance (1/n^2) ||Z_hat - z z^H||_F^2.
// Alignment-free: the reference rank-one matrix absorbs global phase.
double loss_matrix(const Eigen::MatrixXcd& z_hat_matrix, const PhaseVector& z_ref);
double loss_matrix(const Eigen::MatrixXd& z_hat_matrix, const SignVector& z_ref);

// Sign-vector loss min_{a = +-1} (1/n) sum_j |zhat_j - a z_j|^2
// = 4 min(h, 1-h) with h the disagreement fraction.
double loss_z2(const SignVector& z_hat, const SignVector& z_ref);

// Audits the normalization-perturbation bound
//   || x/||x|| - y ||^2  <=  ( ||(I - y y^H) x||^2 + Im(y^H x)^2 ) / Re(y^H x)^2
// for unit y with Re(y^H x) > 0 (precondition, violations throw). The scalar
// overload is the y = 1 case, the real overload drops the Im term. A 1e-12
// absolute slack absorbs roundoff when both sides are ~0. Test utility.
bool ratio_bound_check(Complex x);
bool ratio_bound_check(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);
bool ratio_bound_check(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace syncbench
