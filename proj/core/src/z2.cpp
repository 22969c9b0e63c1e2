#include "syncbench/z2.hpp"

#include "detail/ascent.hpp"

namespace syncbench {

namespace {

constexpr double kEigTol = 1e-10;
constexpr int kEigMaxIter = 1000;

SignVector round_signs(const Eigen::VectorXd& v) {
  Eigen::VectorXd z(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) z[j] = v[j] < 0.0 ? -1.0 : 1.0;
  return SignVector(std::move(z));
}

SignVector gpm_step_on(const Eigen::MatrixXd& D0, const SignVector& z) {
  const Eigen::VectorXd s = D0 * z.entries();
  Eigen::VectorXd out(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (s[j] > 0.0)
      out[j] = 1.0;
    else if (s[j] < 0.0)
      out[j] = -1.0;
    else
      out[j] = z.entries()[j];
  }
  return SignVector(std::move(out));
}

}  // namespace

RoundedSigns spectral_init_z2(const RealObservation& obs) {
  const EigResult<double> eig =
      leading_eigenvector<double>(obs.hollowed(), kEigTol, kEigMaxIter, SeedSpec{});
  return {round_signs(eig.vector), eig};
}

SignVector gpm_step_z2(const RealObservation& obs, const SignVector& z) {
  if (obs.size() != z.size())
    throw std::invalid_argument("gpm_step_z2: observation/vector size mismatch");
  return gpm_step_on(obs.hollowed(), z);
}

Z2Solve gpm_run_z2(const RealObservation& obs, const SignVector& z0, int max_iter) {
  if (obs.size() != z0.size())
    throw std::invalid_argument("gpm_run_z2: observation/start size mismatch");
  if (max_iter < 1) throw std::invalid_argument("gpm_run_z2: bad max_iter");
  const Eigen::MatrixXd D0 = obs.hollowed();
  const double n = static_cast<double>(z0.size());

  SignVector z = z0;
  SolveDiagnostics diag;
  diag.objective_trace.push_back(z.entries().dot(D0 * z.entries()));
  for (int it = 1; it <= max_iter; ++it) {
    SignVector next = gpm_step_on(D0, z);
    // Signs are discrete: a fixed point is an exact repeat. A simultaneous
    // sign update can two-cycle, which ends as converged = false at the cap.
    const int flips =
        static_cast<int>(((next.entries() - z.entries()).cwiseAbs().sum()) / 2.0);
    z = std::move(next);
    diag.objective_trace.push_back(z.entries().dot(D0 * z.entries()));
    diag.iterations = it;
    diag.fixed_point_residual = 2.0 * static_cast<double>(flips) / n;
    if (flips == 0) {
      diag.converged = true;
      break;
    }
  }
  return {std::move(z), std::move(diag)};
}

Z2LiftedSolve sdp_solve_z2(const RealObservation& obs, const RealLifted& V0,
                           int max_sweeps, double tol) {
  if (obs.size() != V0.size())
    throw std::invalid_argument("sdp_solve_z2: observation/start size mismatch");
  const Eigen::MatrixXd D0 = obs.hollowed();
  Eigen::MatrixXd V = V0.columns();
  Z2Diagnostics diag;
  static_cast<SolveDiagnostics&>(diag) =
      detail::ascent_sweeps<double>(D0, V, max_sweeps, tol);
  return {RealLifted(std::move(V)), std::move(diag)};
}

Z2LiftedSolve sdp_solve_z2(const RealObservation& obs, int max_sweeps, double tol) {
  return sdp_solve_z2(obs, lift(spectral_init_z2(obs).estimate), max_sweeps, tol);
}

RoundedSigns round_to_signs(const Eigen::MatrixXd& gram_matrix) {
  if (gram_matrix.rows() != gram_matrix.cols())
    throw std::invalid_argument("round_to_signs: matrix must be square");
  const EigResult<double> eig =
      leading_eigenvector<double>(gram_matrix, kEigTol, kEigMaxIter, SeedSpec{});
  return {round_signs(eig.vector), eig};
}

RoundedSigns round_to_signs(const RealLifted& V) { return round_to_signs(gram(V)); }

bool exact_recovery(const RealLifted& V_hat, const SignVector& z_star) {
  if (V_hat.size() != z_star.size())
    throw std::invalid_argument("exact_recovery: state/truth size mismatch");
  const Eigen::MatrixXd G = gram(V_hat);
  const Eigen::VectorXd& z = z_star.entries();
  const double n = static_cast<double>(z.size());
  const double mloss = (G - z * z.transpose()).squaredNorm() / (n * n);
  if (mloss >= 1e-10) return false;
  const EigResult<double> top =
      leading_eigenvector<double>(G, kEigTol, kEigMaxIter, SeedSpec{});
  const double lambda2 = second_eigenvalue<double>(G, top, kEigTol, kEigMaxIter,
                                                   SeedSpec{0, 1});
  return lambda2 < 1e-6 * n;
}

Eigen::VectorXd u_statistic(const MaskMatrix& mask, const Eigen::MatrixXd& noise_W,
                            const SignVector& z_star, const ModelParams& params) {
  const Eigen::Index n = params.n;
  if (noise_W.size() == 0)
    throw std::invalid_argument(
        "u_statistic: ground-truth noise required (synthetic runs only)");
  if (mask.rows() != n || mask.cols() != n || noise_W.rows() != n ||
      noise_W.cols() != n || z_star.size() != n)
    throw std::invalid_argument("u_statistic: dimension mismatch");
  const double scale = params.sigma / ((static_cast<double>(n) - 1.0) * params.p);
  Eigen::VectorXd u(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < n; ++k)
      if (k != j && mask(j, k)) acc += z_star.entries()[k] * noise_W(j, k);
    u[j] = scale * acc;
  }
  return u;
}

}  // namespace syncbench
