#include "syncbench/phase.hpp"

#include "detail/ascent.hpp"

namespace syncbench {

namespace {

// Eigensolver settings for initialization and rounding. 1e-10 on the
// successive-iterate distance leaves the noiseless criteria with orders of
// magnitude to spare; 1000 iterations covers the slowest observed gap at the
// Gershgorin shift.
constexpr double kEigTol = 1e-10;
constexpr int kEigMaxIter = 1000;

PhaseVector round_phases(const Eigen::VectorXcd& v) {
  Eigen::VectorXcd z(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const double mag = std::abs(v[j]);
    z[j] = mag == 0.0 ? Complex(1.0, 0.0) : v[j] / mag;
  }
  return PhaseVector(std::move(z));
}

PhaseVector gpm_step_on(const Eigen::MatrixXcd& D0, const PhaseVector& z) {
  const Eigen::VectorXcd s = D0 * z.entries();
  Eigen::VectorXcd out(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    const double mag = std::abs(s[j]);
    out[j] = mag == 0.0 ? z.entries()[j] : s[j] / mag;
  }
  return PhaseVector(std::move(out));
}

double quadratic_objective(const Eigen::MatrixXcd& D0, const Eigen::VectorXcd& z) {
  return std::real(Complex(z.dot(D0 * z)));
}

PhaseSolve fixed_point_iterate(const ComplexObservation& obs, const PhaseVector& z0,
                               int max_iter, double tol) {
  if (obs.size() != z0.size())
    throw std::invalid_argument("gpm_run: observation/start size mismatch");
  if (max_iter < 1 || !(tol > 0.0))
    throw std::invalid_argument("gpm_run: bad max_iter/tol");
  const Eigen::MatrixXcd D0 = obs.hollowed();
  const double n = static_cast<double>(z0.size());

  PhaseVector z = z0;
  SolveDiagnostics diag;
  diag.objective_trace.push_back(quadratic_objective(D0, z.entries()));
  for (int it = 1; it <= max_iter; ++it) {
    PhaseVector next = gpm_step_on(D0, z);
    const double overlap = std::abs(z.entries().dot(next.entries())) / n;
    const double dist = std::sqrt(std::max(0.0, 2.0 * (1.0 - overlap)));
    z = std::move(next);
    diag.objective_trace.push_back(quadratic_objective(D0, z.entries()));
    diag.iterations = it;
    diag.fixed_point_residual = dist;
    if (dist < tol) {
      diag.converged = true;
      break;
    }
  }
  return {std::move(z), std::move(diag)};
}

}  // namespace

RoundedPhases spectral_init(const ComplexObservation& obs) {
  const EigResult<Complex> eig =
      leading_eigenvector<Complex>(obs.hollowed(), kEigTol, kEigMaxIter, SeedSpec{});
  return {round_phases(eig.vector), eig};
}

PhaseVector gpm_step(const ComplexObservation& obs, const PhaseVector& z) {
  if (obs.size() != z.size())
    throw std::invalid_argument("gpm_step: observation/vector size mismatch");
  return gpm_step_on(obs.hollowed(), z);
}

PhaseSolve gpm_run(const ComplexObservation& obs, const PhaseVector& z0,
                   int max_iter, double tol) {
  return fixed_point_iterate(obs, z0, max_iter, tol);
}

PhaseSolve mle_fixed_point(const ComplexObservation& obs, const PhaseVector& z0,
                           int max_iter, double tol) {
  return fixed_point_iterate(obs, z0, max_iter, tol);
}

ComplexLifted lifted_step(const ComplexObservation& obs, const ComplexLifted& V) {
  if (obs.size() != V.size())
    throw std::invalid_argument("lifted_step: observation/state size mismatch");
  return ComplexLifted(detail::jacobi_image<Complex>(obs.hollowed(), V.columns()));
}

double sdp_objective(const ComplexObservation& obs, const ComplexLifted& V) {
  if (obs.size() != V.size())
    throw std::invalid_argument("sdp_objective: observation/state size mismatch");
  const Eigen::MatrixXcd D0 = obs.hollowed();
  const Complex acc = detail::trace_objective_given<Complex>(V.columns() * D0, V.columns());
  if (std::abs(acc.imag()) > 1e-9 * std::max(1.0, std::abs(acc.real())))
    throw std::invalid_argument("sdp_objective: trace has an imaginary residue; "
                                "inputs are not Hermitian");
  return acc.real();
}

LiftedSolve sdp_solve(const ComplexObservation& obs, const ComplexLifted& V0,
                      int max_sweeps, double tol) {
  if (obs.size() != V0.size())
    throw std::invalid_argument("sdp_solve: observation/start size mismatch");
  const Eigen::MatrixXcd D0 = obs.hollowed();
  Eigen::MatrixXcd V = V0.columns();
  SolveDiagnostics diag = detail::ascent_sweeps<Complex>(D0, V, max_sweeps, tol);
  return {ComplexLifted(std::move(V)), std::move(diag)};
}

LiftedSolve sdp_solve(const ComplexObservation& obs, int max_sweeps, double tol) {
  return sdp_solve(obs, lift(spectral_init(obs).estimate), max_sweeps, tol);
}

RoundedPhases round_to_vector(const Eigen::MatrixXcd& gram_matrix) {
  if (gram_matrix.rows() != gram_matrix.cols())
    throw std::invalid_argument("round_to_vector: matrix must be square");
  const EigResult<Complex> eig =
      leading_eigenvector<Complex>(gram_matrix, kEigTol, kEigMaxIter, SeedSpec{});
  return {round_phases(eig.vector), eig};
}

RoundedPhases round_to_vector(const ComplexLifted& V) {
  return round_to_vector(gram(V));
}

}  // namespace syncbench
