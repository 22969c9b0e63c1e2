// Phase estimators: spectral rounding, projected power iterations, and the
// block-coordinate ascent on the unit-column factorization.

#include <doctest.h>

#include <cmath>

#include "syncbench/linalg.hpp"
#include "syncbench/losses.hpp"
#include "syncbench/phase.hpp"
#include "syncbench/synthgen.hpp"
#include "test_util.hpp"

using namespace syncbench;
using testutil::make_rng;

namespace {

ComplexObservation make_obs(int n, double p, double sigma2, std::uint64_t rep,
                            PhaseVector* truth_out = nullptr) {
  const ModelParams params = ModelParams::from_sigma2(n, p, sigma2);
  const SeedSpec seed{2024, rep};
  PhaseVector z = sample_truth_phase(n, seed);
  ComplexObservation obs = sample_observation(z, params, seed);
  if (truth_out) *truth_out = z;
  return obs;
}

// reference implementation of the simultaneous update, scalar loops only
Eigen::VectorXcd gpm_step_oracle(const Eigen::MatrixXcd& data,
                                 const Eigen::VectorXcd& z) {
  const int n = static_cast<int>(z.size());
  Eigen::VectorXcd out(n);
  for (int j = 0; j < n; ++j) {
    Complex s(0, 0);
    for (int k = 0; k < n; ++k)
      if (k != j) s += data(j, k) * z[k];
    out[j] = (std::abs(s) == 0.0) ? z[j] : s / std::abs(s);
  }
  return out;
}

double quad_objective(const ComplexObservation& obs, const PhaseVector& z) {
  const Eigen::MatrixXcd h = obs.hollowed();
  const Complex v = z.entries().dot(h * z.entries());
  return v.real();
}

}  // namespace

TEST_CASE("spectral estimate is exact on the noiseless complete graph") {
  for (int n : {10, 64}) {
    PhaseVector truth{Eigen::VectorXcd::Ones(2)};
    const ComplexObservation obs = make_obs(n, 1.0, 0.0, 0, &truth);
    const RoundedPhases r = spectral_init(obs);
    CHECK(r.eig.converged);
    CHECK(loss_vector(r.estimate, truth).loss < 1e-10);
    // leading eigenvalue of the hollowed noiseless matrix is n - 1
    CHECK(std::abs(r.eig.value - (n - 1)) < 1e-6);
  }
}

TEST_CASE("spectral estimate handles an isolated vertex") {
  // row 0 carries no edges: its eigenvector entry decays to noise level but
  // the estimate there must still be a valid phase, and the connected part
  // is recovered exactly up to global phase
  const int n = 8;
  const ModelParams params(n, 0.9, 0.0);
  const SeedSpec seed{50, 0};
  const PhaseVector z = sample_truth_phase(n, seed);
  Eigen::MatrixXcd data = Eigen::MatrixXcd::Zero(n, n);
  data.diagonal().setConstant(Complex(1, 0));
  MaskMatrix mask = MaskMatrix::Zero(n, n);
  for (int j = 1; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      mask(j, k) = mask(k, j) = 1;
      data(j, k) = z.entries()[j] * std::conj(z.entries()[k]);
      data(k, j) = std::conj(data(j, k));
    }
  const ComplexObservation obs(std::move(data), std::move(mask), params);
  const RoundedPhases r = spectral_init(obs);
  CHECK(std::abs(std::abs(r.estimate.entries()[0]) - 1.0) < 1e-12);
  Eigen::VectorXcd sub_hat = r.estimate.entries().tail(n - 1);
  Eigen::VectorXcd sub_truth = z.entries().tail(n - 1);
  const Complex s = sub_truth.dot(sub_hat);
  CHECK(std::abs(s) / (n - 1) > 1.0 - 1e-8);
}

TEST_CASE("rounding maps exact zero eigenvector entries to one") {
  // block matrix with an empty first row and no negative Gershgorin shift:
  // the power iterate keeps an exact zero in entry 0, which rounds to 1
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(3, 3);
  G(1, 1) = G(1, 2) = G(2, 1) = G(2, 2) = Complex(1, 0);
  const RoundedPhases r = round_to_vector(G);
  CHECK(r.estimate.entries()[0] == Complex(1.0, 0.0));
  CHECK(std::abs(r.estimate.entries()[1] - r.estimate.entries()[2]) < 1e-10);
}

TEST_CASE("gpm_step fixes the truth on noiseless data and matches the oracle") {
  PhaseVector truth{Eigen::VectorXcd::Ones(2)};
  const ComplexObservation obs = make_obs(12, 1.0, 0.0, 1, &truth);
  const PhaseVector stepped = gpm_step(obs, truth);
  CHECK((stepped.entries() - truth.entries()).cwiseAbs().maxCoeff() < 1e-13);

  // against the scalar-loop oracle on noisy masked data
  PhaseVector t2{Eigen::VectorXcd::Ones(2)};
  const ComplexObservation noisy = make_obs(9, 0.7, 2.0, 2, &t2);
  auto rng = make_rng(40);
  const PhaseVector z = testutil::random_phases(9, rng);
  const Eigen::VectorXcd expected = gpm_step_oracle(noisy.data(), z.entries());
  const PhaseVector got = gpm_step(noisy, z);
  CHECK((got.entries() - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("gpm_step keeps coordinates whose neighborhood sum vanishes") {
  // vertex 0 has no edges, so its update sum is exactly zero
  const int n = 5;
  const ModelParams params(n, 0.5, 0.0);
  Eigen::MatrixXcd data = Eigen::MatrixXcd::Zero(n, n);
  data.diagonal().setConstant(Complex(1, 0));
  MaskMatrix mask = MaskMatrix::Zero(n, n);
  for (int j = 1; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      mask(j, k) = mask(k, j) = 1;
      data(j, k) = data(k, j) = Complex(1, 0);
    }
  const ComplexObservation obs(std::move(data), std::move(mask), params);
  auto rng = make_rng(41);
  const PhaseVector z = testutil::random_phases(n, rng);
  const PhaseVector stepped = gpm_step(obs, z);
  CHECK(stepped.entries()[0] == z.entries()[0]);
}

TEST_CASE("gpm_run converges on noiseless data and certifies a fixed point") {
  PhaseVector truth{Eigen::VectorXcd::Ones(2)};
  const ComplexObservation obs = make_obs(24, 1.0, 0.0, 3, &truth);
  auto rng = make_rng(42);
  // start from a mild perturbation of the truth (inside the basin)
  Eigen::VectorXd jitter(24);
  for (int j = 0; j < 24; ++j) jitter[j] = 0.2 * rng.normal();
  Eigen::VectorXcd start(24);
  for (int j = 0; j < 24; ++j)
    start[j] = truth.entries()[j] * std::polar(1.0, jitter[j]);

  const double tol = 1e-10;
  const PhaseSolve s = gpm_run(obs, PhaseVector{start}, 500, tol);
  CHECK(s.diagnostics.converged);
  CHECK(loss_vector(s.estimate, truth).loss < 1e-10);
  CHECK(s.diagnostics.fixed_point_residual < tol);

  // converged exit is a fixed point: one more step barely moves any entry.
  // The exit metric averages over coordinates, so the per-entry move is only
  // controlled up to a sqrt(n) conversion factor.
  const PhaseVector extra = gpm_step(obs, s.estimate);
  CHECK((extra.entries() - s.estimate.entries()).cwiseAbs().maxCoeff() <
        std::sqrt(24.0) * tol);

  // the quadratic objective never decreased along the run
  REQUIRE(s.diagnostics.objective_trace.size() >= 2);
  for (std::size_t i = 1; i < s.diagnostics.objective_trace.size(); ++i)
    CHECK(s.diagnostics.objective_trace[i] >=
          s.diagnostics.objective_trace[i - 1] -
              1e-9 * std::abs(s.diagnostics.objective_trace[i - 1]));
}

TEST_CASE("gpm_run objective trace starts at the initial iterate") {
  PhaseVector truth{Eigen::VectorXcd::Ones(2)};
  const ComplexObservation obs = make_obs(10, 1.0, 4.0, 4, &truth);
  auto rng = make_rng(43);
  const PhaseVector z0 = testutil::random_phases(10, rng);
  const PhaseSolve s = gpm_run(obs, z0, 50, 1e-8);
  REQUIRE(!s.diagnostics.objective_trace.empty());
  CHECK(s.diagnostics.objective_trace.front() ==
        doctest::Approx(quad_objective(obs, z0)).epsilon(1e-12));
}

TEST_CASE("lifted_step on the rank-one embedding reproduces gpm_step") {
  auto rng = make_rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_u64() % 5);
    const double sigma2 = 0.5 + 0.2 * static_cast<double>(trial % 5);
    PhaseVector truth{Eigen::VectorXcd::Ones(2)};
    const ComplexObservation obs =
        make_obs(n, 0.8, sigma2, 100 + static_cast<std::uint64_t>(trial), &truth);
    const PhaseVector z = testutil::random_phases(n, rng);

    const ComplexLifted V = lift(z);
    const ComplexLifted W = lifted_step(obs, V);
    const PhaseVector stepped = gpm_step(obs, z);
    // column j of the image is conj(stepped_j) e1
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(n);
      expected[0] = std::conj(stepped.entries()[j]);
      CHECK((W.columns().col(j) - expected).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("lifted_step matches a naive per-column oracle") {
  auto rng = make_rng(45);
  PhaseVector truth{Eigen::VectorXcd::Ones(2)};
  const ComplexObservation obs = make_obs(7, 0.9, 1.5, 5, &truth);
  const ComplexLifted V = testutil::random_lifted(7, rng);
  const ComplexLifted W = lifted_step(obs, V);
  const Eigen::MatrixXcd h = obs.hollowed();
  for (int j = 0; j < 7; ++j) {
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(7);
    for (int k = 0; k < 7; ++k) s += std::conj(h(j, k)) * V.columns().col(k);
    const double norm = s.norm();
    const Eigen::VectorXcd expected = norm == 0.0 ? V.columns().col(j)
                                                  : Eigen::VectorXcd(s / norm);
    CHECK((W.columns().col(j) - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("sdp_objective: exact values and the double-loop oracle") {
  PhaseVector truth{Eigen::VectorXcd::Ones(2)};
  const ComplexObservation obs = make_obs(9, 1.0, 0.0, 6, &truth);
  // rank-one embedding of the truth attains n (n - 1) on the complete graph
  CHECK(sdp_objective(obs, lift(truth)) == doctest::Approx(9.0 * 8.0));

  // orthonormal columns produce a zero objective on hollowed data
  const ComplexLifted id{Eigen::MatrixXcd::Identity(9, 9)};
  CHECK(std::abs(sdp_objective(obs, id)) < 1e-12);

  auto rng = make_rng(46);
  const ComplexLifted V = testutil::random_lifted(9, rng);
  const Eigen::MatrixXcd h = obs.hollowed();
  Complex oracle(0, 0);
  for (int j = 0; j < 9; ++j)
    for (int k = 0; k < 9; ++k)
      oracle += h(k, j) * V.columns().col(j).dot(V.columns().col(k));
  CHECK(std::abs(sdp_objective(obs, V) - oracle.real()) < 1e-12);
  CHECK(std::abs(oracle.imag()) < 1e-12);
}

TEST_CASE("sdp_solve from the spectral lift is exact on noiseless data") {
  PhaseVector truth{Eigen::VectorXcd::Ones(2)};
  const ComplexObservation obs = make_obs(16, 1.0, 0.0, 7, &truth);
  const LiftedSolve s = sdp_solve(obs);
  CHECK(s.diagnostics.converged);
  CHECK(s.diagnostics.fixed_point_residual < kDefaultTol);

  const Eigen::MatrixXcd G = gram(s.state);
  CHECK(loss_matrix(G, truth) < 1e-10);

  // the gram matrix is essentially rank one
  const EigResult<Complex> top = leading_eigenvector(G, 1e-10, 1000, SeedSpec{1, 0});
  const double lam2 = second_eigenvalue(G, top, 1e-8, 1000, SeedSpec{1, 1});
  CHECK(std::abs(lam2) < 1e-6 * 16);

  // objective is nondecreasing over sweeps (the exact spectral start may
  // already satisfy the exit test, leaving a single entry)
  const auto& trace = s.diagnostics.objective_trace;
  REQUIRE(trace.size() >= 1);
  for (std::size_t i = 1; i < trace.size(); ++i)
    CHECK(trace[i] >= trace[i - 1] - 1e-9 * std::abs(trace[i - 1]));

  // converged state is a fixed point of the simultaneous map too
  const ComplexLifted image = lifted_step(obs, s.state);
  const double obj_before = sdp_objective(obs, s.state);
  const double obj_after = sdp_objective(obs, image);
  CHECK(std::abs(obj_after - obj_before) < 1e-8 * std::abs(obj_before));
}

TEST_CASE("sdp_solve ascends and certifies from a random full-rank start") {
  auto rng = make_rng(47);
  PhaseVector truth{Eigen::VectorXcd::Ones(2)};
  const ComplexObservation obs = make_obs(20, 1.0, 1.0, 8, &truth);
  const ComplexLifted V0 = testutil::random_lifted(20, rng);
  const LiftedSolve s = sdp_solve(obs, V0, 500, 1e-9);
  CHECK(s.diagnostics.converged);
  CHECK(s.diagnostics.fixed_point_residual < 1e-9);

  const auto& trace = s.diagnostics.objective_trace;
  REQUIRE(trace.size() >= 3);
  for (std::size_t i = 1; i < trace.size(); ++i)
    CHECK(trace[i] >= trace[i - 1] - 1e-9 * std::abs(trace[i - 1]));

  // fixed point: one more sweep barely moves the objective
  const ComplexLifted image = lifted_step(obs, s.state);
  CHECK(std::abs(sdp_objective(obs, image) - sdp_objective(obs, s.state)) <=
        1e-8 * std::abs(sdp_objective(obs, s.state)));
}

TEST_CASE("round_to_vector recovers phases from a rank-one gram matrix") {
  auto rng = make_rng(48);
  const int n = 10;
  const PhaseVector z = testutil::random_phases(n, rng);
  const Eigen::MatrixXcd G = z.entries() * z.entries().adjoint();
  const RoundedPhases r = round_to_vector(G);
  CHECK(r.eig.converged);
  CHECK(loss_vector(r.estimate, z).loss < 1e-10);
}

TEST_CASE("round_to_vector on the identity still returns valid phases") {
  const RoundedPhases r = round_to_vector(Eigen::MatrixXcd::Identity(6, 6));
  for (int j = 0; j < 6; ++j)
    CHECK(std::abs(std::abs(r.estimate.entries()[j]) - 1.0) < 1e-12);
}

TEST_CASE("mle_fixed_point from the truth stays on noiseless data") {
  PhaseVector truth{Eigen::VectorXcd::Ones(2)};
  const ComplexObservation obs = make_obs(14, 1.0, 0.0, 9, &truth);
  const PhaseSolve s = mle_fixed_point(obs, truth, 100, 1e-10);
  CHECK(s.diagnostics.converged);
  CHECK(loss_vector(s.estimate, truth).loss < 1e-12);
  CHECK(s.diagnostics.iterations <= 2);
}

TEST_CASE("estimates land within the spectral basin at moderate noise") {
  // n = 300, complete graph, sigma^2 = 9: the spectral start followed by the
  // projected power method should essentially always do well
  const int n = 300;
  const int reps = 100;
  int good = 0;
  for (int rep = 0; rep < reps; ++rep) {
    const ModelParams params = ModelParams::from_sigma2(n, 1.0, 9.0);
    const SeedSpec seed{7777, static_cast<std::uint64_t>(rep)};
    const PhaseVector z = sample_truth_phase(n, seed);
    const ComplexObservation obs = sample_observation(z, params, seed);
    const RoundedPhases init = spectral_init(obs);
    const PhaseSolve s = gpm_run(obs, init.estimate);
    if (loss_vector(s.estimate, z).loss < 1.0 / 16.0) ++good;
  }
  CHECK(good >= 95);
}
