#pragma once

// Deterministic random inputs for the test suites. Everything funnels
// through StreamRng so reruns are bit-identical.

#include <Eigen/Dense>

#include "syncbench/rng.hpp"
#include "syncbench/types.hpp"

namespace testutil {

using namespace syncbench;

inline StreamRng make_rng(std::uint64_t salt) {
  return StreamRng(SeedSpec{0xABCDEF, salt}, 77);
}

inline Eigen::VectorXcd random_complex_vector(int n, StreamRng& rng) {
  Eigen::VectorXcd v(n);
  for (int j = 0; j < n; ++j) v[j] = Complex(rng.normal(), rng.normal());
  return v;
}

inline Eigen::VectorXd random_real_vector(int n, StreamRng& rng) {
  Eigen::VectorXd v(n);
  for (int j = 0; j < n; ++j) v[j] = rng.normal();
  return v;
}

inline PhaseVector random_phases(int n, StreamRng& rng) {
  Eigen::VectorXd theta(n);
  for (int j = 0; j < n; ++j) theta[j] = 6.283185307179586 * rng.uniform01();
  return PhaseVector::from_angles(theta);
}

inline SignVector random_signs(int n, StreamRng& rng) {
  Eigen::VectorXd z(n);
  for (int j = 0; j < n; ++j) z[j] = rng.bernoulli(0.5) ? 1.0 : -1.0;
  return SignVector(std::move(z));
}

inline Eigen::VectorXcd random_unit_complex(int n, StreamRng& rng) {
  Eigen::VectorXcd v = random_complex_vector(n, rng);
  return v / v.norm();
}

inline Eigen::VectorXd random_unit_real(int n, StreamRng& rng) {
  Eigen::VectorXd v = random_real_vector(n, rng);
  return v / v.norm();
}

// Unit-column state with independent random columns (full rank w.p. 1).
inline ComplexLifted random_lifted(int n, StreamRng& rng) {
  Eigen::MatrixXcd V(n, n);
  for (int j = 0; j < n; ++j) V.col(j) = random_unit_complex(n, rng);
  return ComplexLifted(std::move(V));
}

inline RealLifted random_lifted_real(int n, StreamRng& rng) {
  Eigen::MatrixXd V(n, n);
  for (int j = 0; j < n; ++j) V.col(j) = random_unit_real(n, rng);
  return RealLifted(std::move(V));
}

inline Eigen::MatrixXcd random_hermitian(int n, StreamRng& rng) {
  Eigen::MatrixXcd M(n, n);
  for (int j = 0; j < n; ++j) {
    M(j, j) = Complex(rng.normal(), 0.0);
    for (int k = j + 1; k < n; ++k) {
      M(j, k) = Complex(rng.normal(), rng.normal());
      M(k, j) = std::conj(M(j, k));
    }
  }
  return M;
}

inline Eigen::MatrixXd random_symmetric(int n, StreamRng& rng) {
  Eigen::MatrixXd M(n, n);
  for (int j = 0; j < n; ++j) {
    M(j, j) = rng.normal();
    for (int k = j + 1; k < n; ++k) {
      M(j, k) = rng.normal();
      M(k, j) = M(j, k);
    }
  }
  return M;
}

}  // namespace testutil
