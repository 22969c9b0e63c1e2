#include "syncbench/types.hpp"

namespace syncbench {

ComplexLifted lift(const PhaseVector& z) {
  const Eigen::Index n = z.size();
  Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    cols(0, j) = std::conj(z.entries()[j]);
  return ComplexLifted(std::move(cols));
}

RealLifted lift(const SignVector& z) {
  const Eigen::Index n = z.size();
  Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) cols(0, j) = z.entries()[j];
  return RealLifted(std::move(cols));
}

}  // namespace syncbench
