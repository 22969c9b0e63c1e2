#include "syncbench/losses.hpp"

namespace syncbench {

namespace {

void check_same_size(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// Clamps the tiny negative values 2(1 - |s|/n) can produce when |s|/n lands
// a few ulp above 1.
double clamp_loss(double loss) { return loss < 0.0 ? 0.0 : loss; }

template <class Scalar>
double lifted_loss_impl(const LiftedState<Scalar>& V, const VectorX<Scalar>& z,
                        VectorX<Scalar>& aligner, bool& defined) {
  const Eigen::Index n = z.size();
  check_same_size(V.size(), n, "loss_lifted");
  // m = (1/n) sum_j z_j V_j; the minimizing unit vector is m's direction.
  VectorX<Scalar> m = (V.columns() * z) / static_cast<double>(n);
  const double norm = m.norm();
  if (norm == 0.0) {
    defined = false;
    aligner = VectorX<Scalar>();
    return 2.0;
  }
  defined = true;
  aligner = m / norm;
  return clamp_loss(2.0 * (1.0 - norm));
}

template <class ScalarMat, class ScalarVec>
double matrix_loss_impl(const MatrixX<ScalarMat>& Z, const VectorX<ScalarVec>& z) {
  const Eigen::Index n = z.size();
  if (Z.rows() != n || Z.cols() != n)
    throw std::invalid_argument("loss_matrix: dimension mismatch");
  return (Z - (z * z.adjoint()).template cast<ScalarMat>()).squaredNorm() /
         (static_cast<double>(n) * static_cast<double>(n));
}

}  // namespace

AlignmentResult loss_vector(const PhaseVector& z_hat, const PhaseVector& z_ref) {
  check_same_size(z_hat.size(), z_ref.size(), "loss_vector");
  const Complex s = z_ref.entries().dot(z_hat.entries());  // sum conj(z_j) zhat_j
  const double mag = std::abs(s);
  const double n = static_cast<double>(z_hat.size());
  if (mag == 0.0) return {2.0, Complex(1.0, 0.0)};
  return {clamp_loss(2.0 * (1.0 - mag / n)), s / mag};
}

LiftedAlignment<Complex> loss_lifted(const ComplexLifted& V, const PhaseVector& z_ref) {
  LiftedAlignment<Complex> out;
  out.loss = lifted_loss_impl<Complex>(V, z_ref.entries(), out.aligner,
                                       out.aligner_defined);
  return out;
}

LiftedAlignment<double> loss_lifted(const RealLifted& V, const SignVector& z_ref) {
  LiftedAlignment<double> out;
  out.loss = lifted_loss_impl<double>(V, z_ref.entries(), out.aligner,
                                      out.aligner_defined);
  return out;
}

double loss_matrix(const Eigen::MatrixXcd& z_hat_matrix, const PhaseVector& z_ref) {
  return matrix_loss_impl<Complex, Complex>(z_hat_matrix, z_ref.entries());
}

double loss_matrix(const Eigen::MatrixXd& z_hat_matrix, const SignVector& z_ref) {
  return matrix_loss_impl<double, double>(z_hat_matrix, z_ref.entries());
}

double loss_z2(const SignVector& z_hat, const SignVector& z_ref) {
  check_same_size(z_hat.size(), z_ref.size(), "loss_z2");
  const double d = z_hat.entries().dot(z_ref.entries());
  const double n = static_cast<double>(z_hat.size());
  return clamp_loss(2.0 * (1.0 - std::abs(d) / n));
}

namespace {

constexpr double kRatioSlack = 1e-12;

bool ratio_bound_ok(double lhs, double tangential_sq, double im_sq, double re) {
  if (!(re > 0.0))
    throw std::invalid_argument("ratio_bound_check: Re(y^H x) must be positive");
  return lhs <= (tangential_sq + im_sq) / (re * re) + kRatioSlack;
}

}  // namespace

bool ratio_bound_check(Complex x) {
  const double mag = std::abs(x);
  if (mag == 0.0)
    throw std::invalid_argument("ratio_bound_check: x must be nonzero");
  const double lhs = std::norm(x / mag - Complex(1.0, 0.0));
  return ratio_bound_ok(lhs, 0.0, x.imag() * x.imag(), x.real());
}

bool ratio_bound_check(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  check_same_size(x.size(), y.size(), "ratio_bound_check");
  if (std::abs(y.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("ratio_bound_check: y must be unit norm");
  const double nx = x.norm();
  if (nx == 0.0)
    throw std::invalid_argument("ratio_bound_check: x must be nonzero");
  const Complex inner = y.dot(x);  // y^H x
  const double lhs = (x / nx - y).squaredNorm();
  const double tangential_sq = (x - y * inner).squaredNorm();
  return ratio_bound_ok(lhs, tangential_sq, inner.imag() * inner.imag(),
                        inner.real());
}

bool ratio_bound_check(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  check_same_size(x.size(), y.size(), "ratio_bound_check");
  if (std::abs(y.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("ratio_bound_check: y must be unit norm");
  const double nx = x.norm();
  if (nx == 0.0)
    throw std::invalid_argument("ratio_bound_check: x must be nonzero");
  const double inner = y.dot(x);
  const double lhs = (x / nx - y).squaredNorm();
  const double tangential_sq = (x - y * inner).squaredNorm();
  return ratio_bound_ok(lhs, tangential_sq, 0.0, inner);
}

}  // namespace syncbench
