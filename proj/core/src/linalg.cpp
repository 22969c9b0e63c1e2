#include "syncbench/linalg.hpp"

#include <limits>

#include "syncbench/rng.hpp"

namespace syncbench {

namespace {

double real_part(double v) { return v; }
double real_part(Complex v) { return v.real(); }

template <class Scalar>
VectorX<Scalar> seeded_unit_vector(Eigen::Index n, StreamRng& rng) {
  VectorX<Scalar> x(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if constexpr (std::is_same_v<Scalar, double>) {
      x[j] = rng.normal();
    } else {
      x[j] = Complex(rng.normal(), rng.normal());
    }
  }
  const double norm = x.norm();
  if (norm == 0.0) {
    // 2n normals all zero never happens; keep a defined fallback anyway.
    x.setZero();
    x[0] = Scalar(1.0);
    return x;
  }
  return x / norm;
}

// Smallest Gershgorin disc edge; the shift -min(0, bound) pushes the whole
// spectrum nonnegative so the algebraically largest eigenvalue also has the
// largest magnitude.
template <class Scalar>
double gershgorin_lower_bound(const MatrixX<Scalar>& M) {
  double lower = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < M.rows(); ++j) {
    double radius = 0.0;
    for (Eigen::Index k = 0; k < M.cols(); ++k)
      if (k != j) radius += std::abs(M(j, k));
    lower = std::min(lower, real_part(M(j, j)) - radius);
  }
  return lower;
}

}  // namespace

Eigen::VectorXcd matvec(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& x) {
  if (M.rows() != M.cols() || M.cols() != x.size())
    throw std::invalid_argument("matvec: dimension mismatch");
  return M * x;
}

Eigen::VectorXd matvec(const Eigen::MatrixXd& M, const Eigen::VectorXd& x) {
  if (M.rows() != M.cols() || M.cols() != x.size())
    throw std::invalid_argument("matvec: dimension mismatch");
  return M * x;
}

Eigen::MatrixXcd gram(const ComplexLifted& V) {
  return V.columns().adjoint() * V.columns();
}

Eigen::MatrixXd gram(const RealLifted& V) {
  return V.columns().transpose() * V.columns();
}

template <class Scalar>
EigResult<Scalar> leading_eigenvector(const MatrixX<Scalar>& M, double tol,
                                      int max_iter, const SeedSpec& seed) {
  if (M.rows() != M.cols())
    throw std::invalid_argument("leading_eigenvector: matrix must be square");
  if (!(tol > 0.0) || max_iter < 1)
    throw std::invalid_argument("leading_eigenvector: bad tol/max_iter");
  const Eigen::Index n = M.rows();
  const double shift = std::max(0.0, -gershgorin_lower_bound(M));

  StreamRng rng(seed, stream_tag::kEigStart);
  VectorX<Scalar> x = seeded_unit_vector<Scalar>(n, rng);

  EigResult<Scalar> out;
  bool reseeded = false;
  double checkpoint_dist = std::numeric_limits<double>::infinity();
  int it = 0;
  while (it < max_iter) {
    ++it;
    VectorX<Scalar> w = M * x + shift * x;
    const double beta = w.norm();
    if (beta == 0.0) {
      // x annihilates the shifted matrix. With a random start this means the
      // matrix itself vanishes; a converged zero eigenpair is the answer.
      if (!reseeded) {
        x = seeded_unit_vector<Scalar>(n, rng);
        reseeded = true;
        continue;
      }
      out.converged = true;
      break;
    }
    w /= beta;
    const double overlap = std::abs(x.dot(w));
    const double dist = std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
    x.swap(w);
    if (dist < tol) {
      out.converged = true;
      break;
    }
    if (it % kEigCheckpoint == 0) {
      const double ray = real_part(x.dot(M * x));
      out.residual_trace.push_back((M * x - ray * x).norm());
      // Barely moving while still far out: the start had almost no weight on
      // the leading space. One reseed, then trust the arithmetic.
      if (!reseeded && dist > 0.95 * checkpoint_dist && dist > 100.0 * tol) {
        x = seeded_unit_vector<Scalar>(n, rng);
        reseeded = true;
        checkpoint_dist = std::numeric_limits<double>::infinity();
        continue;
      }
      checkpoint_dist = dist;
    }
  }

  out.iterations = it;
  const double ray = real_part(x.dot(M * x));
  out.value = ray;
  out.residual = (M * x - ray * x).norm();
  out.vector = std::move(x);
  return out;
}

template EigResult<Complex> leading_eigenvector<Complex>(const Eigen::MatrixXcd&,
                                                         double, int,
                                                         const SeedSpec&);
template EigResult<double> leading_eigenvector<double>(const Eigen::MatrixXd&,
                                                       double, int,
                                                       const SeedSpec&);

template <class Scalar>
double second_eigenvalue(const MatrixX<Scalar>& M, const EigResult<Scalar>& top,
                         double tol, int max_iter, const SeedSpec& seed) {
  if (top.vector.size() != M.rows())
    throw std::invalid_argument("second_eigenvalue: eigenpair does not match M");
  MatrixX<Scalar> deflated =
      M - top.value * (top.vector * top.vector.adjoint());
  return leading_eigenvector<Scalar>(deflated, tol, max_iter, seed).value;
}

template double second_eigenvalue<Complex>(const Eigen::MatrixXcd&,
                                           const EigResult<Complex>&, double,
                                           int, const SeedSpec&);
template double second_eigenvalue<double>(const Eigen::MatrixXd&,
                                          const EigResult<double>&, double, int,
                                          const SeedSpec&);

}  // namespace syncbench
