#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace syncbench {

using Complex = std::complex<double>;

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using MaskMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// Entrywise moduli of a PhaseVector and column norms of a LiftedState must
// sit within this of 1. Loose enough to absorb normalize() rounding, tight
// enough to catch anything that was never normalized.
inline constexpr double kUnitTol = 1e-12;

// Identifies one replicate's random streams. Draw sites (truth, mask, noise,
// eigensolver starts) split off independent substreams from this pair, so
// results never depend on scheduling or on which estimators run.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replicate_index = 0;
};

// Problem-size triple (n, p, sigma). sigma2 is derived, never stored.
struct ModelParams {
  int n;
  double p;
  double sigma;

  ModelParams(int n_, double p_, double sigma_) : n(n_), p(p_), sigma(sigma_) {
    if (n < 2) throw std::invalid_argument("ModelParams: n must be >= 2");
    if (!(p > 0.0) || p > 1.0)
      throw std::invalid_argument("ModelParams: p must be in (0, 1]");
    if (!(sigma >= 0.0))
      throw std::invalid_argument("ModelParams: sigma must be >= 0");
  }

  static ModelParams from_sigma2(int n, double p, double sigma2) {
    if (!(sigma2 >= 0.0))
      throw std::invalid_argument("ModelParams: sigma2 must be >= 0");
    return ModelParams(n, p, std::sqrt(sigma2));
  }

  double sigma2() const { return sigma * sigma; }
};

// Length-n vector of unit-modulus complex entries. Construction validates,
// after that the invariant is carried silently.
class PhaseVector {
 public:
  explicit PhaseVector(Eigen::VectorXcd entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2)
      throw std::invalid_argument("PhaseVector: need at least 2 entries");
    for (Eigen::Index j = 0; j < entries_.size(); ++j) {
      if (std::abs(std::abs(entries_[j]) - 1.0) > kUnitTol)
        throw std::invalid_argument("PhaseVector: entry " + std::to_string(j) +
                                    " is not unit modulus");
    }
  }

  static PhaseVector from_angles(const Eigen::VectorXd& theta) {
    Eigen::VectorXcd v(theta.size());
    for (Eigen::Index j = 0; j < theta.size(); ++j)
      v[j] = std::polar(1.0, theta[j]);
    return PhaseVector(std::move(v));
  }

  const Eigen::VectorXcd& entries() const { return entries_; }
  Eigen::Index size() const { return entries_.size(); }

 private:
  Eigen::VectorXcd entries_;
};

// Length-n vector with entries exactly +1 or -1, stored as doubles so it
// drops straight into matrix arithmetic.
class SignVector {
 public:
  explicit SignVector(Eigen::VectorXd entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2)
      throw std::invalid_argument("SignVector: need at least 2 entries");
    for (Eigen::Index j = 0; j < entries_.size(); ++j) {
      if (entries_[j] != 1.0 && entries_[j] != -1.0)
        throw std::invalid_argument("SignVector: entry " + std::to_string(j) +
                                    " is not +1/-1");
    }
  }

  const Eigen::VectorXd& entries() const { return entries_; }
  Eigen::Index size() const { return entries_.size(); }

 private:
  Eigen::VectorXd entries_;
};

namespace detail {

// Shared validation for the complex (Hermitian, diag 1) and real (symmetric,
// diag 0) observation conventions. diag_value distinguishes the two.
template <class Scalar>
void check_observation(const MatrixX<Scalar>& data, const MaskMatrix& mask,
                       const ModelParams& params, double diag_value) {
  const Eigen::Index n = params.n;
  if (data.rows() != n || data.cols() != n || mask.rows() != n || mask.cols() != n)
    throw std::invalid_argument("MaskedObservation: dimension mismatch");
  constexpr double tol = 1e-12;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (mask(j, j) != 0)
      throw std::invalid_argument("MaskedObservation: mask diagonal must be 0");
    if (std::abs(data(j, j) - Scalar(diag_value)) > tol)
      throw std::invalid_argument("MaskedObservation: bad data diagonal");
    for (Eigen::Index k = j + 1; k < n; ++k) {
      if (mask(j, k) > 1 || mask(j, k) != mask(k, j))
        throw std::invalid_argument("MaskedObservation: mask must be symmetric 0/1");
      using std::conj;
      if (std::abs(data(j, k) - conj(data(k, j))) > tol * (1.0 + std::abs(data(j, k))))
        throw std::invalid_argument("MaskedObservation: data must mirror across the diagonal");
      if (mask(j, k) == 0 && std::abs(data(j, k)) > tol)
        throw std::invalid_argument("MaskedObservation: data must vanish off the mask");
    }
  }
}

}  // namespace detail

// Masked pairwise measurements. `data` holds the masked observations with the
// model's diagonal convention (1 for the complex model, 0 for the real one);
// the mask diagonal is always 0, so estimator sums skip k = j by subtracting
// the diagonal once (see hollowed()).
template <class Scalar>
class MaskedObservation {
 public:
  MaskedObservation(MatrixX<Scalar> data, MaskMatrix mask, ModelParams params)
      : data_(std::move(data)), mask_(std::move(mask)), params_(params) {
    constexpr bool is_complex = !std::is_same_v<Scalar, double>;
    detail::check_observation<Scalar>(data_, mask_, params_, is_complex ? 1.0 : 0.0);
  }

  const MatrixX<Scalar>& data() const { return data_; }
  const MaskMatrix& mask() const { return mask_; }
  const ModelParams& params() const { return params_; }
  Eigen::Index size() const { return data_.rows(); }

  // Working matrix for estimators: data with the diagonal zeroed, i.e. the
  // mask applied everywhere including k = j.
  MatrixX<Scalar> hollowed() const {
    MatrixX<Scalar> h = data_;
    h.diagonal().setZero();
    return h;
  }

 private:
  MatrixX<Scalar> data_;
  MaskMatrix mask_;
  ModelParams params_;
};

using ComplexObservation = MaskedObservation<Complex>;
using RealObservation = MaskedObservation<double>;

// n x n matrix of unit-norm columns (the unit-column factorization the
// block-coordinate solvers walk on).
template <class Scalar>
class LiftedState {
 public:
  explicit LiftedState(MatrixX<Scalar> columns) : columns_(std::move(columns)) {
    if (columns_.rows() != columns_.cols() || columns_.rows() < 2)
      throw std::invalid_argument("LiftedState: need a square matrix, n >= 2");
    for (Eigen::Index j = 0; j < columns_.cols(); ++j) {
      if (std::abs(columns_.col(j).norm() - 1.0) > kUnitTol)
        throw std::invalid_argument("LiftedState: column " + std::to_string(j) +
                                    " is not unit norm");
    }
  }

  const MatrixX<Scalar>& columns() const { return columns_; }
  Eigen::Index size() const { return columns_.rows(); }

 private:
  MatrixX<Scalar> columns_;
};

using ComplexLifted = LiftedState<Complex>;
using RealLifted = LiftedState<double>;

// Rank-one embedding: column j = conj(z_j) * e1. Exactly reproduces the
// vector iteration inside the lifted one.
ComplexLifted lift(const PhaseVector& z);
RealLifted lift(const SignVector& z);

// Result of an alignment-minimizing vector loss. `aligner` is the optimal
// unit-modulus scalar; when the inner product vanishes the loss is exactly 2
// and the aligner defaults to 1.
struct AlignmentResult {
  double loss;
  Complex aligner;
};

// Result of an alignment-minimizing lifted loss. When m = (1/n) sum z_j V_j
// vanishes no direction is preferred: loss is exactly 2 and aligner_defined
// is false.
template <class Scalar>
struct LiftedAlignment {
  double loss;
  VectorX<Scalar> aligner;
  bool aligner_defined;
};

// Per-solve diagnostics shared by the iterative estimators. objective_trace
// holds the objective at the start point followed by one value per completed
// sweep/iteration; for the sequential-sweep solvers it is nondecreasing up to
// roundoff.
struct SolveDiagnostics {
  std::vector<double> objective_trace;
  double fixed_point_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

}  // namespace syncbench
