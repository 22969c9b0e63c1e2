#include "syncbench/synthgen.hpp"

#include "syncbench/rng.hpp"

namespace syncbench {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

MaskMatrix sample_mask(int n, double p, const SeedSpec& seed) {
  StreamRng rng(seed, stream_tag::kMask);
  MaskMatrix mask = MaskMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const std::uint8_t bit = rng.bernoulli(p) ? 1 : 0;
      mask(j, k) = bit;
      mask(k, j) = bit;
    }
  return mask;
}

}  // namespace

PhaseVector sample_truth_phase(int n, const SeedSpec& seed) {
  if (n < 2) throw std::invalid_argument("sample_truth_phase: n must be >= 2");
  StreamRng rng(seed, stream_tag::kTruth);
  Eigen::VectorXd theta(n);
  for (int j = 0; j < n; ++j) theta[j] = kTwoPi * rng.uniform_open01();
  return PhaseVector::from_angles(theta);
}

SignVector sample_truth_z2(int n, const SeedSpec& seed) {
  if (n < 2) throw std::invalid_argument("sample_truth_z2: n must be >= 2");
  StreamRng rng(seed, stream_tag::kTruth);
  Eigen::VectorXd z(n);
  for (int j = 0; j < n; ++j) z[j] = rng.bernoulli(0.5) ? 1.0 : -1.0;
  return SignVector(std::move(z));
}

ComplexObservation sample_observation(const PhaseVector& z_star,
                                      const ModelParams& params,
                                      const SeedSpec& seed) {
  const int n = params.n;
  if (z_star.size() != n)
    throw std::invalid_argument("sample_observation: truth size != params.n");
  MaskMatrix mask = sample_mask(n, params.p, seed);
  StreamRng noise(seed, stream_tag::kNoise);
  Eigen::MatrixXcd data = Eigen::MatrixXcd::Zero(n, n);
  data.diagonal().setConstant(Complex(1.0, 0.0));
  const auto& z = z_star.entries();
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      // Both normals are always drawn so the stream layout is mask-free.
      const double g1 = noise.normal();
      const double g2 = noise.normal();
      if (mask(j, k)) {
        const Complex w(g1 * kInvSqrt2, g2 * kInvSqrt2);
        const Complex y = z[j] * std::conj(z[k]) + params.sigma * w;
        data(j, k) = y;
        data(k, j) = std::conj(y);
      }
    }
  return ComplexObservation(std::move(data), std::move(mask), params);
}

RealObservation sample_observation_z2(const SignVector& z_star,
                                      const ModelParams& params,
                                      const SeedSpec& seed,
                                      Eigen::MatrixXd* noise_out) {
  const int n = params.n;
  if (z_star.size() != n)
    throw std::invalid_argument("sample_observation_z2: truth size != params.n");
  MaskMatrix mask = sample_mask(n, params.p, seed);
  StreamRng noise(seed, stream_tag::kNoise);
  Eigen::MatrixXd data = Eigen::MatrixXd::Zero(n, n);
  if (noise_out) *noise_out = Eigen::MatrixXd::Zero(n, n);
  const auto& z = z_star.entries();
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const double w = noise.normal();
      if (noise_out) {
        (*noise_out)(j, k) = w;
        (*noise_out)(k, j) = w;
      }
      if (mask(j, k)) {
        const double y = z[j] * z[k] + params.sigma * w;
        data(j, k) = y;
        data(k, j) = y;
      }
    }
  return RealObservation(std::move(data), std::move(mask), params);
}

}  // namespace syncbench
