#pragma once

#include "syncbench/types.hpp"

namespace syncbench {

// Ground truth with angles uniform on (0, 2*pi].
PhaseVector sample_truth_phase(int n, const SeedSpec& seed);

// Ground truth with independent uniform signs.
SignVector sample_truth_z2(int n, const SeedSpec& seed);

// Complex model: for j < k an edge appears with probability p and carries
//   Y_jk = z_j conj(z_k) + sigma (g1 + i g2) / sqrt(2),   g1, g2 ~ N(0,1).
// data is Hermitian with diagonal 1, mask diagonal 0. Noise draws are
// consumed for every pair whether or not the edge is kept, so the stream
// layout depends only on n.
ComplexObservation sample_observation(const PhaseVector& z_star,
                                      const ModelParams& params,
                                      const SeedSpec& seed);

// Real model: Y_jk = z_j z_k + sigma g with g ~ N(0,1), symmetric, diagonal
// 0. When noise_out is non-null it receives the full symmetric noise matrix
// W (zero diagonal), which only synthetic callers can ever know; the
// u-statistic diagnostic needs it.
RealObservation sample_observation_z2(const SignVector& z_star,
                                      const ModelParams& params,
                                      const SeedSpec& seed,
                                      Eigen::MatrixXd* noise_out = nullptr);

}  // namespace syncbench
