#include "fgt/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fgt/errors.hpp"

namespace fgt {

void validate(const BootstrapConfig& config) {
  if (config.d < 1) throw Error(ErrorCode::invalid_argument, "bootstrap count d must be >= 1");
  if (!(config.tau >= 0.0) || !std::isfinite(config.tau)) {
    throw Error(ErrorCode::invalid_argument, "tau must be a finite value >= 0");
  }
}

std::size_t BlockSizeVector::total() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
}

std::vector<double> BlockSizeVector::realized_weights() const {
  std::vector<double> w(sizes.size());
  for (std::size_t u = 0; u < sizes.size(); ++u) w[u] = std::log(static_cast<double>(sizes[u]));
  return w;
}

std::size_t common_size(std::size_t n_g, std::size_t n_h, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::invalid_argument, "K must be >= 1");
  const std::size_t smaller = std::min(n_g, n_h);
  if (smaller < k) {
    throw Error(ErrorCode::no_valid_size, "min(nG, nH) = " + std::to_string(smaller) +
                                              " is smaller than K = " + std::to_string(k));
  }
  return smaller / k * k;
}

BlockSizeVector block_sizes_from_weights(std::size_t n, std::vector<double> weights) {
  const std::size_t k = weights.size();
  if (k == 0 || n < k) {
    throw Error(ErrorCode::invalid_argument, "need 1 <= K <= n to allocate block sizes");
  }
  // Softmax with the maximum subtracted; the ratio is unchanged.
  const double top = *std::max_element(weights.begin(), weights.end());
  std::vector<double> raw(k);
  double denom = 0.0;
  for (std::size_t u = 0; u < k; ++u) {
    raw[u] = std::exp(weights[u] - top);
    denom += raw[u];
  }
  for (double& r : raw) r = static_cast<double>(n) * r / denom;
  BlockSizeVector out;
  out.sizes = largest_remainder_round(raw, n, 1);
  out.weights = std::move(weights);
  return out;
}

BlockSizeVector allocate_block_sizes(std::size_t n, std::size_t k, double tau,
                                     const RandomSeed& seed) {
  if (k == 0 || n < k) {
    throw Error(ErrorCode::invalid_argument, "need 1 <= K <= n to allocate block sizes");
  }
  if (n % k != 0) {
    throw Error(ErrorCode::invalid_argument, "bootstrap size " + std::to_string(n) +
                                                 " is not a multiple of K = " + std::to_string(k));
  }
  if (!(tau >= 0.0)) throw Error(ErrorCode::invalid_argument, "tau must be >= 0");
  std::vector<double> weights(k, 0.0);
  if (tau > 0.0) {
    auto engine = seed.engine();
    std::normal_distribution<double> normal(0.0, tau);
    for (double& w : weights) w = normal(engine);
  }
  return block_sizes_from_weights(n, std::move(weights));
}

std::vector<AdjacencyMatrix> generate_bootstrap_sequence(const BlockProbabilityMatrix& b,
                                                         const BlockSizeVector& sizes,
                                                         std::size_t d, const RandomSeed& seed) {
  if (d < 1) throw Error(ErrorCode::invalid_argument, "bootstrap count d must be >= 1");
  if (b.communities() != sizes.sizes.size()) {
    throw Error(ErrorCode::dimension_mismatch, "block matrix K differs from block-size vector");
  }
  const auto partition = sizes.partition();
  std::vector<AdjacencyMatrix> out;
  out.reserve(d);
  for (std::size_t w = 0; w < d; ++w) out.push_back(sample_sbm(b, partition, seed.child(w)));
  return out;
}

}  // namespace fgt
