#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fgt/graph.hpp"
#include "fgt/random.hpp"

namespace fgt {

struct BootstrapConfig {
  std::size_t d = 2;   // bootstrap replicates per sample
  double tau = 0.0;    // w_u ~ N(0, tau^2); 0 gives balanced blocks
  RandomSeed seed{0};
};

void validate(const BootstrapConfig& config);

/// Block sizes of the bootstrap partition together with the Gaussian weights
/// they were drawn from.
struct BlockSizeVector {
  std::vector<std::size_t> sizes;
  std::vector<double> weights;

  std::size_t total() const;
  CommunityPartition partition() const { return CommunityPartition::from_sizes(sizes); }
  /// log(n_u): the weights for which n exp(w_u) / sum exp(w) reproduces the
  /// integer sizes exactly.
  std::vector<double> realized_weights() const;
};

/// Largest multiple of K not exceeding min(nG, nH).
std::size_t common_size(std::size_t n_g, std::size_t n_h, std::size_t k);

/// Draws w_u ~ N(0, tau^2) and rounds n exp(w_u) / sum exp(w) to integers by
/// largest remainder with a floor of one node per block.
BlockSizeVector allocate_block_sizes(std::size_t n, std::size_t k, double tau,
                                     const RandomSeed& seed);

/// Same rounding for caller-supplied weights (no draw).
BlockSizeVector block_sizes_from_weights(std::size_t n, std::vector<double> weights);

/// d SBM samples on the partition induced by `sizes`; replicate w uses
/// seed.child(w).
std::vector<AdjacencyMatrix> generate_bootstrap_sequence(const BlockProbabilityMatrix& b,
                                                         const BlockSizeVector& sizes,
                                                         std::size_t d, const RandomSeed& seed);

}  // namespace fgt
