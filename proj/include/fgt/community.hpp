#pragma once

#include <cstddef>
#include <span>

#include "fgt/graph.hpp"
#include "fgt/random.hpp"

namespace fgt {

/// Clusters the rows of the K leading eigenvectors (by |eigenvalue|) of A
/// into K groups with seeded k-means++ / Lloyd restarts. Labels are numbered
/// in order of first appearance, so node 0 is always in community 0.
CommunityPartition spectral_partition(const AdjacencyMatrix& a, std::size_t k,
                                      const RandomSeed& seed = RandomSeed{0});

/// Test of H0: the graph has k communities against H1: more than k.
class OrderTest {
 public:
  virtual ~OrderTest() = default;
  virtual bool rejects(const AdjacencyMatrix& a, std::size_t k, const RandomSeed& seed) const = 0;
};

/// Fits a k-block SBM (spectral partition + block estimates) and compares the
/// spectral norm of the residual A - E[A] with its parametric-bootstrap null
/// distribution, refitting the partition on every replicate.
class ResidualSpectralOrderTest final : public OrderTest {
 public:
  explicit ResidualSpectralOrderTest(std::size_t bootstrap_count = 50, double alpha = 0.05);

  bool rejects(const AdjacencyMatrix& a, std::size_t k, const RandomSeed& seed) const override;

  double p_value(const AdjacencyMatrix& a, std::size_t k, const RandomSeed& seed) const;
  static double residual_norm(const AdjacencyMatrix& a, std::size_t k, const RandomSeed& seed);

 private:
  std::size_t bootstrap_count_;
  double alpha_;
};

/// Smallest k at which some network fails to reject H0: K = k, scanning
/// k = 1 .. k_max; k_max when every test rejects throughout.
std::size_t sequential_common_k(std::span<const AdjacencyMatrix> networks, std::size_t k_max,
                                const OrderTest& test, const RandomSeed& seed);

std::size_t sequential_common_k(std::span<const AdjacencyMatrix> networks, std::size_t k_max,
                                const RandomSeed& seed);

}  // namespace fgt
