#include "fgt/estimation.hpp"

#include <string>

#include "fgt/errors.hpp"

namespace fgt {

BlockProbabilityMatrix estimate_block_probabilities(const AdjacencyMatrix& a,
                                                    const CommunityPartition& partition,
                                                    SingletonPolicy singletons) {
  if (partition.nodes() != a.size()) {
    throw Error(ErrorCode::dimension_mismatch, "partition covers " +
                                                   std::to_string(partition.nodes()) +
                                                   " nodes, graph has " + std::to_string(a.size()));
  }
  const std::size_t k = partition.communities();
  const auto sizes = partition.block_sizes();
  for (std::size_t u = 0; u < k; ++u) {
    if (sizes[u] < 2 && singletons == SingletonPolicy::reject) {
      throw Error(ErrorCode::degenerate_community,
                  "community " + std::to_string(u + 1) +
                      " has a single node; its within-community probability is undefined");
    }
  }

  // Unordered edge counts per unordered block pair.
  std::vector<std::size_t> edges(k * k, 0);
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = a.row(i);
    const std::size_t u = partition.label(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (row[j]) ++edges[u * k + partition.label(j)];
    }
  }

  std::vector<double> est(k * k, 0.0);
  for (std::size_t u = 0; u < k; ++u) {
    const double nu = static_cast<double>(sizes[u]);
    if (sizes[u] >= 2) {
      est[u * k + u] = 2.0 * static_cast<double>(edges[u * k + u]) / (nu * (nu - 1.0));
    }
    for (std::size_t v = u + 1; v < k; ++v) {
      const double cross = static_cast<double>(edges[u * k + v] + edges[v * k + u]);
      const double q = cross / (nu * static_cast<double>(sizes[v]));
      est[u * k + v] = q;
      est[v * k + u] = q;
    }
  }
  return BlockProbabilityMatrix(k, std::move(est));
}

}  // namespace fgt
