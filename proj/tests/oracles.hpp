#pragma once

// Independent reference computations used by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "fgt/graph.hpp"

namespace fgt::oracle {

struct NaiveStatistic {
  std::uint64_t disagreements = 0;  // over ordered pairs
  double statistic = 0.0;
  std::vector<std::size_t> permutation;
};

// Materializes every permuted H-bootstrap matrix and sums the squared
// differences over all ordered pairs i != j, as in the textbook definition.
inline NaiveStatistic naive_statistic(const std::vector<std::vector<AdjacencyMatrix>>& g_boots,
                                      const std::vector<std::vector<UniformField>>& h_fields,
                                      const std::vector<BlockProbabilityMatrix>& q_hats,
                                      const CommunityPartition& partition) {
  const std::size_t k = partition.communities();
  const std::size_t n = partition.nodes();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  NaiveStatistic best;
  bool first = true;
  std::size_t terms = 0;
  do {
    std::uint64_t total = 0;
    terms = 0;
    for (std::size_t l = 0; l < g_boots.size(); ++l) {
      const auto target = q_hats[l].permuted(perm);
      for (std::size_t w = 0; w < g_boots[l].size(); ++w) {
        const auto h = h_fields[l][w].threshold(target, partition);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const int diff = int(g_boots[l][w](i, j)) - int(h(i, j));
            total += static_cast<std::uint64_t>(diff * diff);
            ++terms;
          }
        }
      }
    }
    if (first || total < best.disagreements) {
      best.disagreements = total;
      best.permutation = perm;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  best.statistic = static_cast<double>(best.disagreements) / static_cast<double>(terms);
  return best;
}

inline double mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Standard error of the mean.
inline double standard_error(const std::vector<double>& xs) {
  const double mu = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  const double n = static_cast<double>(xs.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

}  // namespace fgt::oracle
