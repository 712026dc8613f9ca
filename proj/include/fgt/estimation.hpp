#pragma once

#include "fgt/graph.hpp"

namespace fgt {

enum class SingletonPolicy {
  reject,  // a community of size 1 has no within pairs; throw degenerate_community
  zero,    // report 0 for its within-community probability
};

/// Community-wise edge probability estimates of a single graph.
///
/// The diagonal entry for community u counts the 1-entries of the n_u x n_u
/// block A_uu (each edge appears twice) over n_u (n_u - 1); the off-diagonal
/// entry counts the 1-entries of A_uv (each cross edge once) over n_u n_v.
BlockProbabilityMatrix estimate_block_probabilities(
    const AdjacencyMatrix& a, const CommunityPartition& partition,
    SingletonPolicy singletons = SingletonPolicy::reject);

}  // namespace fgt
