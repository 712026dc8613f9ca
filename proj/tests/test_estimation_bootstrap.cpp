#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fgt/bootstrap.hpp"
#include "fgt/errors.hpp"
#include "fgt/estimation.hpp"
#include "oracles.hpp"

using namespace fgt;

TEST(Estimation, FiveNodeExample) {
  AdjacencyMatrix a(5);
  a.set_edge(0, 1, true);
  a.set_edge(0, 3, true);
  a.set_edge(2, 4, true);
  const auto part = CommunityPartition::from_sizes(std::vector<std::size_t>{3, 2});
  const auto est = estimate_block_probabilities(a, part);
  EXPECT_DOUBLE_EQ(est(0, 0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(est(0, 1), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(est(1, 0), est(0, 1));
  EXPECT_DOUBLE_EQ(est(1, 1), 0.0);
}

TEST(Estimation, CompleteGraphGivesOnes) {
  const auto part = CommunityPartition::from_sizes(std::vector<std::size_t>{4, 2, 3});
  const auto a = sample_sbm(BlockProbabilityMatrix::planted(3, 1.0, 1.0), part, RandomSeed(0));
  const auto est = estimate_block_probabilities(a, part);
  for (double v : est.entries()) EXPECT_EQ(v, 1.0);
}

TEST(Estimation, SingletonCommunity) {
  AdjacencyMatrix a(3);
  a.set_edge(0, 2, true);
  const auto part = CommunityPartition::from_sizes(std::vector<std::size_t>{2, 1});
  try {
    estimate_block_probabilities(a, part);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_community);
  }
  const auto est = estimate_block_probabilities(a, part, SingletonPolicy::zero);
  EXPECT_EQ(est(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(est(0, 1), 0.5);
}

TEST(Estimation, DimensionMismatch) {
  EXPECT_THROW(estimate_block_probabilities(AdjacencyMatrix(4), CommunityPartition::balanced(5, 2)),
               Error);
}

TEST(Estimation, UnbiasedWithinBlock) {
  const auto b = BlockProbabilityMatrix::planted(2, 0.1, 0.05);
  const auto part = CommunityPartition::balanced(60, 2);
  std::vector<double> within, between;
  for (std::size_t s = 0; s < 1000; ++s) {
    const auto est = estimate_block_probabilities(sample_sbm(b, part, RandomSeed(21).child(s)), part);
    within.push_back(est(0, 0));
    between.push_back(est(0, 1));
  }
  EXPECT_NEAR(oracle::mean(within), 0.1, 3.0 * oracle::standard_error(within));
  EXPECT_NEAR(oracle::mean(between), 0.05, 3.0 * oracle::standard_error(between));
}

TEST(CommonSize, Examples) {
  EXPECT_EQ(common_size(200, 100, 2), 100u);
  EXPECT_EQ(common_size(200, 100, 3), 99u);
  EXPECT_EQ(common_size(200, 100, 4), 100u);
  EXPECT_EQ(common_size(200, 100, 6), 96u);
  EXPECT_EQ(common_size(10, 10, 5), 10u);
  try {
    common_size(3, 10, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::no_valid_size);
  }
}

TEST(AllocateBlockSizes, Balanced) {
  EXPECT_EQ(allocate_block_sizes(100, 2, 0.0, RandomSeed(1)).sizes,
            (std::vector<std::size_t>{50, 50}));
  EXPECT_EQ(allocate_block_sizes(96, 6, 0.0, RandomSeed(1)).sizes,
            std::vector<std::size_t>(6, 16));
  EXPECT_THROW(allocate_block_sizes(97, 6, 0.0, RandomSeed(1)), Error);
}

namespace {

// Sort-based largest remainder, written independently of the library.
std::vector<std::size_t> reference_sizes(std::size_t n, const std::vector<double>& w) {
  std::vector<double> raw(w.size());
  double denom = 0.0;
  for (double x : w) denom += std::exp(x);
  for (std::size_t u = 0; u < w.size(); ++u) raw[u] = static_cast<double>(n) * std::exp(w[u]) / denom;
  std::vector<std::size_t> sizes(w.size());
  std::size_t used = 0;
  for (std::size_t u = 0; u < w.size(); ++u) {
    sizes[u] = static_cast<std::size_t>(std::floor(raw[u]));
    used += sizes[u];
  }
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raw[a] - std::floor(raw[a]) > raw[b] - std::floor(raw[b]);
  });
  for (std::size_t i = 0; used < n; ++i, ++used) ++sizes[order[i]];
  return sizes;
}

}  // namespace

TEST(AllocateBlockSizes, MatchesReferenceSoftmax) {
  for (std::size_t s = 0; s < 10000; ++s) {
    const RandomSeed seed = RandomSeed(5).child(s);
    const auto got = allocate_block_sizes(100, 2, 0.5, seed);
    ASSERT_EQ(got.total(), 100u);
    ASSERT_GE(*std::min_element(got.sizes.begin(), got.sizes.end()), 1u);

    auto engine = seed.engine();
    std::normal_distribution<double> normal(0.0, 0.5);
    std::vector<double> w(2);
    for (double& x : w) x = normal(engine);
    ASSERT_EQ(got.weights, w);
    ASSERT_EQ(got.sizes, reference_sizes(100, w)) << "seed index " << s;
  }
}

TEST(AllocateBlockSizes, ExtremeDispersionKeepsMinimum) {
  for (std::size_t s = 0; s < 2000; ++s) {
    const auto got = allocate_block_sizes(12, 6, 4.0, RandomSeed(8).child(s));
    ASSERT_EQ(got.total(), 12u);
    ASSERT_GE(*std::min_element(got.sizes.begin(), got.sizes.end()), 1u);
  }
}

TEST(BlockSizeVector, RealizedWeightsReproduceSizes) {
  const auto sizes = allocate_block_sizes(100, 4, 0.7, RandomSeed(3));
  const auto again = block_sizes_from_weights(100, sizes.realized_weights());
  EXPECT_EQ(again.sizes, sizes.sizes);
}

TEST(BootstrapSequence, CompleteGraphsAndCounts) {
  const auto sizes = allocate_block_sizes(10, 2, 0.0, RandomSeed(0));
  const auto boots =
      generate_bootstrap_sequence(BlockProbabilityMatrix::planted(2, 1.0, 1.0), sizes, 3, RandomSeed(1));
  ASSERT_EQ(boots.size(), 3u);
  for (const auto& b : boots) EXPECT_EQ(b.edge_count(), 45u);
  EXPECT_EQ(generate_bootstrap_sequence(BlockProbabilityMatrix::planted(2, 0.3, 0.1), sizes, 1,
                                        RandomSeed(1))
                .size(),
            1u);
  EXPECT_THROW(generate_bootstrap_sequence(BlockProbabilityMatrix::planted(2, 0.3, 0.1), sizes, 0,
                                           RandomSeed(1)),
               Error);
  EXPECT_THROW(generate_bootstrap_sequence(BlockProbabilityMatrix::planted(3, 0.3, 0.1), sizes, 1,
                                           RandomSeed(1)),
               Error);
}

TEST(BootstrapSequence, PooledWithinBlockFrequency) {
  const auto sizes = allocate_block_sizes(100, 2, 0.0, RandomSeed(0));
  const auto b = BlockProbabilityMatrix::planted(2, 0.5, 0.1);
  const auto boots = generate_bootstrap_sequence(b, sizes, 10, RandomSeed(77));
  std::size_t hits = 0, trials = 0;
  for (const auto& a : boots) {
    for (std::size_t i = 0; i < 100; ++i) {
      for (std::size_t j = i + 1; j < 100; ++j) {
        if ((i < 50) != (j < 50)) continue;
        hits += a(i, j);
        ++trials;
      }
    }
  }
  const double rate = static_cast<double>(hits) / static_cast<double>(trials);
  EXPECT_NEAR(rate, 0.5, 3.0 * std::sqrt(0.25 / static_cast<double>(trials)));
}

TEST(BootstrapSequence, Reproducible) {
  const auto sizes = allocate_block_sizes(30, 3, 0.5, RandomSeed(4));
  const auto b = BlockProbabilityMatrix::planted(3, 0.4, 0.1);
  EXPECT_EQ(generate_bootstrap_sequence(b, sizes, 4, RandomSeed(4)),
            generate_bootstrap_sequence(b, sizes, 4, RandomSeed(4)));
}
