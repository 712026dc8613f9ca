#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fgt/baseline.hpp"
#include "fgt/community.hpp"
#include "fgt/errors.hpp"

using namespace fgt;

namespace {

std::vector<AdjacencyMatrix> draw(const BlockProbabilityMatrix& b, const CommunityPartition& part,
                                  std::size_t m, const RandomSeed& seed) {
  std::vector<AdjacencyMatrix> out;
  for (std::size_t l = 0; l < m; ++l) out.push_back(sample_sbm(b, part, seed.child(l)));
  return out;
}

AdjacencyMatrix permute_nodes(const AdjacencyMatrix& a, const std::vector<std::size_t>& perm) {
  AdjacencyMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a(i, j)) out.set_edge(perm[i], perm[j], true);
    }
  }
  return out;
}

// Fraction of nodes labelled consistently with `truth` under the best of the
// two label matchings (K = 2).
double agreement_k2(const CommunityPartition& got, const CommunityPartition& truth) {
  std::size_t same = 0;
  for (std::size_t i = 0; i < got.nodes(); ++i) same += got.label(i) == truth.label(i);
  const double n = static_cast<double>(got.nodes());
  return std::max(same / n, 1.0 - same / n);
}

bool same_clustering(const CommunityPartition& a, const CommunityPartition& b) {
  for (std::size_t i = 0; i < a.nodes(); ++i) {
    for (std::size_t j = 0; j < a.nodes(); ++j) {
      if ((a.label(i) == a.label(j)) != (b.label(i) == b.label(j))) return false;
    }
  }
  return true;
}

class StubOrderTest final : public OrderTest {
 public:
  explicit StubOrderTest(std::size_t truth) : truth_(truth) {}
  bool rejects(const AdjacencyMatrix&, std::size_t k, const RandomSeed&) const override {
    return k < truth_;
  }

 private:
  std::size_t truth_;
};

}  // namespace

TEST(AsympNormal, IdenticalSequencesGiveZero) {
  const auto part = CommunityPartition::balanced(30, 2);
  const auto g = draw(BlockProbabilityMatrix::planted(2, 0.3, 0.1), part, 2, RandomSeed(1));
  const auto r = asymp_normal_test(g, g);
  EXPECT_EQ(r.method, "asymp-normal");
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_FALSE(r.reject);
  EXPECT_EQ(r.p_value, 1.0);

  const std::vector<AdjacencyMatrix> empty(2, AdjacencyMatrix(10));
  EXPECT_EQ(asymp_normal_test(empty, empty).statistic, 0.0);
}

TEST(AsympNormal, SwapAndRelabelInvariance) {
  const auto part = CommunityPartition::balanced(40, 2);
  const auto g = draw(BlockProbabilityMatrix::planted(2, 0.3, 0.1), part, 4, RandomSeed(2));
  const auto h = draw(BlockProbabilityMatrix::planted(2, 0.4, 0.2), part, 4, RandomSeed(3));
  const auto a = asymp_normal_test(g, h);
  const auto b = asymp_normal_test(h, g);
  // Both half-sample differences change sign, so the product does not.
  EXPECT_DOUBLE_EQ(a.statistic, b.statistic);
  EXPECT_DOUBLE_EQ(a.p_value, b.p_value);

  std::vector<std::size_t> perm(40);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.begin() + 25);
  std::vector<AdjacencyMatrix> gp, hp;
  for (const auto& x : g) gp.push_back(permute_nodes(x, perm));
  for (const auto& x : h) hp.push_back(permute_nodes(x, perm));
  EXPECT_DOUBLE_EQ(asymp_normal_test(gp, hp).statistic, a.statistic);
}

TEST(AsympNormal, UsageErrors) {
  const auto part = CommunityPartition::balanced(20, 2);
  const auto b = BlockProbabilityMatrix::planted(2, 0.3, 0.1);
  const auto g3 = draw(b, part, 3, RandomSeed(1));
  EXPECT_THROW(asymp_normal_test(g3, g3), Error);
  const auto g2 = draw(b, part, 2, RandomSeed(1));
  const auto h2 = draw(b, CommunityPartition::balanced(22, 2), 2, RandomSeed(1));
  EXPECT_THROW(asymp_normal_test(g2, h2), Error);
}

TEST(AsympNormal, NullRateAtMostLevel) {
  const auto part = CommunityPartition::balanced(500, 2);
  const auto b = BlockProbabilityMatrix::planted(2, 0.1, 0.05);
  std::size_t rejections = 0;
  for (std::size_t r = 0; r < 1000; ++r) {
    const auto g = draw(b, part, 2, RandomSeed(61).child(r).child(0));
    const auto h = draw(b, part, 2, RandomSeed(61).child(r).child(1));
    rejections += asymp_normal_test(g, h).reject;
  }
  EXPECT_LE(rejections, 50u);
}

TEST(SpectralPartition, DisjointCliques) {
  const auto part = CommunityPartition::from_sizes(std::vector<std::size_t>{5, 5});
  const auto a = sample_sbm(BlockProbabilityMatrix::planted(2, 1.0, 0.0), part, RandomSeed(0));
  EXPECT_EQ(spectral_partition(a, 2, RandomSeed(4)), part);
}

TEST(SpectralPartition, SingleCommunityAndErrors) {
  const auto a = sample_ier(EdgeProbabilityMatrix::constant(7, 0.4), RandomSeed(1));
  const auto p = spectral_partition(a, 1);
  EXPECT_TRUE(std::ranges::equal(p.labels(), std::vector<std::size_t>(7, 0)));
  EXPECT_THROW(spectral_partition(a, 8), Error);
  EXPECT_THROW(spectral_partition(a, 0), Error);
}

TEST(SpectralPartition, RecoversPlantedBlocks) {
  const auto truth = CommunityPartition::from_sizes(std::vector<std::size_t>{50, 50});
  const auto b = BlockProbabilityMatrix::planted(2, 0.5, 0.05);
  for (std::size_t t = 0; t < 100; ++t) {
    const auto a = sample_sbm(b, truth, RandomSeed(70).child(t));
    EXPECT_GE(agreement_k2(spectral_partition(a, 2, RandomSeed(71).child(t)), truth), 0.95);
  }
}

TEST(SpectralPartition, NodeRelabelingInvariance) {
  const auto truth = CommunityPartition::balanced(60, 3);
  const auto a = sample_sbm(BlockProbabilityMatrix::planted(3, 0.6, 0.05), truth, RandomSeed(5));
  std::vector<std::size_t> perm(60);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), RandomSeed(6).engine());
  const auto base = spectral_partition(a, 3, RandomSeed(7));
  const auto moved = spectral_partition(permute_nodes(a, perm), 3, RandomSeed(7));
  std::vector<std::size_t> pulled(60);
  for (std::size_t i = 0; i < 60; ++i) pulled[i] = moved.label(perm[i]);
  EXPECT_TRUE(same_clustering(base, CommunityPartition(pulled, 3)));
}

TEST(SequentialK, StubOrderTest) {
  const std::vector<AdjacencyMatrix> nets(2, AdjacencyMatrix(10));
  EXPECT_EQ(sequential_common_k(nets, 6, StubOrderTest(3), RandomSeed(0)), 3u);
  EXPECT_EQ(sequential_common_k(nets, 2, StubOrderTest(5), RandomSeed(0)), 2u);
  EXPECT_EQ(sequential_common_k(nets, 1, StubOrderTest(5), RandomSeed(0)), 1u);
  EXPECT_THROW(sequential_common_k(std::vector<AdjacencyMatrix>{}, 3, RandomSeed(0)), Error);
}

TEST(SequentialK, ErdosRenyiGraphsGiveOne) {
  const auto a = sample_ier(EdgeProbabilityMatrix::constant(60, 0.2), RandomSeed(8));
  const std::vector<AdjacencyMatrix> nets(3, a);
  EXPECT_EQ(sequential_common_k(nets, 5, RandomSeed(9)), 1u);
}

TEST(SequentialK, SeparatedTwoBlockGraphsGiveTwo) {
  const auto part = CommunityPartition::balanced(60, 2);
  const auto nets = draw(BlockProbabilityMatrix::planted(2, 0.5, 0.02), part, 3, RandomSeed(10));
  EXPECT_EQ(sequential_common_k(nets, 5, RandomSeed(11)), 2u);
}

TEST(SequentialK, MonotoneInSeparation) {
  const auto part = CommunityPartition::balanced(60, 2);
  double weak = 0.0, strong = 0.0;
  for (std::size_t t = 0; t < 5; ++t) {
    const auto w = draw(BlockProbabilityMatrix::planted(2, 0.22, 0.18), part, 2, RandomSeed(12).child(t));
    const auto s = draw(BlockProbabilityMatrix::planted(2, 0.5, 0.05), part, 2, RandomSeed(13).child(t));
    weak += static_cast<double>(sequential_common_k(w, 4, RandomSeed(14).child(t)));
    strong += static_cast<double>(sequential_common_k(s, 4, RandomSeed(15).child(t)));
  }
  EXPECT_LE(weak, strong);
}

TEST(ResidualOrderTest, PValueRange) {
  const ResidualSpectralOrderTest test(19, 0.05);
  const auto part = CommunityPartition::balanced(40, 2);
  const auto a = sample_sbm(BlockProbabilityMatrix::planted(2, 0.6, 0.05), part, RandomSeed(3));
  EXPECT_LE(test.p_value(a, 1, RandomSeed(1)), 0.05);
  EXPECT_TRUE(test.rejects(a, 1, RandomSeed(1)));
  const double p2 = test.p_value(a, 2, RandomSeed(1));
  EXPECT_GE(p2, 1.0 / 20.0);
  EXPECT_LE(p2, 1.0);
  EXPECT_FALSE(test.rejects(a, 40, RandomSeed(1)));
  EXPECT_THROW(ResidualSpectralOrderTest(0), Error);
}
