#include "fgt/community.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "fgt/errors.hpp"
#include "fgt/estimation.hpp"

namespace fgt {
namespace {

constexpr std::size_t kRestarts = 10;
constexpr std::size_t kMaxIterations = 100;

Eigen::MatrixXd dense(const AdjacencyMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j) ? 1.0 : 0.0;
  }
  return m;
}

struct Clustering {
  std::vector<std::size_t> labels;
  double inertia = std::numeric_limits<double>::infinity();
};

double squared_distance(const Eigen::MatrixXd& x, Eigen::Index row, const Eigen::MatrixXd& c,
                        Eigen::Index center) {
  return (x.row(row) - c.row(center)).squaredNorm();
}

Clustering kmeans_once(const Eigen::MatrixXd& x, std::size_t k, Engine& engine) {
  const Eigen::Index n = x.rows();
  const auto kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd centers(kk, x.cols());

  // k-means++ seeding.
  std::vector<double> nearest(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  centers.row(0) = x.row(static_cast<Eigen::Index>(engine() % static_cast<std::uint64_t>(n)));
  for (Eigen::Index c = 1; c < kk; ++c) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      auto& dist = nearest[static_cast<std::size_t>(i)];
      dist = std::min(dist, squared_distance(x, i, centers, c - 1));
      total += dist;
    }
    Eigen::Index chosen = 0;
    if (total > 0.0) {
      double target = uniform01(engine) * total;
      for (chosen = 0; chosen < n - 1; ++chosen) {
        target -= nearest[static_cast<std::size_t>(chosen)];
        if (target < 0.0) break;
      }
    } else {
      chosen = static_cast<Eigen::Index>(engine() % static_cast<std::uint64_t>(n));
    }
    centers.row(c) = x.row(chosen);
  }

  std::vector<std::size_t> labels(static_cast<std::size_t>(n), 0);
  for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
    bool changed = iter == 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_dist = squared_distance(x, i, centers, 0);
      for (Eigen::Index c = 1; c < kk; ++c) {
        const double dist = squared_distance(x, i, centers, c);
        if (dist < best_dist) {
          best_dist = dist;
          best = static_cast<std::size_t>(c);
        }
      }
      if (labels[static_cast<std::size_t>(i)] != best) {
        labels[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }

    // Refill empty clusters with the point farthest from its center.
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t l : labels) ++counts[l];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      Eigen::Index far = 0;
      double far_dist = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const std::size_t li = labels[static_cast<std::size_t>(i)];
        if (counts[li] < 2) continue;
        const double dist = squared_distance(x, i, centers, static_cast<Eigen::Index>(li));
        if (dist > far_dist) {
          far_dist = dist;
          far = i;
        }
      }
      --counts[labels[static_cast<std::size_t>(far)]];
      labels[static_cast<std::size_t>(far)] = c;
      ++counts[c];
      changed = true;
    }

    centers.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
      centers.row(static_cast<Eigen::Index>(labels[static_cast<std::size_t>(i)])) += x.row(i);
    }
    for (std::size_t c = 0; c < k; ++c) {
      centers.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(counts[c]);
    }
    if (!changed) break;
  }

  Clustering out;
  out.labels = std::move(labels);
  out.inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.inertia += squared_distance(x, i, centers,
                                    static_cast<Eigen::Index>(out.labels[static_cast<std::size_t>(i)]));
  }
  return out;
}

std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& labels, std::size_t k) {
  std::vector<std::size_t> map(k, k);
  std::size_t next = 0;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (map[labels[i]] == k) map[labels[i]] = next++;
    out[i] = map[labels[i]];
  }
  return out;
}

double spectral_norm(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

CommunityPartition spectral_partition(const AdjacencyMatrix& a, std::size_t k,
                                      const RandomSeed& seed) {
  const std::size_t n = a.size();
  if (k == 0) throw Error(ErrorCode::invalid_argument, "K must be >= 1");
  if (k > n) {
    throw Error(ErrorCode::invalid_argument,
                "K = " + std::to_string(k) + " exceeds the node count " + std::to_string(n));
  }
  if (k == 1) return CommunityPartition(std::vector<std::size_t>(n, 0), 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense(a));
  const Eigen::VectorXd& values = solver.eigenvalues();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index lhs, Eigen::Index rhs) {
    return std::abs(values(lhs)) > std::abs(values(rhs));
  });
  Eigen::MatrixXd embedding(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (std::size_t c = 0; c < k; ++c) {
    embedding.col(static_cast<Eigen::Index>(c)) = solver.eigenvectors().col(order[c]);
  }

  auto engine = seed.engine();
  Clustering best;
  for (std::size_t r = 0; r < kRestarts; ++r) {
    auto candidate = kmeans_once(embedding, k, engine);
    if (candidate.inertia < best.inertia - 1e-12) best = std::move(candidate);
  }
  return CommunityPartition(canonical_labels(best.labels, k), k);
}

ResidualSpectralOrderTest::ResidualSpectralOrderTest(std::size_t bootstrap_count, double alpha)
    : bootstrap_count_(bootstrap_count), alpha_(alpha) {
  if (bootstrap_count_ == 0) {
    throw Error(ErrorCode::invalid_argument, "order test needs at least one bootstrap");
  }
  if (!(alpha_ > 0.0 && alpha_ < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  }
}

double ResidualSpectralOrderTest::residual_norm(const AdjacencyMatrix& a, std::size_t k,
                                                const RandomSeed& seed) {
  const auto partition = spectral_partition(a, k, seed);
  const auto fit = estimate_block_probabilities(a, partition, SingletonPolicy::zero);
  Eigen::MatrixXd residual = dense(a);
  const auto n = static_cast<Eigen::Index>(a.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) {
        residual(i, j) -= fit(partition.label(static_cast<std::size_t>(i)),
                              partition.label(static_cast<std::size_t>(j)));
      }
    }
  }
  return spectral_norm(residual);
}

double ResidualSpectralOrderTest::p_value(const AdjacencyMatrix& a, std::size_t k,
                                          const RandomSeed& seed) const {
  const auto partition = spectral_partition(a, k, seed.child(0));
  const auto fit = estimate_block_probabilities(a, partition, SingletonPolicy::zero);
  const double observed = residual_norm(a, k, seed.child(0));
  std::size_t at_least = 0;
  for (std::size_t b = 0; b < bootstrap_count_; ++b) {
    const auto replicate = sample_sbm(fit, partition, seed.child(1).child(b));
    if (residual_norm(replicate, k, seed.child(2).child(b)) >= observed) ++at_least;
  }
  return static_cast<double>(1 + at_least) / static_cast<double>(1 + bootstrap_count_);
}

bool ResidualSpectralOrderTest::rejects(const AdjacencyMatrix& a, std::size_t k,
                                        const RandomSeed& seed) const {
  // A graph cannot have more communities than nodes.
  if (k >= a.size()) return false;
  return p_value(a, k, seed) <= alpha_;
}

std::size_t sequential_common_k(std::span<const AdjacencyMatrix> networks, std::size_t k_max,
                                const OrderTest& test, const RandomSeed& seed) {
  if (networks.empty()) throw Error(ErrorCode::invalid_argument, "no networks supplied");
  if (k_max == 0) throw Error(ErrorCode::invalid_argument, "k_max must be >= 1");
  for (std::size_t k = 1; k < k_max; ++k) {
    for (std::size_t i = 0; i < networks.size(); ++i) {
      if (!test.rejects(networks[i], k, seed.child(k).child(i))) return k;
    }
  }
  return k_max;
}

std::size_t sequential_common_k(std::span<const AdjacencyMatrix> networks, std::size_t k_max,
                                const RandomSeed& seed) {
  return sequential_common_k(networks, k_max, ResidualSpectralOrderTest{}, seed);
}

}  // namespace fgt
