#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fgt/random.hpp"

namespace fgt {

/// Undirected, unweighted graph on n nodes stored as a dense 0/1 matrix.
/// Symmetry and a zero diagonal hold by construction: the only mutator sets
/// both (i, j) and (j, i) and refuses the diagonal.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n);

  // Validates 0/1 entries, symmetry and zero diagonal.
  static AdjacencyMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j] != 0; }
  std::span<const std::uint8_t> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }

  void set_edge(std::size_t i, std::size_t j, bool present);
  std::size_t edge_count() const;

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> data_;
};

/// IER edge probabilities P (n x n, symmetric, entries in [0, 1]).
class EdgeProbabilityMatrix {
 public:
  EdgeProbabilityMatrix() = default;
  EdgeProbabilityMatrix(std::size_t n, std::vector<double> entries);
  static EdgeProbabilityMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static EdgeProbabilityMatrix constant(std::size_t n, double value);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// K x K community-wise edge probabilities (P_com / Q_com and estimates).
class BlockProbabilityMatrix {
 public:
  BlockProbabilityMatrix() = default;
  BlockProbabilityMatrix(std::size_t k, std::vector<double> entries);
  static BlockProbabilityMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static BlockProbabilityMatrix planted(std::size_t k, double p, double q);

  std::size_t communities() const noexcept { return k_; }
  double operator()(std::size_t u, std::size_t v) const { return data_[u * k_ + v]; }
  std::span<const double> entries() const noexcept { return data_; }

  /// perm[u] is the community whose probabilities block u takes on:
  /// result(u, v) = (*this)(perm[u], perm[v]).
  BlockProbabilityMatrix permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const BlockProbabilityMatrix&, const BlockProbabilityMatrix&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<double> data_;
};

/// Node -> community assignment. Labels are 0-based internally; external
/// records print them 1-based.
class CommunityPartition {
 public:
  CommunityPartition() = default;
  CommunityPartition(std::vector<std::size_t> labels, std::size_t k);

  /// Contiguous partition: the first sizes[0] nodes form community 0, etc.
  static CommunityPartition from_sizes(std::span<const std::size_t> sizes);
  /// Contiguous, as equal as possible (larger blocks first).
  static CommunityPartition balanced(std::size_t n, std::size_t k);

  std::size_t nodes() const noexcept { return labels_.size(); }
  std::size_t communities() const noexcept { return sizes_.size(); }
  std::size_t label(std::size_t i) const { return labels_[i]; }
  std::span<const std::size_t> labels() const noexcept { return labels_; }
  std::span<const std::size_t> block_sizes() const noexcept { return sizes_; }

  /// Relabels community u as perm[u].
  CommunityPartition relabeled(std::span<const std::size_t> perm) const;

  friend bool operator==(const CommunityPartition&, const CommunityPartition&) = default;

 private:
  std::vector<std::size_t> labels_;
  std::vector<std::size_t> sizes_;
};

/// One uniform draw per unordered pair (i < j), in row-major upper-triangle
/// order. Thresholding this field against a probability matrix is exactly how
/// every random graph in the library is sampled, which is what makes the
/// common-random-numbers coupling across permutations possible.
class UniformField {
 public:
  UniformField() = default;
  static UniformField draw(std::size_t n, const RandomSeed& seed);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const;
  std::span<const double> upper() const noexcept { return values_; }

  AdjacencyMatrix threshold(const BlockProbabilityMatrix& b,
                            const CommunityPartition& partition) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

AdjacencyMatrix sample_ier(const EdgeProbabilityMatrix& p, const RandomSeed& seed);

AdjacencyMatrix sample_sbm(const BlockProbabilityMatrix& b, const CommunityPartition& partition,
                           const RandomSeed& seed);

/// P_ij = p within a community, q across, zero on the diagonal.
EdgeProbabilityMatrix planted_probability_matrix(std::size_t k, double p, double q,
                                                 const CommunityPartition& partition);

/// Per-community counts rounded from `raw` by largest remainder, each at least
/// `minimum`, summing to `total`. Ties go to the lower community index.
std::vector<std::size_t> largest_remainder_round(std::span<const double> raw, std::size_t total,
                                                 std::size_t minimum);

void check_probability(double value, const char* what);

}  // namespace fgt
