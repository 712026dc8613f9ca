#include "fgt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fgt/errors.hpp"

namespace fgt {
namespace {

template <typename T>
std::vector<T> flatten_square(const std::vector<std::vector<double>>& rows, const char* what) {
  const std::size_t n = rows.size();
  std::vector<T> out;
  out.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw Error(ErrorCode::dimension_mismatch, std::string(what) + " must be square");
    }
    for (double v : row) out.push_back(static_cast<T>(v));
  }
  return out;
}

void check_symmetric_probabilities(std::size_t n, const std::vector<double>& data,
                                   const char* what) {
  if (data.size() != n * n) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": expected " + std::to_string(n * n) + " entries");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      check_probability(data[i * n + j], what);
      if (data[i * n + j] != data[j * n + i]) {
        throw Error(ErrorCode::invalid_argument, std::string(what) + " must be symmetric");
      }
    }
  }
}

}  // namespace

void check_probability(double value, const char* what) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::invalid_probability,
                std::string(what) + ": probability " + std::to_string(value) + " outside [0, 1]");
  }
}

// ---------------------------------------------------------------------------

AdjacencyMatrix::AdjacencyMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

AdjacencyMatrix AdjacencyMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const auto flat = flatten_square<double>(rows, "adjacency matrix");
  const std::size_t n = rows.size();
  AdjacencyMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = flat[i * n + j];
      if (v != 0.0 && v != 1.0) {
        throw Error(ErrorCode::invalid_argument, "adjacency entries must be 0 or 1");
      }
      if (v != flat[j * n + i]) {
        throw Error(ErrorCode::invalid_argument, "adjacency matrix must be symmetric");
      }
      if (i == j && v != 0.0) {
        throw Error(ErrorCode::invalid_argument, "adjacency matrix must have a zero diagonal");
      }
      a.data_[i * n + j] = static_cast<std::uint8_t>(v);
    }
  }
  return a;
}

void AdjacencyMatrix::set_edge(std::size_t i, std::size_t j, bool present) {
  if (i >= n_ || j >= n_) throw Error(ErrorCode::invalid_argument, "node index out of range");
  if (i == j) throw Error(ErrorCode::invalid_argument, "self-loops are not allowed");
  data_[i * n_ + j] = present ? 1 : 0;
  data_[j * n_ + i] = present ? 1 : 0;
}

std::size_t AdjacencyMatrix::edge_count() const {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), 1)) / 2;
}

// ---------------------------------------------------------------------------

EdgeProbabilityMatrix::EdgeProbabilityMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), data_(std::move(entries)) {
  check_symmetric_probabilities(n_, data_, "edge probability matrix");
}

EdgeProbabilityMatrix EdgeProbabilityMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  return EdgeProbabilityMatrix(rows.size(), flatten_square<double>(rows, "edge probability matrix"));
}

EdgeProbabilityMatrix EdgeProbabilityMatrix::constant(std::size_t n, double value) {
  return EdgeProbabilityMatrix(n, std::vector<double>(n * n, value));
}

// ---------------------------------------------------------------------------

BlockProbabilityMatrix::BlockProbabilityMatrix(std::size_t k, std::vector<double> entries)
    : k_(k), data_(std::move(entries)) {
  if (k_ == 0) throw Error(ErrorCode::invalid_argument, "block matrix needs K >= 1");
  check_symmetric_probabilities(k_, data_, "block probability matrix");
}

BlockProbabilityMatrix BlockProbabilityMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  return BlockProbabilityMatrix(rows.size(),
                                flatten_square<double>(rows, "block probability matrix"));
}

BlockProbabilityMatrix BlockProbabilityMatrix::planted(std::size_t k, double p, double q) {
  check_probability(p, "p");
  check_probability(q, "q");
  std::vector<double> data(k * k, q);
  for (std::size_t u = 0; u < k; ++u) data[u * k + u] = p;
  return BlockProbabilityMatrix(k, std::move(data));
}

BlockProbabilityMatrix BlockProbabilityMatrix::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != k_) {
    throw Error(ErrorCode::dimension_mismatch, "permutation length differs from K");
  }
  std::vector<double> data(k_ * k_);
  for (std::size_t u = 0; u < k_; ++u) {
    for (std::size_t v = 0; v < k_; ++v) data[u * k_ + v] = (*this)(perm[u], perm[v]);
  }
  BlockProbabilityMatrix out;
  out.k_ = k_;
  out.data_ = std::move(data);
  return out;
}

// ---------------------------------------------------------------------------

CommunityPartition::CommunityPartition(std::vector<std::size_t> labels, std::size_t k)
    : labels_(std::move(labels)), sizes_(k, 0) {
  if (k == 0) throw Error(ErrorCode::invalid_argument, "partition needs K >= 1");
  for (std::size_t label : labels_) {
    if (label >= k) {
      throw Error(ErrorCode::invalid_argument, "community label out of range");
    }
    ++sizes_[label];
  }
  for (std::size_t u = 0; u < k; ++u) {
    if (sizes_[u] == 0) {
      throw Error(ErrorCode::degenerate_community,
                  "community " + std::to_string(u + 1) + " is empty");
    }
  }
}

CommunityPartition CommunityPartition::from_sizes(std::span<const std::size_t> sizes) {
  std::vector<std::size_t> labels;
  for (std::size_t u = 0; u < sizes.size(); ++u) labels.insert(labels.end(), sizes[u], u);
  return CommunityPartition(std::move(labels), sizes.size());
}

CommunityPartition CommunityPartition::balanced(std::size_t n, std::size_t k) {
  if (k == 0 || n < k) {
    throw Error(ErrorCode::invalid_argument, "balanced partition needs 1 <= K <= n");
  }
  std::vector<double> raw(k, static_cast<double>(n) / static_cast<double>(k));
  const auto sizes = largest_remainder_round(raw, n, 1);
  return from_sizes(sizes);
}

CommunityPartition CommunityPartition::relabeled(std::span<const std::size_t> perm) const {
  if (perm.size() != communities()) {
    throw Error(ErrorCode::dimension_mismatch, "permutation length differs from K");
  }
  std::vector<std::size_t> labels(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) labels[i] = perm[labels_[i]];
  return CommunityPartition(std::move(labels), communities());
}

// ---------------------------------------------------------------------------

UniformField UniformField::draw(std::size_t n, const RandomSeed& seed) {
  UniformField field;
  field.n_ = n;
  field.values_.resize(n < 2 ? 0 : n * (n - 1) / 2);
  auto engine = seed.engine();
  for (double& v : field.values_) v = uniform01(engine);
  return field;
}

double UniformField::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return 1.0;
  if (i > j) std::swap(i, j);
  // Offset of row i in the packed upper triangle.
  const std::size_t offset = i * n_ - i * (i + 1) / 2;
  return values_[offset + (j - i - 1)];
}

AdjacencyMatrix UniformField::threshold(const BlockProbabilityMatrix& b,
                                        const CommunityPartition& partition) const {
  if (partition.nodes() != n_) {
    throw Error(ErrorCode::dimension_mismatch, "partition size differs from field size");
  }
  if (partition.communities() != b.communities()) {
    throw Error(ErrorCode::dimension_mismatch, "block matrix K differs from partition K");
  }
  AdjacencyMatrix a(n_);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t u = partition.label(i);
    for (std::size_t j = i + 1; j < n_; ++j, ++idx) {
      if (values_[idx] < b(u, partition.label(j))) a.set_edge(i, j, true);
    }
  }
  return a;
}

// ---------------------------------------------------------------------------

AdjacencyMatrix sample_ier(const EdgeProbabilityMatrix& p, const RandomSeed& seed) {
  const std::size_t n = p.size();
  AdjacencyMatrix a(n);
  auto engine = seed.engine();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uniform01(engine) < p(i, j)) a.set_edge(i, j, true);
    }
  }
  return a;
}

AdjacencyMatrix sample_sbm(const BlockProbabilityMatrix& b, const CommunityPartition& partition,
                           const RandomSeed& seed) {
  if (partition.communities() != b.communities()) {
    throw Error(ErrorCode::dimension_mismatch, "block matrix K differs from partition K");
  }
  const std::size_t n = partition.nodes();
  AdjacencyMatrix a(n);
  auto engine = seed.engine();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t u = partition.label(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uniform01(engine) < b(u, partition.label(j))) a.set_edge(i, j, true);
    }
  }
  return a;
}

EdgeProbabilityMatrix planted_probability_matrix(std::size_t k, double p, double q,
                                                 const CommunityPartition& partition) {
  check_probability(p, "p");
  check_probability(q, "q");
  if (partition.communities() != k) {
    throw Error(ErrorCode::dimension_mismatch, "partition K differs from requested K");
  }
  const std::size_t n = partition.nodes();
  std::vector<double> data(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) data[i * n + j] = partition.label(i) == partition.label(j) ? p : q;
    }
  }
  return EdgeProbabilityMatrix(n, std::move(data));
}

std::vector<std::size_t> largest_remainder_round(std::span<const double> raw, std::size_t total,
                                                 std::size_t minimum) {
  const std::size_t k = raw.size();
  if (k == 0 || k * minimum > total) {
    throw Error(ErrorCode::invalid_argument, "cannot allocate sizes under the minimum");
  }
  std::vector<std::size_t> sizes(k);
  std::size_t sum = 0;
  for (std::size_t u = 0; u < k; ++u) {
    const double floored = std::floor(std::max(raw[u], 0.0));
    sizes[u] = std::max(minimum, static_cast<std::size_t>(floored));
    sum += sizes[u];
  }
  auto slack = [&](std::size_t u) { return raw[u] - static_cast<double>(sizes[u]); };
  while (sum < total) {
    std::size_t best = 0;
    for (std::size_t u = 1; u < k; ++u) {
      if (slack(u) > slack(best)) best = u;
    }
    ++sizes[best];
    ++sum;
  }
  while (sum > total) {
    std::size_t best = k;
    for (std::size_t u = 0; u < k; ++u) {
      if (sizes[u] <= minimum) continue;
      if (best == k || slack(u) < slack(best)) best = u;
    }
    --sizes[best];
    --sum;
  }
  return sizes;
}

}  // namespace fgt
