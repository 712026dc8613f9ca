#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fgt/graph.hpp"
#include "fgt/matrix_io.hpp"
#include "fgt/random.hpp"

namespace fgt {

/// Symmetric matrix with unit diagonal and entries in [-1, 1].
class CorrelationMatrix {
 public:
  CorrelationMatrix() = default;
  CorrelationMatrix(std::size_t n, std::vector<double> entries);
  static CorrelationMatrix from_rows(const Rows& rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Pearson correlation between the rows (ROIs) of an ROI x time matrix.
CorrelationMatrix correlation_from_series(const Rows& series);

/// Keeps the edge_count unordered pairs with the largest |r|. Ties are broken
/// by the smaller i, then the smaller j.
AdjacencyMatrix threshold_to_adjacency(const CorrelationMatrix& c, std::size_t edge_count);

/// round(density * n (n - 1) / 2).
std::size_t edge_count_for_density(std::size_t n, double density);

/// "*" for p <= 0.05 up to "****" for p <= 0.0001; empty otherwise.
std::string significance_stars(double p_value);

using ConditionMatrix = std::variant<CorrelationMatrix, AdjacencyMatrix>;

/// One experimental condition; matrices[s] belongs to subject s.
struct ConditionDataset {
  std::string condition_name;
  std::vector<ConditionMatrix> matrices;
};

struct PipelineConfig {
  double density = 0.3;
  std::size_t d = 100;
  double tau = 0.0;
  double alpha = 0.05;
  std::size_t k_max = 6;
  std::size_t order_bootstraps = 50;
  std::optional<std::size_t> fixed_k;
  RandomSeed seed{0};
};

struct ReportRow {
  std::string subject;
  std::size_t k_hat = 0;
  std::string condition_a;
  std::string condition_b;
  double statistic = 0.0;
  double z = 0.0;
  double p_value = 1.0;
  bool reject = false;
  std::string stars;
  std::string error;  // non-empty when this row failed

  std::string pair() const { return condition_a + " vs " + condition_b; }
  std::string decision() const;
};

/// Per subject: threshold every condition to a common density, pick a common
/// K sequentially, partition each graph spectrally and test every unordered
/// condition pair with one graph per side. Failures are reported per row.
std::vector<ReportRow> pairwise_condition_tests(const std::vector<ConditionDataset>& datasets,
                                                const std::vector<std::string>& subject_ids,
                                                const PipelineConfig& config);

struct Manifest {
  std::vector<std::string> subject_ids;
  std::vector<ConditionDataset> conditions;
};

/// JSON manifest:
///   {"kind": "series" | "correlation" | "adjacency",
///    "conditions": ["stimulus-1", "stimulus-2", "control"],
///    "subjects": [{"id": "04799", "files": {"stimulus-1": "s1.csv", ...}}]}
/// Relative paths resolve against the manifest's directory. A subject may
/// override "kind".
Manifest load_manifest(const std::filesystem::path& path);

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);
nlohmann::json report_json(const std::vector<ReportRow>& rows);

}  // namespace fgt
