#include "fgt/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <tuple>

#include "fgt/community.hpp"
#include "fgt/errors.hpp"
#include "fgt/frobenius_test.hpp"
#include "fgt/parallel.hpp"

namespace fgt {

CorrelationMatrix::CorrelationMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), data_(std::move(entries)) {
  if (data_.size() != n_ * n_) {
    throw Error(ErrorCode::dimension_mismatch, "correlation matrix must be square");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (std::abs(data_[i * n_ + i] - 1.0) > 1e-9) {
      throw Error(ErrorCode::invalid_argument, "correlation matrix needs a unit diagonal");
    }
    data_[i * n_ + i] = 1.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = data_[i * n_ + j];
      if (!(v >= -1.0 - 1e-9 && v <= 1.0 + 1e-9)) {
        throw Error(ErrorCode::invalid_argument, "correlation entries must lie in [-1, 1]");
      }
      if (std::abs(v - data_[j * n_ + i]) > 1e-12) {
        throw Error(ErrorCode::invalid_argument, "correlation matrix must be symmetric");
      }
      data_[i * n_ + j] = std::clamp(v, -1.0, 1.0);
    }
  }
}

CorrelationMatrix CorrelationMatrix::from_rows(const Rows& rows) {
  std::vector<double> flat;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw Error(ErrorCode::dimension_mismatch, "correlation matrix must be square");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return CorrelationMatrix(rows.size(), std::move(flat));
}

CorrelationMatrix correlation_from_series(const Rows& series) {
  const std::size_t n = series.size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "series has no ROIs");
  const std::size_t t = series.front().size();
  if (t < 2) throw Error(ErrorCode::invalid_argument, "series needs at least 2 time points");

  std::vector<std::vector<double>> centered(n, std::vector<double>(t));
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (series[i].size() != t) throw Error(ErrorCode::dimension_mismatch, "ragged series rows");
    double mean = 0.0;
    for (double x : series[i]) mean += x;
    mean /= static_cast<double>(t);
    double ss = 0.0;
    for (std::size_t s = 0; s < t; ++s) {
      centered[i][s] = series[i][s] - mean;
      ss += centered[i][s] * centered[i][s];
    }
    if (ss <= 0.0) {
      throw Error(ErrorCode::zero_variance,
                  "ROI " + std::to_string(i + 1) + " is constant; its correlation is undefined");
    }
    norms[i] = std::sqrt(ss);
  }

  std::vector<double> r(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t s = 0; s < t; ++s) dot += centered[i][s] * centered[j][s];
      const double v = std::clamp(dot / (norms[i] * norms[j]), -1.0, 1.0);
      r[i * n + j] = v;
      r[j * n + i] = v;
    }
  }
  return CorrelationMatrix(n, std::move(r));
}

AdjacencyMatrix threshold_to_adjacency(const CorrelationMatrix& c, std::size_t edge_count) {
  const std::size_t n = c.size();
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (edge_count > pairs) {
    throw Error(ErrorCode::invalid_argument, "edge count " + std::to_string(edge_count) +
                                                 " exceeds the " + std::to_string(pairs) +
                                                 " available pairs");
  }
  std::vector<std::tuple<double, std::size_t, std::size_t>> ranked;
  ranked.reserve(pairs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) ranked.emplace_back(std::abs(c(i, j)), i, j);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& lhs, const auto& rhs) {
    if (std::get<0>(lhs) != std::get<0>(rhs)) return std::get<0>(lhs) > std::get<0>(rhs);
    return std::tie(std::get<1>(lhs), std::get<2>(lhs)) < std::tie(std::get<1>(rhs), std::get<2>(rhs));
  });
  AdjacencyMatrix a(n);
  for (std::size_t e = 0; e < edge_count; ++e) {
    a.set_edge(std::get<1>(ranked[e]), std::get<2>(ranked[e]), true);
  }
  return a;
}

std::size_t edge_count_for_density(std::size_t n, double density) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "edge density must lie in [0, 1]");
  }
  const double pairs = n < 2 ? 0.0 : static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return static_cast<std::size_t>(std::llround(density * pairs));
}

std::string significance_stars(double p_value) {
  if (p_value <= 0.0001) return "****";
  if (p_value <= 0.001) return "***";
  if (p_value <= 0.01) return "**";
  if (p_value <= 0.05) return "*";
  return "";
}

std::string ReportRow::decision() const {
  if (!error.empty()) return "error";
  return reject ? "reject" : "fail to reject";
}

namespace {

AdjacencyMatrix to_graph(const ConditionMatrix& matrix, double density) {
  if (const auto* a = std::get_if<AdjacencyMatrix>(&matrix)) return *a;
  const auto& c = std::get<CorrelationMatrix>(matrix);
  return threshold_to_adjacency(c, edge_count_for_density(c.size(), density));
}

std::vector<ReportRow> subject_rows(const std::vector<ConditionDataset>& datasets,
                                    std::size_t subject, const std::string& subject_id,
                                    const PipelineConfig& config) {
  const RandomSeed seed = config.seed.child(subject);
  std::vector<ReportRow> rows;
  for (std::size_t a = 0; a < datasets.size(); ++a) {
    for (std::size_t b = a + 1; b < datasets.size(); ++b) {
      ReportRow row;
      row.subject = subject_id;
      row.condition_a = datasets[a].condition_name;
      row.condition_b = datasets[b].condition_name;
      rows.push_back(row);
    }
  }
  auto fail_all = [&](const std::string& message) {
    for (auto& row : rows) row.error = message;
    return rows;
  };

  std::vector<AdjacencyMatrix> graphs;
  std::size_t k_hat = 0;
  std::vector<CommunityPartition> partitions;
  try {
    for (const auto& dataset : datasets) {
      graphs.push_back(to_graph(dataset.matrices.at(subject), config.density));
    }
    k_hat = config.fixed_k ? *config.fixed_k
                           : sequential_common_k(graphs, config.k_max,
                                                 ResidualSpectralOrderTest(config.order_bootstraps,
                                                                           config.alpha),
                                                 seed.child(0));
    for (std::size_t c = 0; c < graphs.size(); ++c) {
      partitions.push_back(spectral_partition(graphs[c], k_hat, seed.child(1).child(c)));
    }
  } catch (const std::exception& e) {
    return fail_all(e.what());
  }

  TestConfig test_config;
  test_config.bootstrap.d = config.d;
  test_config.bootstrap.tau = config.tau;
  test_config.alpha = config.alpha;
  std::size_t index = 0;
  for (std::size_t a = 0; a < datasets.size(); ++a) {
    for (std::size_t b = a + 1; b < datasets.size(); ++b, ++index) {
      ReportRow& row = rows[index];
      row.k_hat = k_hat;
      try {
        test_config.bootstrap.seed = seed.child(2).child(index);
        const auto result =
            run_test(std::span(&graphs[a], 1), std::span(&graphs[b], 1),
                     std::span(&partitions[a], 1), std::span(&partitions[b], 1), test_config);
        row.statistic = result.statistic;
        row.z = result.z;
        row.p_value = result.p_value;
        row.reject = result.reject;
        row.stars = significance_stars(result.p_value);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<ReportRow> pairwise_condition_tests(const std::vector<ConditionDataset>& datasets,
                                                const std::vector<std::string>& subject_ids,
                                                const PipelineConfig& config) {
  if (datasets.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "need at least two conditions to compare");
  }
  const std::size_t subjects = datasets.front().matrices.size();
  for (const auto& dataset : datasets) {
    if (dataset.matrices.size() != subjects) {
      throw Error(ErrorCode::dimension_mismatch,
                  "condition '" + dataset.condition_name + "' has a different subject count");
    }
  }
  if (!subject_ids.empty() && subject_ids.size() != subjects) {
    throw Error(ErrorCode::dimension_mismatch, "subject id count differs from subject count");
  }

  std::vector<std::vector<ReportRow>> per_subject(subjects);
  parallel_for(subjects, [&](std::size_t s) {
    const std::string id = subject_ids.empty() ? std::to_string(s + 1) : subject_ids[s];
    per_subject[s] = subject_rows(datasets, s, id, config);
  });
  std::vector<ReportRow> rows;
  for (auto& block : per_subject) rows.insert(rows.end(), block.begin(), block.end());
  return rows;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("manifest: ") + e.what());
  }
  const auto base = path.parent_path();
  Manifest manifest;
  try {
    const std::string default_kind = j.value("kind", "correlation");
    for (const auto& name : j.at("conditions")) {
      manifest.conditions.push_back({name.get<std::string>(), {}});
    }
    for (const auto& subject : j.at("subjects")) {
      manifest.subject_ids.push_back(subject.at("id").get<std::string>());
      const std::string kind = subject.value("kind", default_kind);
      for (auto& condition : manifest.conditions) {
        auto file = std::filesystem::path(subject.at("files").at(condition.condition_name).get<std::string>());
        if (file.is_relative()) file = base / file;
        const auto rows = read_csv_rows(file);
        if (kind == "series") {
          condition.matrices.emplace_back(correlation_from_series(rows));
        } else if (kind == "correlation") {
          condition.matrices.emplace_back(CorrelationMatrix::from_rows(rows));
        } else if (kind == "adjacency") {
          condition.matrices.emplace_back(AdjacencyMatrix::from_rows(rows));
        } else {
          throw Error(ErrorCode::parse_error, "manifest: unknown kind '" + kind + "'");
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("manifest: ") + e.what());
  }
  return manifest;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "subject,k_hat,pair,T,z,p_value,decision,stars\n";
  for (const auto& row : rows) {
    out << row.subject << ',' << row.k_hat << ',' << row.pair() << ',';
    if (row.error.empty()) {
      out << row.statistic << ',' << row.z << ',' << row.p_value;
    } else {
      out << ",,";
    }
    out << ',' << row.decision() << ',' << row.stars << '\n';
  }
}

nlohmann::json report_json(const std::vector<ReportRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j{{"subject", row.subject}, {"k_hat", row.k_hat},
                     {"pair", row.pair()},     {"decision", row.decision()},
                     {"stars", row.stars}};
    if (row.error.empty()) {
      j["T"] = row.statistic;
      j["z"] = std::isfinite(row.z) ? nlohmann::json(row.z) : nlohmann::json(nullptr);
      j["p_value"] = row.p_value;
    } else {
      j["error"] = row.error;
    }
    out.push_back(j);
  }
  return out;
}

}  // namespace fgt
