#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fgt/frobenius_test.hpp"
#include "fgt/random.hpp"

namespace fgt {

enum class Method { frobenius, asymp_normal };

struct ExperimentConfig {
  std::size_t n_g = 200;
  std::size_t n_h = 100;
  std::size_t m = 2;
  std::vector<std::size_t> k_values{2};
  double p = 0.1;
  double q = 0.05;
  std::vector<double> epsilons{0.0};  // H uses p + eps, q + eps
  double tau = 0.0;
  std::vector<std::size_t> d_values{2};
  std::size_t replicates = 1000;
  double alpha = 0.05;
  RandomSeed seed{0};
  Method method = Method::frobenius;
  Sidedness sidedness = Sidedness::two_sided;
  // Partition the original samples spectrally instead of passing the planted
  // labels to the test.
  bool detect_communities = false;
  // Bootstrap weights held fixed across replicates (one per community; only
  // meaningful with a single K).
  std::optional<std::vector<double>> fixed_weights;
  std::size_t workers = 0;  // 0: hardware concurrency
};

void validate(const ExperimentConfig& config);

struct ReplicateOutcome {
  bool reject = false;
  double statistic = 0.0;
  double mu = 0.0;
  double sigma2 = 0.0;
  double z = 0.0;
  double p_value = 1.0;
};

/// Every replicate of one (K, eps, d) cell, in replicate order. Replicate r
/// draws its graphs from seed.child(K).child(bits(eps)).child(r), so the same
/// graphs are reused across d values.
std::vector<ReplicateOutcome> collect_replicates(const ExperimentConfig& config, std::size_t k,
                                                 double epsilon, std::size_t d);

struct ExperimentRow {
  std::size_t d = 0;
  std::size_t k = 0;
  double epsilon = 0.0;
  std::size_t replicates = 0;
  std::size_t rejections = 0;
  double rejection_rate = 0.0;
  double monte_carlo_se = 0.0;
};

/// One row per (d, K, eps) cell, ordered by d, then K, then eps.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

struct SweepConfig {
  ExperimentConfig base;  // n_g / n_h / epsilons / method are overridden per point
  std::vector<std::size_t> sizes{100, 200, 300};
  std::size_t n_h_offset = 100;  // Frobenius uses n_h = n_g + offset
  std::vector<double> epsilons{0.0, 0.04};
  std::vector<Method> methods{Method::frobenius, Method::asymp_normal};
};

struct SweepRow {
  std::size_t n = 0;  // n_g
  std::size_t n_h = 0;
  Method method = Method::frobenius;
  double epsilon = 0.0;
  std::size_t replicates = 0;
  double rejection_rate = 0.0;
  double monte_carlo_se = 0.0;
};

/// Rejection rates per size, method and eps. Asymp-Normal needs a common
/// vertex set and runs at n_h = n_g.
std::vector<SweepRow> run_power_sweep(const SweepConfig& config);

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Scalars and lists are both accepted for "K", "d" and "epsilon".
ExperimentConfig parse_experiment_config(const nlohmann::json& j);
SweepConfig parse_sweep_config(const nlohmann::json& j);

std::string to_string(Method method);
Method parse_method(const std::string& name);

}  // namespace fgt
