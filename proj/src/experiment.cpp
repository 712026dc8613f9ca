#include "fgt/experiment.hpp"

#include <bit>
#include <ostream>

#include "fgt/baseline.hpp"
#include "fgt/community.hpp"
#include "fgt/errors.hpp"
#include "fgt/parallel.hpp"

namespace fgt {
namespace {

ReplicateOutcome run_replicate(const ExperimentConfig& config, std::size_t k, double epsilon,
                               std::size_t d, const RandomSeed& rep) {
  const auto g_model = BlockProbabilityMatrix::planted(k, config.p, config.q);
  const auto h_model = BlockProbabilityMatrix::planted(k, config.p + epsilon, config.q + epsilon);
  const auto g_planted = CommunityPartition::balanced(config.n_g, k);
  const auto h_planted = CommunityPartition::balanced(config.n_h, k);

  std::vector<AdjacencyMatrix> g, h;
  for (std::size_t l = 0; l < config.m; ++l) {
    g.push_back(sample_sbm(g_model, g_planted, rep.child(0).child(l)));
    h.push_back(sample_sbm(h_model, h_planted, rep.child(1).child(l)));
  }

  TestResult result;
  if (config.method == Method::asymp_normal) {
    result = asymp_normal_test(g, h, config.alpha);
  } else {
    std::vector<CommunityPartition> g_parts{g_planted}, h_parts{h_planted};
    if (config.detect_communities) {
      g_parts.clear();
      h_parts.clear();
      for (std::size_t l = 0; l < config.m; ++l) {
        g_parts.push_back(spectral_partition(g[l], k, rep.child(3).child(l)));
        h_parts.push_back(spectral_partition(h[l], k, rep.child(4).child(l)));
      }
    }
    TestConfig test;
    test.bootstrap.d = d;
    test.bootstrap.tau = config.tau;
    test.bootstrap.seed = rep.child(2).child(d);
    test.alpha = config.alpha;
    test.sidedness = config.sidedness;
    test.fixed_weights = config.fixed_weights;
    result = run_test(g, h, g_parts, h_parts, test);
  }
  return {result.reject,    result.statistic, result.null_params.mu, result.null_params.sigma2,
          result.z,         result.p_value};
}

double rate_of(std::size_t hits, std::size_t runs) {
  return static_cast<double>(hits) / static_cast<double>(runs);
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.m == 0) throw Error(ErrorCode::invalid_argument, "m must be >= 1");
  if (config.replicates == 0) throw Error(ErrorCode::invalid_argument, "replicates must be >= 1");
  if (config.k_values.empty() || config.d_values.empty() || config.epsilons.empty()) {
    throw Error(ErrorCode::invalid_argument, "K, d and epsilon lists must be nonempty");
  }
  check_probability(config.p, "p");
  check_probability(config.q, "q");
  for (double eps : config.epsilons) {
    check_probability(config.p + eps, "p + epsilon");
    check_probability(config.q + eps, "q + epsilon");
  }
  for (std::size_t k : config.k_values) {
    if (k == 0 || k > config.n_g || k > config.n_h) {
      throw Error(ErrorCode::invalid_argument, "K must lie in [1, min(nG, nH)]");
    }
    if (config.fixed_weights && config.fixed_weights->size() != k) {
      throw Error(ErrorCode::dimension_mismatch, "fixed weights need one entry per community");
    }
  }
  for (std::size_t d : config.d_values) {
    if (d == 0) throw Error(ErrorCode::invalid_argument, "d must be >= 1");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  }
  if (!(config.tau >= 0.0)) throw Error(ErrorCode::invalid_argument, "tau must be >= 0");
  if (config.method == Method::asymp_normal) {
    if (config.n_g != config.n_h) {
      throw Error(ErrorCode::dimension_mismatch, "asymp-normal needs nG == nH");
    }
    if (config.m < 2 || config.m % 2 != 0) {
      throw Error(ErrorCode::invalid_argument, "asymp-normal needs an even m >= 2");
    }
  }
}

std::vector<ReplicateOutcome> collect_replicates(const ExperimentConfig& config, std::size_t k,
                                                 double epsilon, std::size_t d) {
  const RandomSeed cell = config.seed.child(k).child(std::bit_cast<std::uint64_t>(epsilon));
  std::vector<ReplicateOutcome> out(config.replicates);
  parallel_for(
      config.replicates,
      [&](std::size_t r) { out[r] = run_replicate(config, k, epsilon, d, cell.child(r)); },
      config.workers);
  return out;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::vector<ExperimentRow> rows;
  for (std::size_t d : config.d_values) {
    for (std::size_t k : config.k_values) {
      for (double eps : config.epsilons) {
        ExperimentRow row{d, k, eps, config.replicates};
        for (const auto& o : collect_replicates(config, k, eps, d)) row.rejections += o.reject;
        row.rejection_rate = rate_of(row.rejections, row.replicates);
        row.monte_carlo_se = binomial_se(row.rejection_rate, row.replicates);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::vector<SweepRow> run_power_sweep(const SweepConfig& config) {
  if (config.sizes.empty()) throw Error(ErrorCode::invalid_argument, "size grid is empty");
  std::vector<SweepRow> rows;
  for (std::size_t n : config.sizes) {
    for (Method method : config.methods) {
      ExperimentConfig point = config.base;
      point.method = method;
      point.n_g = n;
      point.n_h = method == Method::frobenius ? n + config.n_h_offset : n;
      point.epsilons = config.epsilons;
      point.k_values.resize(1);
      point.d_values.resize(1);
      for (const auto& r : run_experiment(point)) {
        rows.push_back({n, point.n_h, method, r.epsilon, r.replicates, r.rejection_rate,
                        r.monte_carlo_se});
      }
    }
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "d,K,epsilon,replicates,rejections,rejection_rate,monte_carlo_se\n";
  for (const auto& r : rows) {
    out << r.d << ',' << r.k << ',' << r.epsilon << ',' << r.replicates << ',' << r.rejections
        << ',' << r.rejection_rate << ',' << r.monte_carlo_se << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "n,n_h,method,epsilon,replicates,rejection_rate,monte_carlo_se\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.n_h << ',' << to_string(r.method) << ',' << r.epsilon << ','
        << r.replicates << ',' << r.rejection_rate << ',' << r.monte_carlo_se << '\n';
  }
}

namespace {

template <typename T>
std::vector<T> scalar_or_list(const nlohmann::json& v) {
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

template <typename T>
void read_list(const nlohmann::json& j, std::initializer_list<const char*> keys,
               std::vector<T>& out) {
  for (const char* key : keys) {
    if (j.contains(key)) {
      out = scalar_or_list<T>(j.at(key));
      return;
    }
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.n_g = j.value("nG", c.n_g);
    c.n_h = j.value("nH", c.n_h);
    c.m = j.value("m", c.m);
    read_list(j, {"K", "k_values"}, c.k_values);
    c.p = j.value("p", c.p);
    c.q = j.value("q", c.q);
    read_list(j, {"epsilon", "epsilons"}, c.epsilons);
    c.tau = j.value("tau", c.tau);
    read_list(j, {"d", "d_values"}, c.d_values);
    c.replicates = j.value("replicates", c.replicates);
    c.alpha = j.value("alpha", c.alpha);
    c.seed = RandomSeed(j.value("seed", std::uint64_t{0}));
    c.method = parse_method(j.value("method", std::string("frobenius")));
    const std::string side = j.value("sidedness", std::string("two-sided"));
    if (side == "two-sided") {
      c.sidedness = Sidedness::two_sided;
    } else if (side == "upper") {
      c.sidedness = Sidedness::upper;
    } else {
      throw Error(ErrorCode::parse_error, "sidedness must be 'two-sided' or 'upper'");
    }
    c.detect_communities = j.value("detect_communities", false);
    if (j.contains("weights")) c.fixed_weights = j.at("weights").get<std::vector<double>>();
    c.workers = j.value("workers", c.workers);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("config: ") + e.what());
  }
  validate(c);
  return c;
}

SweepConfig parse_sweep_config(const nlohmann::json& j) {
  SweepConfig s;
  nlohmann::json base = j;
  // Sweep-specific keys would fail the base validation (e.g. a method list).
  for (const char* key : {"sizes", "methods", "nH_offset", "epsilon", "epsilons"}) base.erase(key);
  s.base = parse_experiment_config(base);
  try {
    read_list(j, {"sizes"}, s.sizes);
    s.n_h_offset = j.value("nH_offset", s.n_h_offset);
    read_list(j, {"epsilon", "epsilons"}, s.epsilons);
    if (j.contains("methods")) {
      s.methods.clear();
      for (const auto& name : scalar_or_list<std::string>(j.at("methods"))) {
        s.methods.push_back(parse_method(name));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("config: ") + e.what());
  }
  return s;
}

std::string to_string(Method method) {
  return method == Method::frobenius ? "frobenius" : "asymp-normal";
}

Method parse_method(const std::string& name) {
  if (name == "frobenius") return Method::frobenius;
  if (name == "asymp-normal") return Method::asymp_normal;
  throw Error(ErrorCode::parse_error, "unknown method '" + name + "'");
}

}  // namespace fgt
