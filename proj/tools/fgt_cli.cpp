// Command-line front end: simulations, single tests, K detection and the
// condition-comparison pipeline.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "fgt/community.hpp"
#include "fgt/errors.hpp"
#include "fgt/experiment.hpp"
#include "fgt/frobenius_test.hpp"
#include "fgt/matrix_io.hpp"
#include "fgt/pipeline.hpp"

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fgt::Error(fgt::ErrorCode::io_error, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw fgt::Error(fgt::ErrorCode::parse_error, path + ": " + e.what());
  }
}

std::vector<fgt::AdjacencyMatrix> load_all(const std::vector<std::string>& files) {
  std::vector<fgt::AdjacencyMatrix> out;
  for (const auto& f : files) out.push_back(fgt::load_adjacency(f));
  return out;
}

int print_error(std::string_view code, const std::string& message) {
  std::cerr << json{{"error", {{"code", code}, {"message", message}}}}.dump() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sample testing for random graphs of unequal size"};
  app.require_subcommand(1);

  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo rejection-rate table (CSV)");
  simulate->add_option("--config", config_path,
                       "JSON with nG=200, nH=100, m=2, K=2, p=0.1, q=0.05, epsilon=0, tau=0, "
                       "d=2, replicates=1000, alpha=0.05, seed=0, method=frobenius, "
                       "sidedness=two-sided, detect_communities=false, weights, workers=0")
      ->required();

  auto* sweep = app.add_subcommand("sweep", "Power against graph size (CSV)");
  sweep->add_option("--config", config_path,
                    "simulate keys plus sizes=[100,200,300], nH_offset=100, "
                    "epsilon=[0,0.04], methods=[frobenius,asymp-normal]")
      ->required();

  std::vector<std::string> g_files, h_files;
  std::optional<std::size_t> k_opt;
  std::size_t d = 2;
  std::size_t k_max = 6;
  double tau = 0.0;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  std::string sidedness = "two-sided";
  auto* test = app.add_subcommand("test", "Test two graph sequences (JSON result)");
  test->set_help_flag("--help", "Print this help message and exit");  // -h is taken by --h
  test->add_option("--g", g_files, "adjacency CSVs of the G sequence")->required();
  test->add_option("--h", h_files, "adjacency CSVs of the H sequence")->required();
  test->add_option("--k", k_opt, "communities; detected sequentially when omitted");
  test->add_option("--kmax", k_max, "largest K considered by detection")->capture_default_str();
  test->add_option("--d", d, "bootstrap replicates per sample")->capture_default_str();
  test->add_option("--tau", tau, "block-size dispersion")->capture_default_str();
  test->add_option("--alpha", alpha, "significance level")->capture_default_str();
  test->add_option("--seed", seed, "random seed")->capture_default_str();
  test->add_option("--sidedness", sidedness, "two-sided or upper")
      ->check(CLI::IsMember({"two-sided", "upper"}))
      ->capture_default_str();

  std::vector<std::string> inputs;
  std::size_t order_bootstraps = 50;
  auto* detect = app.add_subcommand("detect-k", "Common number of communities (JSON)");
  detect->add_option("--inputs", inputs, "adjacency CSVs")->required();
  detect->add_option("--kmax", k_max, "largest K considered")->capture_default_str();
  detect->add_option("--bootstraps", order_bootstraps, "order-test bootstraps")
      ->capture_default_str();
  detect->add_option("--alpha", alpha, "order-test level")->capture_default_str();
  detect->add_option("--seed", seed, "random seed")->capture_default_str();

  std::string manifest_path;
  fgt::PipelineConfig pipeline_config;
  std::uint64_t pipeline_seed = 0;
  bool as_json = false;
  auto* pipeline = app.add_subcommand("pipeline", "Pairwise condition tests per subject");
  pipeline->add_option("--manifest", manifest_path, "JSON manifest")->required();
  pipeline->add_option("--density", pipeline_config.density, "edge density after thresholding")
      ->capture_default_str();
  pipeline->add_option("--d", pipeline_config.d, "bootstrap replicates")->capture_default_str();
  pipeline->add_option("--tau", pipeline_config.tau, "block-size dispersion")
      ->capture_default_str();
  pipeline->add_option("--alpha", pipeline_config.alpha, "significance level")
      ->capture_default_str();
  pipeline->add_option("--kmax", pipeline_config.k_max, "largest K considered")
      ->capture_default_str();
  pipeline->add_option("--k", pipeline_config.fixed_k, "skip detection and use this K");
  pipeline->add_option("--seed", pipeline_seed, "random seed")->capture_default_str();
  pipeline->add_flag("--json", as_json, "emit JSON instead of CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return print_error("usage", e.what());
  }

  try {
    if (*simulate) {
      const auto config = fgt::parse_experiment_config(read_json_file(config_path));
      fgt::write_experiment_csv(std::cout, fgt::run_experiment(config));
    } else if (*sweep) {
      const auto config = fgt::parse_sweep_config(read_json_file(config_path));
      fgt::write_sweep_csv(std::cout, fgt::run_power_sweep(config));
    } else if (*test) {
      const auto g = load_all(g_files);
      const auto h = load_all(h_files);
      const fgt::RandomSeed root(seed);
      std::size_t k = 0;
      if (k_opt) {
        k = *k_opt;
      } else {
        std::vector<fgt::AdjacencyMatrix> all(g);
        all.insert(all.end(), h.begin(), h.end());
        k = fgt::sequential_common_k(all, k_max, root.child(0));
      }
      std::vector<fgt::CommunityPartition> g_parts, h_parts;
      for (std::size_t l = 0; l < g.size(); ++l) {
        g_parts.push_back(fgt::spectral_partition(g[l], k, root.child(1).child(l)));
      }
      for (std::size_t l = 0; l < h.size(); ++l) {
        h_parts.push_back(fgt::spectral_partition(h[l], k, root.child(2).child(l)));
      }
      fgt::TestConfig config;
      config.bootstrap.d = d;
      config.bootstrap.tau = tau;
      config.bootstrap.seed = root.child(3);
      config.alpha = alpha;
      config.sidedness = sidedness == "upper" ? fgt::Sidedness::upper : fgt::Sidedness::two_sided;
      std::cout << fgt::to_json(fgt::run_test(g, h, g_parts, h_parts, config)).dump(2) << '\n';
    } else if (*detect) {
      const auto networks = load_all(inputs);
      const fgt::ResidualSpectralOrderTest order(order_bootstraps, alpha);
      const auto k = fgt::sequential_common_k(networks, k_max, order, fgt::RandomSeed(seed));
      std::cout << json{{"k_hat", k}, {"k_max", k_max}, {"networks", networks.size()}}.dump(2)
                << '\n';
    } else if (*pipeline) {
      pipeline_config.seed = fgt::RandomSeed(pipeline_seed);
      const auto manifest = fgt::load_manifest(manifest_path);
      const auto rows =
          fgt::pairwise_condition_tests(manifest.conditions, manifest.subject_ids, pipeline_config);
      if (as_json) {
        std::cout << fgt::report_json(rows).dump(2) << '\n';
      } else {
        fgt::write_report_csv(std::cout, rows);
      }
    }
  } catch (const fgt::Error& e) {
    return print_error(fgt::to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return print_error("internal", e.what());
  }
  return 0;
}
