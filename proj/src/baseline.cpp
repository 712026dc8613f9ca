#include "fgt/baseline.hpp"

#include <cmath>

#include "fgt/errors.hpp"

namespace fgt {

TestResult asymp_normal_test(std::span<const AdjacencyMatrix> g_samples,
                             std::span<const AdjacencyMatrix> h_samples, double alpha) {
  const std::size_t m = g_samples.size();
  if (m != h_samples.size()) {
    throw Error(ErrorCode::invalid_argument, "both sequences need the same sample count");
  }
  if (m < 2 || m % 2 != 0) {
    throw Error(ErrorCode::invalid_argument, "asymp-normal needs an even sample count m >= 2");
  }
  const std::size_t n = g_samples[0].size();
  for (std::size_t l = 0; l < m; ++l) {
    if (g_samples[l].size() != n || h_samples[l].size() != n) {
      throw Error(ErrorCode::dimension_mismatch,
                  "asymp-normal needs every graph on the same vertex set");
    }
  }
  const double z_crit = critical_z(alpha, Sidedness::two_sided);

  const std::size_t half = m / 2;
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      int diff1 = 0, diff2 = 0, sum1 = 0, sum2 = 0;
      for (std::size_t l = 0; l < m; ++l) {
        const int g = g_samples[l](i, j) ? 1 : 0;
        const int h = h_samples[l](i, j) ? 1 : 0;
        if (l < half) {
          diff1 += g - h;
          sum1 += g + h;
        } else {
          diff2 += g - h;
          sum2 += g + h;
        }
      }
      numerator += static_cast<double>(diff1) * diff2;
      denominator += static_cast<double>(sum1) * sum2;
    }
  }

  TestResult result;
  result.method = "asymp-normal";
  result.alpha = alpha;
  result.sidedness = Sidedness::two_sided;
  result.m = m;
  result.bootstrap_size = n;
  result.null_params = {0.0, 1.0, BlockCase::balanced};
  result.statistic = denominator > 0.0 ? numerator / std::sqrt(denominator) : 0.0;
  if (denominator <= 0.0) result.note = "no edges in either sequence; statistic set to 0";
  result.z = result.statistic;
  result.p_value = normal_p_value(result.z, Sidedness::two_sided);
  result.reject = std::abs(result.z) > z_crit;
  return result;
}

}  // namespace fgt
