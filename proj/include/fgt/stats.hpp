#pragma once

#include <functional>
#include <span>

namespace fgt {

double normal_cdf(double x);
double normal_quantile(double p);

enum class Sidedness { two_sided, upper };

double normal_p_value(double z, Sidedness sidedness);
double critical_z(double alpha, Sidedness sidedness);

/// sqrt(r (1 - r) / n) for a rejection rate r estimated from n runs.
double binomial_se(double rate, std::size_t runs);

struct KsResult {
  double statistic;
  double p_value;
};

/// One-sample Kolmogorov-Smirnov test. The p-value uses the asymptotic
/// Kolmogorov distribution with Stephens' small-sample correction.
KsResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf);

double kolmogorov_survival(double lambda);

}  // namespace fgt
