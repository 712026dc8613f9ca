#pragma once

#include <span>

#include "fgt/frobenius_test.hpp"

namespace fgt {

/// Split-sample normal test for graphs on a common vertex set.
///
/// With the m samples split into halves, the numerator sums over i < j the
/// product of the two half-sample differences sum(A^G - A^H); the denominator
/// is the square root of the same sum over products of half-sample totals
/// sum(A^G + A^H). The statistic is compared with a standard normal.
/// Result method is "asymp-normal"; the permutation and diagnostics fields
/// are left empty.
TestResult asymp_normal_test(std::span<const AdjacencyMatrix> g_samples,
                             std::span<const AdjacencyMatrix> h_samples, double alpha = 0.05);

}  // namespace fgt
