#pragma once

#include <span>
#include <vector>

#include "margene/types.hpp"

namespace margene {

struct TwoSampleInput {
  std::span<const double> group1;
  std::span<const double> group2;
};

//! `adjusted` replaces the group-2 EDF by (n2/(n2+1)) F2 inside the pooled
//! difference process, enlarging the set of attainable statistic values for
//! the rank tests. The pooled average EDF is unchanged. Recommended when
//! n1 == n2; shifts the KS statistic by at most 1/sqrt(n2).
enum class GranularityMode { standard, adjusted };

//! The difference process G = sqrt(n1 n2 / n) (F1 - F2) and the pooled
//! average F0 = (n1 F1 + n2 F2)/n, tabulated at the pooled distinct jump
//! points (right-continuous values at each point).
struct PooledProcesses {
  std::vector<double> points;
  std::vector<double> g_hat;
  std::vector<double> f0_hat;
};

PooledProcesses pooled_processes(const TwoSampleInput& in,
                                 GranularityMode mode = GranularityMode::standard);

//! Welch-style mean comparison: T = sqrt(n1 n2 / (n1 s2^2 + n2 s1^2))
//! (xbar1 - xbar2); p = 2 Phi(-|T|).
GeneTestResult mean_test2(const TwoSampleInput& in);

//! Median comparison U = 2 sqrt(n1 n2 / (n1/f2^2 + n2/f1^2)) (xi1 - xi2)
//! with per-group EDF medians and IQR-bandwidth density estimates.
GeneTestResult median_test2(const TwoSampleInput& in);

//! Rank-sum test T1 = sqrt(12) * sum_s G(s) dF0(s); p = 2 Phi(-|T1|).
GeneTestResult wilcoxon_test2(const TwoSampleInput& in,
                              GranularityMode mode = GranularityMode::standard);

//! Kolmogorov-Smirnov test T2 = sup |G|; p = 1 - kolmogorov_cdf(T2).
GeneTestResult ks_test2(const TwoSampleInput& in,
                        GranularityMode mode = GranularityMode::standard);

//! Cramer-von Mises test T3 = sum_s G(s)^2 dF0(s); p = 1 - cvm_limit_cdf(T3).
GeneTestResult cvm_test2(const TwoSampleInput& in,
                         GranularityMode mode = GranularityMode::standard);

}  // namespace margene
