#pragma once

#include <span>

#include "margene/types.hpp"

namespace margene {

//! Variance used to standardize the signed-rank sum. `paper` keeps the
//! (3n^3 + 2n^2 + n)/24 form; `classical` is the textbook Wilcoxon
//! n(n+1)(2n+1)/24. Exhaustive sign enumeration at n = 12 shows the
//! classical form tracks exact two-sided p-values noticeably better
//! (sup gap ~0.04 vs ~0.06), so prefer `classical` when calibration
//! against exact p-values matters.
struct SignedRankConfig {
  enum class Variance { paper, classical };
  Variance variance = Variance::paper;
};

//! t-type test of H0: mean = mu0. Statistic sqrt(n) (xbar - mu0) / s with
//! the n-1 sample standard deviation; p = 2 Phi(-|T|). Requires n >= 2.
GeneTestResult mean_test(std::span<const double> x, double mu0);

//! Median test U = 2 sqrt(n) f_hat (xi_hat - xi0) with the EDF median and
//! the IQR-bandwidth density estimate; p = 2 Phi(-|U|). Requires n >= 2.
GeneTestResult median_test(std::span<const double> x, double xi0);

//! Signed-rank test of H0: median = 0. Zeros are dropped; ranks of |x|
//! over the m nonzero values with average ranks for ties; the rank sum of
//! positives is centered at (m^2+m)/4 and standardized per cfg (formulas
//! use the nonzero count m). p = 2 Phi(-|V|).
GeneTestResult signed_rank_test(std::span<const double> x,
                                SignedRankConfig cfg = {});

//! Sign test of H0: median = 0. With m nonzero values and S positives,
//! statistic (S - m/2) / sqrt(m/4); p = 2 Phi(-|Z|).
GeneTestResult sign_test(std::span<const double> x);

}  // namespace margene
