#pragma once

#include <stdexcept>

namespace margene {

//! Absolute evaluation tolerance for the limit-distribution CDFs.
struct CdfAccuracy {
  double abs_tol;
};

inline constexpr CdfAccuracy kKolmogorovAccuracy{1e-4};
inline constexpr CdfAccuracy kCvmAccuracy{2e-3};

//! Standard normal CDF. Accurate to a few ulp over the full double range.
double std_normal_cdf(double x);

//! CDF of sup_{0<=t<=1} |B(t)| for a standard Brownian bridge B
//! (the limiting law of the two-sample Kolmogorov-Smirnov statistic).
//! Throws std::domain_error for t < 0.
double kolmogorov_cdf(double t, CdfAccuracy acc = kKolmogorovAccuracy);

//! CDF of pi^{-2} sum_{l>=1} Z_l^2 / l^2 with Z_l iid standard normal
//! (the limiting law of the two-sample Cramer-von Mises statistic).
//! Throws std::domain_error for t < 0.
double cvm_limit_cdf(double t, CdfAccuracy acc = kCvmAccuracy);

}  // namespace margene
