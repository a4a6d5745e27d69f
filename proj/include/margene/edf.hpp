#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace margene {

//! Kernel density value at the sample median, with the bandwidth used.
struct DensityEstimate {
  double f_hat;
  double bandwidth;
};

//! Per-gene empirical distribution function over a sorted sample.
//!
//! Evaluation is right-continuous: F(t) = #{x_i <= t} / n. Quantiles use the
//! left-continuous generalized inverse inf{x : F(x) >= q} with no
//! interpolation, so quantile(0.5) is the lower sample median.
class Edf {
 public:
  explicit Edf(std::vector<double> values);
  explicit Edf(std::span<const double> values)
      : Edf(std::vector<double>(values.begin(), values.end())) {}

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& sorted_values() const { return values_; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  //! F(t) = fraction of sample values <= t.
  double operator()(double t) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), t);
    return static_cast<double>(it - values_.begin()) / values_.size();
  }

  //! inf{x : F(x) >= q}; q must lie in (0, 1].
  double quantile(double q) const;

  double median() const { return quantile(0.5); }
  double iqr() const { return quantile(0.75) - quantile(0.25); }

 private:
  std::vector<double> values_;  // sorted ascending, nonempty
};

//! Difference-quotient density estimate at the sample median with bandwidth
//! h = 2 * IQR * n^{-1/5}. Empty result when IQR == 0 (constant-heavy
//! sample); callers must mark the gene degenerate. Requires n >= 2.
std::optional<DensityEstimate> density_at_median(const Edf& e);

//! Exact sup_t |F(t) - ref(t)| for a nondecreasing reference CDF, taking the
//! larger of the pre- and post-jump gaps at every data point.
template <typename RefCdf>
double sup_deviation(const Edf& e, RefCdf&& reference_cdf) {
  const auto& v = e.sorted_values();
  const double n = static_cast<double>(v.size());
  double best = 0.0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;  // ties jump together
    const double ref = reference_cdf(v[i]);
    best = std::max(best, std::abs(static_cast<double>(j) / n - ref));
    best = std::max(best, std::abs(static_cast<double>(i) / n - ref));
    i = j;
  }
  return best;
}

}  // namespace margene
