#include "margene/one_sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "margene/dist.hpp"
#include "margene/edf.hpp"

namespace margene {

namespace {

GeneTestResult from_statistic(double stat) {
  GeneTestResult r;
  r.statistic = stat;
  r.p_value = 2.0 * std_normal_cdf(-std::abs(stat));
  r.status = TestStatus::ok;
  return r;
}

void require_n(std::span<const double> x, std::size_t min_n, const char* who) {
  if (x.size() < min_n) {
    throw std::invalid_argument(std::string(who) + ": sample too small");
  }
}

}  // namespace

GeneTestResult mean_test(std::span<const double> x, double mu0) {
  require_n(x, 2, "mean_test");
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) {
    const double d = v - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  if (sd <= 0.0) {
    return GeneTestResult::degenerate(TestStatus::degenerate_variance);
  }
  return from_statistic(std::sqrt(n) * (mean - mu0) / sd);
}

GeneTestResult median_test(std::span<const double> x, double xi0) {
  require_n(x, 2, "median_test");
  Edf e(x);
  const auto density = density_at_median(e);
  if (!density) {
    return GeneTestResult::degenerate(TestStatus::degenerate_density);
  }
  const double n = static_cast<double>(x.size());
  return from_statistic(2.0 * std::sqrt(n) * density->f_hat *
                        (e.median() - xi0));
}

GeneTestResult signed_rank_test(std::span<const double> x,
                                SignedRankConfig cfg) {
  require_n(x, 2, "signed_rank_test");
  struct Item {
    double abs;
    bool positive;
  };
  std::vector<Item> items;
  items.reserve(x.size());
  for (double v : x) {
    if (v != 0.0) items.push_back({std::abs(v), v > 0.0});
  }
  if (items.empty()) {
    return GeneTestResult::degenerate(TestStatus::degenerate_variance);
  }
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.abs < b.abs; });

  const double m = static_cast<double>(items.size());
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < items.size()) {
    std::size_t j = i;
    while (j < items.size() && items[j].abs == items[i].abs) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + j + 1);  // 1-based
    for (std::size_t k = i; k < j; ++k) {
      if (items[k].positive) rank_sum_pos += avg_rank;
    }
    i = j;
  }

  const double mean = (m * m + m) / 4.0;
  const double variance =
      cfg.variance == SignedRankConfig::Variance::paper
          ? (3.0 * m * m * m + 2.0 * m * m + m) / 24.0
          : m * (m + 1.0) * (2.0 * m + 1.0) / 24.0;
  return from_statistic((rank_sum_pos - mean) / std::sqrt(variance));
}

GeneTestResult sign_test(std::span<const double> x) {
  require_n(x, 1, "sign_test");
  double m = 0.0;
  double pos = 0.0;
  for (double v : x) {
    if (v != 0.0) {
      m += 1.0;
      if (v > 0.0) pos += 1.0;
    }
  }
  if (m == 0.0) {
    return GeneTestResult::degenerate(TestStatus::degenerate_variance);
  }
  return from_statistic((pos - m / 2.0) / std::sqrt(m / 4.0));
}

const char* to_string(TestStatus s) {
  switch (s) {
    case TestStatus::ok:
      return "ok";
    case TestStatus::degenerate_variance:
      return "degenerate_variance";
    case TestStatus::degenerate_density:
      return "degenerate_density";
  }
  return "unknown";
}

}  // namespace margene
