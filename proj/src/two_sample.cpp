#include "margene/two_sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "margene/dist.hpp"
#include "margene/edf.hpp"

namespace margene {

namespace {

void require_groups(const TwoSampleInput& in) {
  if (in.group1.size() < 2 || in.group2.size() < 2) {
    throw std::invalid_argument("two-sample test: each group needs n >= 2");
  }
}

GeneTestResult normal_result(double stat) {
  GeneTestResult r;
  r.statistic = stat;
  r.p_value = 2.0 * std_normal_cdf(-std::abs(stat));
  r.status = TestStatus::ok;
  return r;
}

struct MeanSd {
  double mean;
  double sd;
};

MeanSd mean_sd(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) {
    const double d = v - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

PooledProcesses pooled_processes(const TwoSampleInput& in,
                                 GranularityMode mode) {
  require_groups(in);
  const double n1 = static_cast<double>(in.group1.size());
  const double n2 = static_cast<double>(in.group2.size());
  const double n = n1 + n2;

  std::vector<double> s1(in.group1.begin(), in.group1.end());
  std::vector<double> s2(in.group2.begin(), in.group2.end());
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());

  PooledProcesses out;
  out.points.reserve(s1.size() + s2.size());
  out.g_hat.reserve(s1.size() + s2.size());
  out.f0_hat.reserve(s1.size() + s2.size());

  const double f2_scale =
      mode == GranularityMode::adjusted ? n2 / (n2 + 1.0) : 1.0;
  const double g_scale = std::sqrt(n1 * n2 / n);

  std::size_t i = 0, j = 0;
  while (i < s1.size() || j < s2.size()) {
    double point;
    if (j >= s2.size() || (i < s1.size() && s1[i] <= s2[j])) {
      point = s1[i];
    } else {
      point = s2[j];
    }
    while (i < s1.size() && s1[i] == point) ++i;
    while (j < s2.size() && s2[j] == point) ++j;
    const double f1 = static_cast<double>(i) / n1;
    const double f2 = static_cast<double>(j) / n2;
    out.points.push_back(point);
    out.g_hat.push_back(g_scale * (f1 - f2_scale * f2));
    out.f0_hat.push_back((n1 * f1 + n2 * f2) / n);
  }
  return out;
}

GeneTestResult mean_test2(const TwoSampleInput& in) {
  require_groups(in);
  const auto m1 = mean_sd(in.group1);
  const auto m2 = mean_sd(in.group2);
  if (m1.sd <= 0.0 || m2.sd <= 0.0) {
    return GeneTestResult::degenerate(TestStatus::degenerate_variance);
  }
  const double n1 = static_cast<double>(in.group1.size());
  const double n2 = static_cast<double>(in.group2.size());
  const double scale =
      std::sqrt(n1 * n2 / (n1 * m2.sd * m2.sd + n2 * m1.sd * m1.sd));
  return normal_result(scale * (m1.mean - m2.mean));
}

GeneTestResult median_test2(const TwoSampleInput& in) {
  require_groups(in);
  Edf e1(in.group1);
  Edf e2(in.group2);
  const auto d1 = density_at_median(e1);
  const auto d2 = density_at_median(e2);
  if (!d1 || !d2 || d1->f_hat <= 0.0 || d2->f_hat <= 0.0) {
    return GeneTestResult::degenerate(TestStatus::degenerate_density);
  }
  const double n1 = static_cast<double>(in.group1.size());
  const double n2 = static_cast<double>(in.group2.size());
  const double scale = std::sqrt(n1 * n2 /
                                 (n1 / (d2->f_hat * d2->f_hat) +
                                  n2 / (d1->f_hat * d1->f_hat)));
  return normal_result(2.0 * scale * (e1.median() - e2.median()));
}

GeneTestResult wilcoxon_test2(const TwoSampleInput& in, GranularityMode mode) {
  const auto pp = pooled_processes(in, mode);
  double integral = 0.0;
  double prev_f0 = 0.0;
  for (std::size_t k = 0; k < pp.points.size(); ++k) {
    integral += pp.g_hat[k] * (pp.f0_hat[k] - prev_f0);
    prev_f0 = pp.f0_hat[k];
  }
  return normal_result(std::sqrt(12.0) * integral);
}

GeneTestResult ks_test2(const TwoSampleInput& in, GranularityMode mode) {
  const auto pp = pooled_processes(in, mode);
  double sup = 0.0;
  for (double g : pp.g_hat) sup = std::max(sup, std::abs(g));
  GeneTestResult r;
  r.statistic = sup;
  r.p_value = 1.0 - kolmogorov_cdf(sup);
  r.status = TestStatus::ok;
  return r;
}

GeneTestResult cvm_test2(const TwoSampleInput& in, GranularityMode mode) {
  const auto pp = pooled_processes(in, mode);
  double integral = 0.0;
  double prev_f0 = 0.0;
  for (std::size_t k = 0; k < pp.points.size(); ++k) {
    integral += pp.g_hat[k] * pp.g_hat[k] * (pp.f0_hat[k] - prev_f0);
    prev_f0 = pp.f0_hat[k];
  }
  GeneTestResult r;
  r.statistic = integral;
  r.p_value = 1.0 - cvm_limit_cdf(integral);
  r.status = TestStatus::ok;
  return r;
}

}  // namespace margene
