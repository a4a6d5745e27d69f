#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "margene/dist.hpp"
#include "margene/rng.hpp"
#include "margene/two_sample.hpp"

using margene::cvm_test2;
using margene::GranularityMode;
using margene::ks_test2;
using margene::mean_test2;
using margene::median_test2;
using margene::pooled_processes;
using margene::TestStatus;
using margene::TwoSampleInput;
using margene::wilcoxon_test2;

namespace {

std::vector<double> uniform_sample(std::uint64_t seed, std::uint64_t rep,
                                   std::uint64_t array, std::size_t n) {
  margene::rng::Stream s(seed, rep, 1, array);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 2.0 * s.uniform(i) - 1.0;
  return x;
}

}  // namespace

TEST_CASE("pooled_processes on disjoint supports") {
  const std::vector<double> x1{1.0, 2.0}, x2{3.0, 4.0};
  const auto pp = pooled_processes({x1, x2});
  REQUIRE(pp.points.size() == 4);
  double sup = 0.0;
  for (double g : pp.g_hat) sup = std::max(sup, std::abs(g));
  CHECK(sup == doctest::Approx(1.0));  // sqrt(4/4) * 1 on [2, 3)
  CHECK(pp.f0_hat.back() == doctest::Approx(1.0));
}

TEST_CASE("pooled_processes identical samples vanish in standard mode") {
  const std::vector<double> x{0.7, -0.3, 0.1};
  const auto pp = pooled_processes({x, x});
  for (double g : pp.g_hat) CHECK(g == doctest::Approx(0.0));
}

TEST_CASE("adjusted mode shifts G by at most the stated bound") {
  for (int trial = 0; trial < 200; ++trial) {
    margene::rng::Stream sizes(3, trial, 9, 0);
    const std::size_t n1 = 2 + sizes.bits(0) % 12;
    const std::size_t n2 = 2 + sizes.bits(1) % 12;
    const auto x1 = uniform_sample(31, trial, 0, n1);
    const auto x2 = uniform_sample(31, trial, 1, n2);
    const auto std_pp = pooled_processes({x1, x2}, GranularityMode::standard);
    const auto adj_pp = pooled_processes({x1, x2}, GranularityMode::adjusted);
    const double bound = 1.0 / std::sqrt(static_cast<double>(n2));
    for (std::size_t k = 0; k < std_pp.points.size(); ++k) {
      CHECK(std::abs(std_pp.g_hat[k] - adj_pp.g_hat[k]) <= bound + 1e-12);
      CHECK(std_pp.f0_hat[k] == doctest::Approx(adj_pp.f0_hat[k]));
    }
  }
}

TEST_CASE("mean_test2 hand examples") {
  {
    const std::vector<double> x1{0.0, 1.0}, x2{0.5, 0.5001};
    // equal means case
    const std::vector<double> a{-1.0, 1.0}, b{-2.0, 2.0};
    const auto r = mean_test2({a, b});
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.p_value == doctest::Approx(1.0));
    (void)x1;
    (void)x2;
  }
  {
    // Equal variances: T reduces to (xbar1-xbar2)/(s sqrt(1/n1 + 1/n2)).
    const std::vector<double> x1{0.0, 2.0}, x2{1.0, 3.0};
    const auto r = mean_test2({x1, x2});
    const double s = std::sqrt(2.0);
    const double expect = (1.0 - 2.0) / (s * std::sqrt(0.5 + 0.5));
    CHECK(r.statistic == doctest::Approx(expect).epsilon(1e-12));
  }
  {
    const std::vector<double> x1{2.0, 2.0}, x2{1.0, 3.0};
    CHECK(mean_test2({x1, x2}).status == TestStatus::degenerate_variance);
  }
}

TEST_CASE("median_test2 basics") {
  {
    const std::vector<double> x{-1.0, 0.0, 1.0};
    const auto r = median_test2({x, x});
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.p_value == doctest::Approx(1.0));
  }
  {
    // Common rescaling doubles the median gap and halves both densities.
    const auto x1 = uniform_sample(17, 0, 0, 25);
    const auto x2 = uniform_sample(17, 0, 1, 25);
    const auto base = median_test2({x1, x2});
    std::vector<double> y1(x1), y2(x2);
    for (auto& v : y1) v *= 2.0;
    for (auto& v : y2) v *= 2.0;
    const auto scaled = median_test2({y1, y2});
    CHECK(scaled.statistic == doctest::Approx(base.statistic).epsilon(1e-12));
  }
  {
    const std::vector<double> x1{1.0, 1.0, 1.0}, x2{0.0, 1.0, 2.0};
    CHECK(median_test2({x1, x2}).status == TestStatus::degenerate_density);
  }
}

TEST_CASE("median_test2 location invariance") {
  const auto x1 = uniform_sample(19, 1, 0, 21);
  const auto x2 = uniform_sample(19, 1, 1, 17);
  const auto base = median_test2({x1, x2});
  std::vector<double> y1(x1), y2(x2);
  for (auto& v : y1) v += 4.2;
  for (auto& v : y2) v += 4.2;
  const auto moved = median_test2({y1, y2});
  CHECK(moved.statistic == doctest::Approx(base.statistic).epsilon(1e-11));
  const auto mbase = mean_test2({x1, x2});
  const auto mmoved = mean_test2({y1, y2});
  CHECK(mmoved.statistic == doctest::Approx(mbase.statistic).epsilon(1e-9));
}

TEST_CASE("wilcoxon_test2 hand example") {
  const std::vector<double> x1{1.0, 3.0}, x2{2.0, 4.0};
  const auto r = wilcoxon_test2({x1, x2});
  CHECK(r.statistic == doctest::Approx(std::sqrt(12.0) * 0.25).epsilon(1e-12));
  CHECK(r.statistic == doctest::Approx(0.8660).epsilon(1e-4));
}

TEST_CASE("wilcoxon_test2 group swap negates the statistic in standard mode") {
  const auto x1 = uniform_sample(23, 5, 0, 9);
  const auto x2 = uniform_sample(23, 5, 1, 13);
  const auto a = wilcoxon_test2({x1, x2});
  const auto b = wilcoxon_test2({x2, x1});
  CHECK(a.statistic == doctest::Approx(-b.statistic).epsilon(1e-12));
  CHECK(a.p_value == doctest::Approx(b.p_value).epsilon(1e-12));
}

TEST_CASE("ks_test2 examples") {
  {
    const std::vector<double> x1{1.0, 2.0}, x2{3.0, 4.0};
    const auto r = ks_test2({x1, x2});
    CHECK(r.statistic == doctest::Approx(1.0));
    CHECK(r.p_value == doctest::Approx(0.27).epsilon(0.01));
  }
  {
    const std::vector<double> x{0.4, -0.2, 0.9};
    const auto r = ks_test2({x, x});
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.p_value == doctest::Approx(1.0));
  }
}

TEST_CASE("cvm_test2 examples") {
  {
    const std::vector<double> x1{1.0, 3.0}, x2{2.0, 4.0};
    const auto r = cvm_test2({x1, x2});
    CHECK(r.statistic == doctest::Approx(0.125).epsilon(1e-12));
  }
  {
    const std::vector<double> x{0.4, -0.2, 0.9};
    const auto r = cvm_test2({x, x});
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.p_value == doctest::Approx(1.0));
  }
}

TEST_CASE("rank statistics are invariant under monotone transforms") {
  const auto x1 = uniform_sample(29, 8, 0, 14);
  const auto x2 = uniform_sample(29, 8, 1, 11);
  auto transform = [](double v) { return std::exp(3.0 * v) - 0.5 * v; };
  std::vector<double> y1(x1), y2(x2);
  for (auto& v : y1) v = transform(v);
  for (auto& v : y2) v = transform(v);
  for (auto mode : {GranularityMode::standard, GranularityMode::adjusted}) {
    CHECK(wilcoxon_test2({y1, y2}, mode).statistic ==
          doctest::Approx(wilcoxon_test2({x1, x2}, mode).statistic).epsilon(1e-12));
    CHECK(ks_test2({y1, y2}, mode).statistic ==
          doctest::Approx(ks_test2({x1, x2}, mode).statistic).epsilon(1e-12));
    CHECK(cvm_test2({y1, y2}, mode).statistic ==
          doctest::Approx(cvm_test2({x1, x2}, mode).statistic).epsilon(1e-12));
  }
}

TEST_CASE("ks statistic mode difference respects the granularity bound") {
  for (int trial = 0; trial < 500; ++trial) {
    margene::rng::Stream sizes(41, trial, 9, 0);
    const std::size_t n1 = 2 + sizes.bits(0) % 20;
    const std::size_t n2 = 2 + sizes.bits(1) % 20;
    const auto x1 = uniform_sample(43, trial, 0, n1);
    const auto x2 = uniform_sample(43, trial, 1, n2);
    const double d_std = ks_test2({x1, x2}, GranularityMode::standard).statistic;
    const double d_adj = ks_test2({x1, x2}, GranularityMode::adjusted).statistic;
    CHECK(std::abs(d_std - d_adj) <=
          1.0 / std::sqrt(static_cast<double>(n2)) + 1e-12);
  }
}

TEST_CASE("two-sample tests validate group sizes") {
  const std::vector<double> ok{1.0, 2.0, 3.0}, small{1.0};
  CHECK_THROWS_AS(mean_test2({small, ok}), std::invalid_argument);
  CHECK_THROWS_AS(ks_test2({ok, small}), std::invalid_argument);
}

TEST_CASE("wilcoxon normal approximation vs exhaustive permutations, n1=n2=8") {
  // All C(16,8) group assignments of fixed distinct values; two-sided
  // permutation p against 2 Phi(-|T1|).
  const int n1 = 8, n2 = 8, n = 16;
  std::vector<double> pooled(n);
  margene::rng::Stream s(3, 0, 1, 0);
  for (int i = 0; i < n; ++i) pooled[i] = s.uniform(i);
  std::sort(pooled.begin(), pooled.end());

  std::vector<double> stats;
  std::vector<int> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + n1, 1);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<double> g1, g2;
    for (int i = 0; i < n; ++i) (pick[i] ? g1 : g2).push_back(pooled[i]);
    stats.push_back(wilcoxon_test2({g1, g2}).statistic);
  } while (std::next_permutation(pick.begin(), pick.end()));

  double worst = 0.0;
  for (double v : stats) {
    const double av = std::abs(v);
    double mass = 0.0;
    for (double w : stats) {
      if (std::abs(w) >= av - 1e-12) mass += 1.0;
    }
    const double exact = mass / static_cast<double>(stats.size());
    const double approx = 2.0 * margene::std_normal_cdf(-av);
    worst = std::max(worst, std::abs(exact - approx));
  }
  CHECK(worst <= 0.06);
}
