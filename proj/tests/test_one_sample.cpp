#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "margene/dist.hpp"
#include "margene/one_sample.hpp"
#include "margene/rng.hpp"
#include "support/oracles.hpp"

using margene::GeneTestResult;
using margene::mean_test;
using margene::median_test;
using margene::sign_test;
using margene::signed_rank_test;
using margene::SignedRankConfig;
using margene::TestStatus;

namespace {

std::vector<double> uniform_sample(std::uint64_t seed, std::uint64_t rep,
                                   std::size_t n, double lo, double hi) {
  margene::rng::Stream s(seed, rep, 1, 0);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = lo + (hi - lo) * s.uniform(i);
  return x;
}

}  // namespace

TEST_CASE("mean_test hand examples") {
  {
    const std::vector<double> x{1.0, -1.0};
    const auto r = mean_test(x, 0.0);
    CHECK(r.ok());
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.p_value == doctest::Approx(1.0));
  }
  {
    const std::vector<double> x{3.0, 3.0, 3.0};
    const auto r = mean_test(x, 0.0);
    CHECK(r.status == TestStatus::degenerate_variance);
    CHECK(std::isnan(r.p_value));
  }
  {
    // xbar = 0.5, s = sqrt(0.1), T = sqrt(5)*0.5/s = 3.5355
    const std::vector<double> x{0.1, 0.3, 0.5, 0.7, 0.9};
    const auto r = mean_test(x, 0.0);
    CHECK(r.statistic == doctest::Approx(3.5355).epsilon(1e-4));
    CHECK(r.p_value == doctest::Approx(4.07e-4).epsilon(5e-3));
  }
  CHECK_THROWS_AS(mean_test(std::vector<double>{1.0}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("mean_test location invariance and scale equivariance") {
  const auto x = uniform_sample(21, 0, 30, -1.0, 1.0);
  const auto base = mean_test(x, 0.2);
  std::vector<double> shifted(x);
  for (auto& v : shifted) v += 5.75;
  const auto moved = mean_test(shifted, 0.2 + 5.75);
  CHECK(moved.statistic == doctest::Approx(base.statistic).epsilon(1e-12));
  CHECK(moved.p_value == doctest::Approx(base.p_value).epsilon(1e-12));

  std::vector<double> scaled(x);
  for (auto& v : scaled) v *= 3.0;
  const auto rescaled = mean_test(scaled, 0.6);
  CHECK(rescaled.statistic == doctest::Approx(base.statistic).epsilon(1e-12));
}

TEST_CASE("median_test hand examples") {
  {
    // Symmetric around 1: median exactly at xi0.
    const std::vector<double> x{0.0, 1.0, 2.0};
    const auto r = median_test(x, 1.0);
    CHECK(r.ok());
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.p_value == doctest::Approx(1.0));
  }
  {
    const std::vector<double> x{2.0, 2.0, 2.0};
    CHECK(median_test(x, 0.0).status == TestStatus::degenerate_density);
  }
}

TEST_CASE("median_test agrees with an independent composition of its parts") {
  // Same formulas assembled separately from raw counting.
  const auto x = uniform_sample(77, 4, 50, -1.0, 1.0);
  const auto r = median_test(x, 0.0);

  std::vector<double> s(x);
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  auto q = [&](double level) {
    auto k = static_cast<std::size_t>(std::ceil(n * level - 1e-9));
    return s[std::max<std::size_t>(k, 1) - 1];
  };
  const double med = q(0.5);
  const double iqr = q(0.75) - q(0.25);
  const double h = 2.0 * iqr * std::pow(static_cast<double>(n), -0.2);
  auto edf = [&](double t) {
    return static_cast<double>(std::upper_bound(s.begin(), s.end(), t) -
                               s.begin()) /
           static_cast<double>(n);
  };
  const double fhat = (edf(med + h) - edf(med - h)) / (2.0 * h);
  const double u = 2.0 * std::sqrt(static_cast<double>(n)) * fhat * med;
  CHECK(r.statistic == doctest::Approx(u).epsilon(1e-12));
  CHECK(r.p_value ==
        doctest::Approx(2.0 * margene::std_normal_cdf(-std::abs(u)))
            .epsilon(1e-12));
}

TEST_CASE("median_test location invariance") {
  const auto x = uniform_sample(5, 9, 41, 0.0, 2.0);
  const auto base = median_test(x, 0.3);
  std::vector<double> shifted(x);
  for (auto& v : shifted) v -= 1.25;
  const auto moved = median_test(shifted, 0.3 - 1.25);
  CHECK(moved.statistic == doctest::Approx(base.statistic).epsilon(1e-12));
}

TEST_CASE("signed_rank_test hand examples") {
  {
    const std::vector<double> x{1.0, 2.0, 3.0};
    const auto r = signed_rank_test(x);
    CHECK(r.statistic == doctest::Approx(3.0 / std::sqrt(4.25)).epsilon(1e-12));
    CHECK(r.statistic == doctest::Approx(1.4552).epsilon(1e-4));
  }
  {
    const std::vector<double> x{-1.0, -2.0, -3.0};
    const auto r = signed_rank_test(x);
    CHECK(r.statistic == doctest::Approx(-1.4552).epsilon(1e-4));
  }
  {
    const std::vector<double> x{0.0, 0.0};
    CHECK(signed_rank_test(x).status == TestStatus::degenerate_variance);
  }
}

TEST_CASE("signed_rank_test drops zeros and averages tied ranks") {
  // Nonzero values {-1, 1, 2}: |x| ranks are {1.5, 1.5, 3}; positives get
  // 1.5 + 3 = 4.5 with m = 3.
  const std::vector<double> x{0.0, -1.0, 1.0, 2.0};
  const auto r = signed_rank_test(x);
  const double mean = (9.0 + 3.0) / 4.0;
  const double var = (3.0 * 27.0 + 2.0 * 9.0 + 3.0) / 24.0;
  CHECK(r.statistic == doctest::Approx((4.5 - mean) / std::sqrt(var)).epsilon(1e-12));
}

TEST_CASE("sign and signed-rank are invariant under odd monotone maps") {
  const auto x = uniform_sample(13, 2, 35, -1.0, 1.0);
  std::vector<double> t(x);
  for (auto& v : t) v = std::tanh(2.0 * v) + v * v * v;  // strictly increasing, odd
  for (auto variance : {SignedRankConfig::Variance::paper,
                        SignedRankConfig::Variance::classical}) {
    SignedRankConfig cfg{variance};
    CHECK(signed_rank_test(t, cfg).statistic ==
          doctest::Approx(signed_rank_test(x, cfg).statistic).epsilon(1e-12));
  }
  CHECK(sign_test(t).statistic ==
        doctest::Approx(sign_test(x).statistic).epsilon(1e-12));
}

TEST_CASE("sign_test hand examples") {
  {
    const std::vector<double> x{1.0, -1.0, 2.0, -2.0};
    const auto r = sign_test(x);
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.p_value == doctest::Approx(1.0));
  }
  {
    const std::vector<double> x{1.0, 1.0, 1.0, 1.0};
    const auto r = sign_test(x);
    CHECK(r.statistic == doctest::Approx(2.0));
    CHECK(r.p_value == doctest::Approx(0.0455).epsilon(1e-2));
  }
  {
    const std::vector<double> x{0.0, 0.0};
    CHECK(sign_test(x).status == TestStatus::degenerate_variance);
  }
}

TEST_CASE("signed-rank normal approximation vs exhaustive enumeration, n=12") {
  // Two-sided exact p-values from the full 2^12 sign-pattern null; the
  // classical variance should track them within 0.05, the printed cubic
  // variant is expected to be looser.
  const int n = 12;
  const auto counts = oracles::signed_rank_null_counts(n);
  const double total = std::pow(2.0, n);
  const double mean = n * (n + 1) / 4.0;

  auto sup_gap = [&](double variance) {
    double worst = 0.0;
    for (int v = 0; v < static_cast<int>(counts.size()); ++v) {
      if (counts[v] == 0.0) continue;
      const double dev = std::abs(v - mean);
      double mass = 0.0;
      for (int w = 0; w < static_cast<int>(counts.size()); ++w) {
        if (std::abs(w - mean) >= dev - 1e-9) mass += counts[w];
      }
      const double exact = mass / total;
      const double z = (v - mean) / std::sqrt(variance);
      const double approx = 2.0 * margene::std_normal_cdf(-std::abs(z));
      worst = std::max(worst, std::abs(exact - approx));
    }
    return worst;
  };

  const double var_paper = (3.0 * n * n * n + 2.0 * n * n + n) / 24.0;
  const double var_classical = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
  const double gap_paper = sup_gap(var_paper);
  const double gap_classical = sup_gap(var_classical);
  CHECK(gap_classical <= 0.05);
  CHECK(gap_classical < gap_paper);  // classical is the better-calibrated choice
}
