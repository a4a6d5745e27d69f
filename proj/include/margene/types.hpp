#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace margene {

//! Outcome flag for a per-gene test. Degenerate genes carry NaN fields and
//! are never rejected downstream; they do not abort a run.
enum class TestStatus {
  ok,
  degenerate_variance,
  degenerate_density,
};

struct GeneTestResult {
  double statistic = std::numeric_limits<double>::quiet_NaN();
  double p_value = std::numeric_limits<double>::quiet_NaN();
  TestStatus status = TestStatus::ok;

  bool ok() const { return status == TestStatus::ok; }

  static GeneTestResult degenerate(TestStatus s) {
    GeneTestResult r;
    r.status = s;
    return r;
  }
};

const char* to_string(TestStatus s);

}  // namespace margene
