#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "margene/multiplicity.hpp"
#include "margene/one_sample.hpp"
#include "margene/simgen.hpp"
#include "margene/two_sample.hpp"
#include "margene/types.hpp"

namespace margene {

enum class TestId {
  mean,
  median,
  signed_rank,
  sign,
  mean2,
  median2,
  wilcoxon,
  ks,
  cvm,
};

bool is_two_sample(TestId id);
const char* to_string(TestId id);
std::optional<TestId> parse_test_id(const std::string& name);

//! Scores for one simulation replicate and one test.
struct ReplicateSummary {
  std::size_t total_identified = 0;
  std::size_t true_positives = 0;
  double empirical_fdr = 0.0;
};

//! Per-test means over replicates, Table-style.
struct TestSummary {
  TestId test;
  double mean_total = 0.0;
  double mean_true_positives = 0.0;
  double mean_efdr = 0.0;
  std::size_t degenerate_genes = 0;  // summed over replicates
};

struct StudySummary {
  SimScenario scenario;
  std::size_t replicates = 0;
  std::vector<TestSummary> tests;
};

struct StudyOptions {
  double q = 0.2;
  std::size_t replicates = 100;
  GranularityMode granularity = GranularityMode::standard;
  SignedRankConfig signed_rank{};
  std::size_t threads = 0;  // 0 = hardware concurrency
  //! When true, replicates with zero rejections are left out of the EFDR
  //! mean instead of contributing 0.
  bool efdr_skip_empty = false;
  double mu0 = 0.0;  // one-sample null location
};

//! Runs one test on every gene of a data matrix. For two-sample tests,
//! group 1 is columns [0, n1) and group 2 the rest.
std::vector<GeneTestResult> run_test(TestId id, const Matrix& data,
                                     std::size_t n1, const StudyOptions& opt);

//! |rejected \ truth| / max(|rejected|, 1); a replicate with no rejections
//! scores 0.
double empirical_fdr(std::span<const std::size_t> rejected,
                     std::span<const std::size_t> truth);

//! Generate -> test -> BH-select -> score, averaged over replicates.
//! Tests run on the perturbed matrix when the scenario injects noise.
StudySummary run_study(const SimScenario& scenario,
                       std::span<const TestId> tests, const StudyOptions& opt);

//! Kendall's tau-b (tie-corrected) between two equal-length vectors.
//! Returns NaN when either vector is constant. Throws std::domain_error on
//! length mismatch or fewer than two entries.
double kendall_tau(std::span<const double> a, std::span<const double> b);

//! StudySummary as a TSV table (scenario echoed as '#' comment lines).
std::string study_summary_tsv(const StudySummary& summary);

}  // namespace margene
