#include "margene/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "margene/parallel.hpp"

namespace margene {

bool is_two_sample(TestId id) {
  switch (id) {
    case TestId::mean2:
    case TestId::median2:
    case TestId::wilcoxon:
    case TestId::ks:
    case TestId::cvm:
      return true;
    default:
      return false;
  }
}

const char* to_string(TestId id) {
  switch (id) {
    case TestId::mean: return "mean";
    case TestId::median: return "median";
    case TestId::signed_rank: return "signed-rank";
    case TestId::sign: return "sign";
    case TestId::mean2: return "mean2";
    case TestId::median2: return "median2";
    case TestId::wilcoxon: return "wilcoxon";
    case TestId::ks: return "ks";
    case TestId::cvm: return "cvm";
  }
  return "unknown";
}

std::optional<TestId> parse_test_id(const std::string& name) {
  static const std::pair<const char*, TestId> table[] = {
      {"mean", TestId::mean},           {"median", TestId::median},
      {"signed-rank", TestId::signed_rank}, {"sign", TestId::sign},
      {"mean2", TestId::mean2},         {"median2", TestId::median2},
      {"wilcoxon", TestId::wilcoxon},   {"ks", TestId::ks},
      {"cvm", TestId::cvm},
  };
  for (const auto& [key, id] : table) {
    if (name == key) return id;
  }
  return std::nullopt;
}

std::vector<GeneTestResult> run_test(TestId id, const Matrix& data,
                                     std::size_t n1, const StudyOptions& opt) {
  const bool two = is_two_sample(id);
  if (two && (n1 < 2 || data.cols() < n1 + 2)) {
    throw std::invalid_argument("run_test: two-sample test needs n1 >= 2 and n2 >= 2");
  }
  std::vector<GeneTestResult> results(data.rows());
  parallel_for(data.rows(), opt.threads, [&](std::size_t g) {
    const auto row = data.row(g);
    if (two) {
      const TwoSampleInput in{row.subspan(0, n1), row.subspan(n1)};
      switch (id) {
        case TestId::mean2: results[g] = mean_test2(in); break;
        case TestId::median2: results[g] = median_test2(in); break;
        case TestId::wilcoxon: results[g] = wilcoxon_test2(in, opt.granularity); break;
        case TestId::ks: results[g] = ks_test2(in, opt.granularity); break;
        case TestId::cvm: results[g] = cvm_test2(in, opt.granularity); break;
        default: break;
      }
    } else {
      switch (id) {
        case TestId::mean: results[g] = mean_test(row, opt.mu0); break;
        case TestId::median: results[g] = median_test(row, opt.mu0); break;
        case TestId::signed_rank: results[g] = signed_rank_test(row, opt.signed_rank); break;
        case TestId::sign: results[g] = sign_test(row); break;
        default: break;
      }
    }
  });
  return results;
}

double empirical_fdr(std::span<const std::size_t> rejected,
                     std::span<const std::size_t> truth) {
  if (rejected.empty()) return 0.0;
  std::unordered_set<std::size_t> truth_set(truth.begin(), truth.end());
  std::size_t false_count = 0;
  for (std::size_t g : rejected) {
    if (!truth_set.contains(g)) ++false_count;
  }
  return static_cast<double>(false_count) / static_cast<double>(rejected.size());
}

StudySummary run_study(const SimScenario& scenario,
                       std::span<const TestId> tests, const StudyOptions& opt) {
  scenario.validate();
  if (opt.replicates < 1) {
    throw std::invalid_argument("run_study: needs replicates >= 1");
  }
  for (TestId id : tests) {
    if (is_two_sample(id) != scenario.two_sample()) {
      throw std::invalid_argument(std::string("run_study: test '") + to_string(id) +
                                  "' does not match the scenario design");
    }
  }

  const std::size_t n_tests = tests.size();
  // One slot per (replicate, test); replicates run in parallel, the
  // reduction below is serial in replicate order.
  std::vector<ReplicateSummary> cells(opt.replicates * n_tests);
  std::vector<std::size_t> degenerate(opt.replicates * n_tests, 0);

  StudyOptions per_gene_opt = opt;
  per_gene_opt.threads = 1;  // parallelism lives at the replicate level here

  parallel_for(opt.replicates, opt.threads, [&](std::size_t rep) {
    const GeneratedData data = generate(scenario, rep);
    const Matrix& matrix = data.perturbed ? *data.perturbed : data.values;
    std::vector<std::size_t> truth;
    truth.reserve(scenario.n_effect_genes);
    for (std::size_t g = 0; g < scenario.n_effect_genes; ++g) truth.push_back(g);

    for (std::size_t t = 0; t < n_tests; ++t) {
      const auto results = run_test(tests[t], matrix, scenario.n1, per_gene_opt);
      const auto sel = bh_select(std::span<const GeneTestResult>(results), opt.q);
      ReplicateSummary rs;
      rs.total_identified = sel.g_tilde;
      std::size_t pos = 0;
      for (std::size_t g : sel.rejected) {
        if (g < scenario.n_effect_genes) ++pos;
      }
      rs.true_positives = pos;
      rs.empirical_fdr = empirical_fdr(sel.rejected, truth);
      cells[rep * n_tests + t] = rs;
      std::size_t degen = 0;
      for (const auto& r : results) {
        if (!r.ok()) ++degen;
      }
      degenerate[rep * n_tests + t] = degen;
    }
  });

  StudySummary summary;
  summary.scenario = scenario;
  summary.replicates = opt.replicates;
  summary.tests.resize(n_tests);
  for (std::size_t t = 0; t < n_tests; ++t) {
    TestSummary ts;
    ts.test = tests[t];
    double tot = 0.0, pos = 0.0, efdr = 0.0;
    std::size_t efdr_count = 0;
    for (std::size_t rep = 0; rep < opt.replicates; ++rep) {
      const auto& rs = cells[rep * n_tests + t];
      tot += static_cast<double>(rs.total_identified);
      pos += static_cast<double>(rs.true_positives);
      if (!opt.efdr_skip_empty || rs.total_identified > 0) {
        efdr += rs.empirical_fdr;
        ++efdr_count;
      }
      ts.degenerate_genes += degenerate[rep * n_tests + t];
    }
    const double r = static_cast<double>(opt.replicates);
    ts.mean_total = tot / r;
    ts.mean_true_positives = pos / r;
    ts.mean_efdr = efdr_count > 0 ? efdr / static_cast<double>(efdr_count) : 0.0;
    summary.tests[t] = ts;
  }
  return summary;
}

double kendall_tau(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::domain_error("kendall_tau: length mismatch");
  }
  const std::size_t n = a.size();
  if (n < 2) {
    throw std::domain_error("kendall_tau: needs at least two pairs");
  }

  // Knight's O(n log n) scheme: sort by (a, b), count ties, then count
  // discordant pairs as merge-sort inversions of the b sequence.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    if (a[i] != a[j]) return a[i] < a[j];
    return b[i] < b[j];
  });

  auto pairs = [](double t) { return t * (t - 1.0) / 2.0; };
  const double n0 = pairs(static_cast<double>(n));

  double ties_a = 0.0, ties_ab = 0.0;
  {
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j < n && a[idx[j]] == a[idx[i]]) ++j;
      ties_a += pairs(static_cast<double>(j - i));
      std::size_t k = i;
      while (k < j) {
        std::size_t l = k;
        while (l < j && b[idx[l]] == b[idx[k]]) ++l;
        ties_ab += pairs(static_cast<double>(l - k));
        k = l;
      }
      i = j;
    }
  }

  // Merge sort over b values (in a-order), counting swaps.
  std::vector<double> bv(n), tmp(n);
  for (std::size_t i = 0; i < n; ++i) bv[i] = b[idx[i]];
  double swaps = 0.0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      const std::size_t mid = lo + width;
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (bv[j] < bv[i]) {
          swaps += static_cast<double>(mid - i);
          tmp[k++] = bv[j++];
        } else {
          tmp[k++] = bv[i++];
        }
      }
      while (i < mid) tmp[k++] = bv[i++];
      while (j < hi) tmp[k++] = bv[j++];
      std::copy(tmp.begin() + lo, tmp.begin() + hi, bv.begin() + lo);
    }
  }

  double ties_b = 0.0;
  {
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j < n && bv[j] == bv[i]) ++j;
      ties_b += pairs(static_cast<double>(j - i));
      i = j;
    }
  }

  // Concordant minus discordant.
  const double joint = n0 - ties_a - ties_b + ties_ab;
  const double diff = joint - 2.0 * swaps;
  const double denom = std::sqrt((n0 - ties_a) * (n0 - ties_b));
  if (denom <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return diff / denom;
}

std::string study_summary_tsv(const StudySummary& summary) {
  std::ostringstream os;
  std::istringstream cfg(to_config(summary.scenario));
  std::string line;
  while (std::getline(cfg, line)) {
    os << "# " << line << "\n";
  }
  os << "# replicates = " << summary.replicates << "\n";
  os << "test\tmean_total\tmean_true_positives\tmean_efdr\tdegenerate_genes\n";
  char buf[64];
  for (const auto& ts : summary.tests) {
    os << to_string(ts.test);
    std::snprintf(buf, sizeof(buf), "%.6g", ts.mean_total);
    os << '\t' << buf;
    std::snprintf(buf, sizeof(buf), "%.6g", ts.mean_true_positives);
    os << '\t' << buf;
    std::snprintf(buf, sizeof(buf), "%.6g", ts.mean_efdr);
    os << '\t' << buf;
    os << '\t' << ts.degenerate_genes << "\n";
  }
  return os.str();
}

}  // namespace margene
