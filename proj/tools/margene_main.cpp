// margene: marginal per-gene tests, FDR selection, simulation studies and
// p-value concordance reports for genes-by-arrays expression matrices.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "margene/data_matrix.hpp"
#include "margene/harness.hpp"
#include "margene/multiplicity.hpp"
#include "margene/simgen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonFlags {
  std::string granularity = "auto";
  std::string variance_formula = "paper";
  std::size_t threads = 0;
};

margene::StudyOptions make_options(const CommonFlags& flags, double q,
                                   std::size_t n1, std::size_t n2) {
  margene::StudyOptions opt;
  opt.q = q;
  opt.threads = flags.threads;
  if (flags.granularity == "standard") {
    opt.granularity = margene::GranularityMode::standard;
  } else if (flags.granularity == "adjusted") {
    opt.granularity = margene::GranularityMode::adjusted;
  } else {  // auto: adjusted when group sizes match
    opt.granularity = (n1 == n2 && n1 > 0)
                          ? margene::GranularityMode::adjusted
                          : margene::GranularityMode::standard;
  }
  opt.signed_rank.variance =
      flags.variance_formula == "classical"
          ? margene::SignedRankConfig::Variance::classical
          : margene::SignedRankConfig::Variance::paper;
  return opt;
}

std::vector<margene::TestId> parse_tests(const std::vector<std::string>& names) {
  std::vector<margene::TestId> out;
  for (const auto& chunk : names) {
    std::istringstream is(chunk);
    std::string name;
    while (std::getline(is, name, ',')) {
      if (name.empty()) continue;
      auto id = margene::parse_test_id(name);
      if (!id) {
        throw CLI::ValidationError(
            "--test", "unknown test '" + name +
                          "' (valid: mean median signed-rank sign mean2 "
                          "median2 wilcoxon ks cvm)");
      }
      out.push_back(*id);
    }
  }
  return out;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
  } else {
    margene::write_file(out_path, content);
  }
}

int cmd_test(const std::string& matrix_path, const std::string& labels_path,
             const std::string& test_name, double q, bool log2,
             const CommonFlags& flags, const std::string& out_path) {
  auto id = margene::parse_test_id(test_name);
  if (!id) {
    std::cerr << "error: unknown test '" << test_name << "'\n";
    return kExitUsage;
  }
  const bool two = margene::is_two_sample(*id);
  if (two && labels_path.empty()) {
    std::cerr << "error: test '" << test_name << "' needs --labels\n";
    return kExitUsage;
  }
  if (!two && !labels_path.empty()) {
    std::cerr << "error: one-sample test '" << test_name
              << "' does not take --labels\n";
    return kExitUsage;
  }

  margene::DataMatrix m = margene::load_matrix(matrix_path, log2);
  margene::Matrix data;
  std::size_t n1 = 0;
  if (two) {
    margene::GroupLabels labels = margene::load_labels(labels_path);
    n1 = margene::split_by_labels(m, labels, data);
  } else {
    data = m.values;
  }
  const std::size_t n2 = two ? data.cols() - n1 : 0;
  auto opt = make_options(flags, q, n1, n2);
  const auto results = margene::run_test(*id, data, n1, opt);
  const auto sel =
      margene::bh_select(std::span<const margene::GeneTestResult>(results), q);
  emit(out_path, margene::results_tsv(m, results, sel));
  return kExitOk;
}

int cmd_simulate(const std::string& config_path,
                 const std::vector<std::string>& test_names, double q,
                 std::size_t replicates, std::optional<std::uint64_t> seed,
                 const CommonFlags& flags, const std::string& out_path) {
  std::ifstream in(config_path);
  if (!in) {
    throw margene::DataError(config_path + ": cannot open file");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  margene::SimScenario scenario;
  try {
    scenario = margene::scenario_from_config(buffer.str());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << config_path << ": " << e.what() << "\n";
    return kExitData;
  }
  if (seed) scenario.seed = *seed;

  const auto tests = parse_tests(test_names);
  if (tests.empty()) {
    std::cerr << "error: --tests is required\n";
    return kExitUsage;
  }
  auto opt = make_options(flags, q, scenario.n1, scenario.n2);
  opt.replicates = replicates;
  const auto summary = margene::run_study(scenario, tests, opt);
  emit(out_path, margene::study_summary_tsv(summary));
  return kExitOk;
}

int cmd_concordance(const std::string& matrix_path,
                    const std::string& labels_path,
                    const std::vector<std::string>& test_names, bool log2,
                    const CommonFlags& flags, const std::string& out_path,
                    std::string pvalues_path) {
  const auto tests = parse_tests(test_names);
  if (tests.size() < 2) {
    std::cerr << "error: concordance needs at least two tests\n";
    return kExitUsage;
  }
  bool any_two = false;
  for (auto id : tests) any_two = any_two || margene::is_two_sample(id);
  if (any_two && labels_path.empty()) {
    std::cerr << "error: two-sample tests need --labels\n";
    return kExitUsage;
  }

  margene::DataMatrix m = margene::load_matrix(matrix_path, log2);
  margene::Matrix one_sample_data = m.values;
  margene::Matrix two_sample_data;
  std::size_t n1 = 0;
  if (any_two) {
    margene::GroupLabels labels = margene::load_labels(labels_path);
    n1 = margene::split_by_labels(m, labels, two_sample_data);
  }
  const std::size_t n2 = any_two ? two_sample_data.cols() - n1 : 0;
  auto opt = make_options(flags, 0.1, n1, n2);

  const std::size_t p = m.values.rows();
  std::vector<std::vector<double>> pv(tests.size(), std::vector<double>(p));
  for (std::size_t t = 0; t < tests.size(); ++t) {
    const bool two = margene::is_two_sample(tests[t]);
    const auto results = margene::run_test(
        tests[t], two ? two_sample_data : one_sample_data, n1, opt);
    for (std::size_t g = 0; g < p; ++g) pv[t][g] = results[g].p_value;
  }

  char buf[64];
  std::ostringstream pvs;
  pvs << "gene_id";
  for (auto id : tests) pvs << '\t' << margene::to_string(id);
  pvs << "\n";
  for (std::size_t g = 0; g < p; ++g) {
    pvs << m.gene_ids[g];
    for (std::size_t t = 0; t < tests.size(); ++t) {
      std::snprintf(buf, sizeof(buf), "%.15g", pv[t][g]);
      pvs << '\t' << buf;
    }
    pvs << "\n";
  }
  if (pvalues_path.empty()) {
    pvalues_path = (out_path.empty() || out_path == "-")
                       ? std::string("-")
                       : out_path + ".pvalues.tsv";
  }
  emit(pvalues_path, pvs.str());

  std::ostringstream taus;
  taus << "test_a\ttest_b\ttau\n";
  for (std::size_t i = 0; i < tests.size(); ++i) {
    for (std::size_t j = i + 1; j < tests.size(); ++j) {
      const double tau = margene::kendall_tau(pv[i], pv[j]);
      std::snprintf(buf, sizeof(buf), "%.15g", tau);
      taus << margene::to_string(tests[i]) << '\t'
           << margene::to_string(tests[j]) << '\t' << buf << "\n";
    }
  }
  emit(out_path, taus.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Marginal per-gene inference for genes-by-arrays matrices"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string matrix_path, labels_path, out_path, pvalues_path;
  std::string test_name;
  std::vector<std::string> test_names;
  std::string config_path;
  bool log2 = false;
  double q_test = 0.1;
  double q_sim = 0.2;
  std::size_t replicates = 100;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--granularity", flags.granularity,
                    "Rank-test granularity mode")
        ->check(CLI::IsMember({"standard", "adjusted", "auto"}))
        ->capture_default_str();
    sub->add_option("--variance-formula", flags.variance_formula,
                    "Signed-rank variance formula")
        ->check(CLI::IsMember({"paper", "classical"}))
        ->capture_default_str();
    sub->add_option("--threads", flags.threads,
                    "Worker threads (0 = hardware)");
    sub->add_option("--out", out_path, "Output path ('-' = stdout)");
  };

  auto* test_cmd =
      app.add_subcommand("test", "Run one test per gene on a matrix file");
  test_cmd->add_option("--matrix", matrix_path, "Expression matrix (TSV/CSV)")
      ->required();
  test_cmd->add_option("--labels", labels_path,
                       "Array group labels (two-sample tests)");
  test_cmd->add_option("--test", test_name, "Test id")->required();
  test_cmd->add_option("--q", q_test, "Target FDR")->capture_default_str();
  test_cmd->add_flag("--log2", log2, "Apply log2 before testing");
  add_common(test_cmd);

  auto* sim_cmd =
      app.add_subcommand("simulate", "Run a simulation study from a config");
  sim_cmd->add_option("--config", config_path, "Scenario config file")
      ->required();
  sim_cmd->add_option("--tests", test_names, "Comma-separated test ids")
      ->required();
  sim_cmd->add_option("--q", q_sim, "Target FDR")->capture_default_str();
  sim_cmd->add_option("--replicates", replicates, "Replicate count")
      ->capture_default_str();
  sim_cmd->add_option("--seed", seed, "Override the config seed");
  add_common(sim_cmd);

  auto* conc_cmd = app.add_subcommand(
      "concordance", "Per-gene p-values and pairwise rank correlation");
  conc_cmd->add_option("--matrix", matrix_path, "Expression matrix (TSV/CSV)")
      ->required();
  conc_cmd->add_option("--labels", labels_path, "Array group labels");
  conc_cmd->add_option("--tests", test_names, "Comma-separated test ids (>= 2)")
      ->required();
  conc_cmd->add_flag("--log2", log2, "Apply log2 before testing");
  conc_cmd->add_option("--pvalues-out", pvalues_path,
                       "P-value matrix path (default: <out>.pvalues.tsv)");
  add_common(conc_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (test_cmd->parsed()) {
      return cmd_test(matrix_path, labels_path, test_name, q_test, log2, flags,
                      out_path);
    }
    if (sim_cmd->parsed()) {
      return cmd_simulate(config_path, test_names, q_sim, replicates, seed,
                          flags, out_path);
    }
    if (conc_cmd->parsed()) {
      return cmd_concordance(matrix_path, labels_path, test_names, log2, flags,
                             out_path, pvalues_path);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const margene::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
