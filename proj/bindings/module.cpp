#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <span>
#include <vector>

#include "margene/data_matrix.hpp"
#include "margene/dist.hpp"
#include "margene/edf.hpp"
#include "margene/harness.hpp"
#include "margene/multiplicity.hpp"
#include "margene/one_sample.hpp"
#include "margene/simgen.hpp"
#include "margene/two_sample.hpp"

namespace py = pybind11;

namespace {

margene::SignedRankConfig variance_config(const std::string& name) {
  margene::SignedRankConfig cfg;
  if (name == "classical") {
    cfg.variance = margene::SignedRankConfig::Variance::classical;
  } else if (name != "paper") {
    throw py::value_error("variance must be 'paper' or 'classical'");
  }
  return cfg;
}

margene::GranularityMode granularity_mode(const std::string& name) {
  if (name == "standard") return margene::GranularityMode::standard;
  if (name == "adjusted") return margene::GranularityMode::adjusted;
  throw py::value_error("granularity must be 'standard' or 'adjusted'");
}

py::dict result_dict(const margene::GeneTestResult& r) {
  py::dict d;
  d["statistic"] = r.statistic;
  d["p_value"] = r.p_value;
  d["status"] = margene::to_string(r.status);
  return d;
}

margene::TwoSampleInput as_input(const std::vector<double>& x1,
                                 const std::vector<double>& x2) {
  return {std::span<const double>(x1), std::span<const double>(x2)};
}

}  // namespace

PYBIND11_MODULE(_margene, m) {
  m.doc() = "Marginal per-gene tests, FDR selection and simulation studies";

  m.def("std_normal_cdf", &margene::std_normal_cdf, py::arg("x"));
  m.def(
      "kolmogorov_cdf",
      [](double t) { return margene::kolmogorov_cdf(t); }, py::arg("t"));
  m.def(
      "cvm_limit_cdf", [](double t) { return margene::cvm_limit_cdf(t); },
      py::arg("t"));

  m.def(
      "mean_test",
      [](const std::vector<double>& x, double mu0) {
        return result_dict(margene::mean_test(x, mu0));
      },
      py::arg("x"), py::arg("mu0") = 0.0);
  m.def(
      "median_test",
      [](const std::vector<double>& x, double xi0) {
        return result_dict(margene::median_test(x, xi0));
      },
      py::arg("x"), py::arg("xi0") = 0.0);
  m.def(
      "signed_rank_test",
      [](const std::vector<double>& x, const std::string& variance) {
        return result_dict(margene::signed_rank_test(x, variance_config(variance)));
      },
      py::arg("x"), py::arg("variance") = "paper");
  m.def(
      "sign_test",
      [](const std::vector<double>& x) {
        return result_dict(margene::sign_test(x));
      },
      py::arg("x"));

  m.def(
      "mean_test2",
      [](const std::vector<double>& x1, const std::vector<double>& x2) {
        return result_dict(margene::mean_test2(as_input(x1, x2)));
      },
      py::arg("x1"), py::arg("x2"));
  m.def(
      "median_test2",
      [](const std::vector<double>& x1, const std::vector<double>& x2) {
        return result_dict(margene::median_test2(as_input(x1, x2)));
      },
      py::arg("x1"), py::arg("x2"));
  m.def(
      "wilcoxon_test2",
      [](const std::vector<double>& x1, const std::vector<double>& x2,
         const std::string& granularity) {
        return result_dict(margene::wilcoxon_test2(as_input(x1, x2),
                                                   granularity_mode(granularity)));
      },
      py::arg("x1"), py::arg("x2"), py::arg("granularity") = "standard");
  m.def(
      "ks_test2",
      [](const std::vector<double>& x1, const std::vector<double>& x2,
         const std::string& granularity) {
        return result_dict(
            margene::ks_test2(as_input(x1, x2), granularity_mode(granularity)));
      },
      py::arg("x1"), py::arg("x2"), py::arg("granularity") = "standard");
  m.def(
      "cvm_test2",
      [](const std::vector<double>& x1, const std::vector<double>& x2,
         const std::string& granularity) {
        return result_dict(
            margene::cvm_test2(as_input(x1, x2), granularity_mode(granularity)));
      },
      py::arg("x1"), py::arg("x2"), py::arg("granularity") = "standard");

  m.def(
      "bh_select",
      [](const std::vector<double>& pvalues, double q) {
        const auto sel = margene::bh_select(std::span<const double>(pvalues), q);
        py::dict d;
        d["q_target"] = sel.q_target;
        d["g_tilde"] = sel.g_tilde;
        d["rejected"] = sel.rejected;
        return d;
      },
      py::arg("pvalues"), py::arg("q"),
      "Benjamini-Hochberg step-up selection; NaN entries are excluded from "
      "ranking but still count toward the total gene count.");

  m.def(
      "kendall_tau",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return margene::kendall_tau(a, b);
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "simulate",
      [](const std::string& config, const std::vector<std::string>& tests,
         double q, std::size_t replicates, std::optional<std::uint64_t> seed,
         const std::string& granularity) {
        auto scenario = margene::scenario_from_config(config);
        if (seed) scenario.seed = *seed;
        std::vector<margene::TestId> ids;
        for (const auto& name : tests) {
          auto id = margene::parse_test_id(name);
          if (!id) throw py::value_error("unknown test '" + name + "'");
          ids.push_back(*id);
        }
        margene::StudyOptions opt;
        opt.q = q;
        opt.replicates = replicates;
        opt.granularity = granularity_mode(granularity);
        const auto summary = margene::run_study(scenario, ids, opt);
        py::list rows;
        for (const auto& ts : summary.tests) {
          py::dict row;
          row["test"] = margene::to_string(ts.test);
          row["mean_total"] = ts.mean_total;
          row["mean_true_positives"] = ts.mean_true_positives;
          row["mean_efdr"] = ts.mean_efdr;
          rows.append(row);
        }
        return rows;
      },
      py::arg("config"), py::arg("tests"), py::arg("q") = 0.2,
      py::arg("replicates") = 100, py::arg("seed") = std::nullopt,
      py::arg("granularity") = "standard",
      "Run a simulation study from a key=value scenario config string.");

  py::register_exception<margene::DataError>(m, "DataError");
}
