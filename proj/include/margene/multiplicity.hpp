#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "margene/types.hpp"

namespace margene {

//! Benjamini-Hochberg step-up selection over one p-value per gene.
struct FdrSelection {
  double q_target = 0.0;
  std::size_t g_tilde = 0;                  // number of rejections
  std::vector<std::size_t> rejected;        // gene indices, ascending p order
  std::vector<std::pair<std::size_t, double>> sorted_pvalues;  // rankable genes

  bool is_rejected(std::size_t gene) const;
};

//! Rejects the genes carrying the g-tilde smallest p-values, where g-tilde
//! is the largest g with p_(g) <= (g / p_total) * q. Entries that are NaN
//! (degenerate genes) are never rejected but still count toward p_total.
//! Throws std::domain_error for an empty vector or q outside (0, 1).
FdrSelection bh_select(std::span<const double> pvalues, double q);

//! Same rule reading p-values out of per-gene test results; results with
//! status != ok are treated as degenerate.
FdrSelection bh_select(std::span<const GeneTestResult> results, double q);

}  // namespace margene
