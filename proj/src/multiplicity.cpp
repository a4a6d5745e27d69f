#include "margene/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace margene {

bool FdrSelection::is_rejected(std::size_t gene) const {
  return std::find(rejected.begin(), rejected.end(), gene) != rejected.end();
}

FdrSelection bh_select(std::span<const double> pvalues, double q) {
  if (pvalues.empty()) {
    throw std::domain_error("bh_select: empty p-value vector");
  }
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("bh_select: q must be in (0, 1)");
  }

  FdrSelection sel;
  sel.q_target = q;
  sel.sorted_pvalues.reserve(pvalues.size());
  for (std::size_t i = 0; i < pvalues.size(); ++i) {
    if (!std::isnan(pvalues[i])) {
      sel.sorted_pvalues.emplace_back(i, pvalues[i]);
    }
  }
  // Stable sort on p keeps gene order among ties.
  std::stable_sort(sel.sorted_pvalues.begin(), sel.sorted_pvalues.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });

  // Degenerate genes stay in the denominator: p_total is the physical count.
  const double p_total = static_cast<double>(pvalues.size());
  std::size_t g_tilde = 0;
  for (std::size_t g = sel.sorted_pvalues.size(); g >= 1; --g) {
    if (sel.sorted_pvalues[g - 1].second <=
        q * static_cast<double>(g) / p_total) {
      g_tilde = g;
      break;
    }
  }
  sel.g_tilde = g_tilde;
  sel.rejected.reserve(g_tilde);
  for (std::size_t g = 0; g < g_tilde; ++g) {
    sel.rejected.push_back(sel.sorted_pvalues[g].first);
  }
  return sel;
}

FdrSelection bh_select(std::span<const GeneTestResult> results, double q) {
  std::vector<double> pv(results.size(),
                         std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].ok()) pv[i] = results[i].p_value;
  }
  return bh_select(std::span<const double>(pv), q);
}

}  // namespace margene
