#include "margene/edf.hpp"

namespace margene {

Edf::Edf(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("Edf: sample must be nonempty");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Edf: sample values must be finite");
    }
  }
  std::sort(values_.begin(), values_.end());
}

double Edf::quantile(double q) const {
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::domain_error("Edf::quantile: q must be in (0, 1]");
  }
  // First order statistic x_(k) with k/n >= q, i.e. k = ceil(n q). The
  // nudge keeps exactly representable products like 4 * 0.75 on the
  // intended side of the ceiling.
  const double nq = static_cast<double>(values_.size()) * q;
  auto k = static_cast<std::size_t>(std::ceil(nq - 1e-9));
  if (k < 1) k = 1;
  if (k > values_.size()) k = values_.size();
  return values_[k - 1];
}

std::optional<DensityEstimate> density_at_median(const Edf& e) {
  if (e.size() < 2) {
    throw std::invalid_argument("density_at_median: needs n >= 2");
  }
  const double iqr = e.iqr();
  if (iqr <= 0.0) {
    return std::nullopt;
  }
  const double n = static_cast<double>(e.size());
  const double h = 2.0 * iqr * std::pow(n, -0.2);
  const double xi = e.median();
  const double f = (e(xi + h) - e(xi - h)) / (2.0 * h);
  return DensityEstimate{f, h};
}

}  // namespace margene
