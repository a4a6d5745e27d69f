#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace margene {

//! Dense row-major matrix; genes are rows, arrays are columns.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class SimModel { m1, m2, m3, m4 };

enum class NoiseShape { uniform_pm, constant_per_array };

//! Perturbation injected on top of the true matrix; |noise| <= epsilon
//! cell-wise. `constant_per_array` mimics an array-level normalization bias.
struct NoiseSpec {
  double epsilon = 0.0;
  NoiseShape shape = NoiseShape::uniform_pm;
};

//! Generator parameters for the simulation models.
//!
//! Models m1-m3 are one-sample designs on `n` arrays: each entry is
//! H(S) = 2 Phi(S) - 1 of a standard normal S, giving a unif[-1,1] marginal.
//! m1 uses an independent normal per cell; m2/m3 use windowed sums of an
//! array-specific normal stream (window length k starting at (j-1)m+1 for
//! gene j, scaled by 1/sqrt(k)), inducing correlation between nearby genes.
//! m4 is a two-sample design (`n1`, `n2` arrays) of unif[-1,1] cells.
//! Effects beta_g ~ unif[effect_low, effect_high] are added to the first
//! `n_effect_genes` genes (to group 1 for m4).
struct SimScenario {
  SimModel model = SimModel::m1;
  std::size_t n = 0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t p = 2000;
  std::size_t window_len = 10;   // k
  std::size_t window_step = 7;   // m
  std::size_t n_effect_genes = 40;
  double effect_low = -2.0;
  double effect_high = 2.0;
  std::optional<NoiseSpec> noise;
  std::uint64_t seed = 1;

  bool two_sample() const { return model == SimModel::m4; }
  std::size_t total_arrays() const { return two_sample() ? n1 + n2 : n; }
  void validate() const;  // throws std::invalid_argument
};

//! One replicate of simulated data. For m4 the first n1 columns are group 1
//! (the group carrying the effects) and the remaining n2 are group 2.
struct GeneratedData {
  Matrix values;
  std::vector<double> effects;       // beta per gene; 0 beyond the effect set
  std::optional<Matrix> perturbed;   // present when the scenario has noise
};

//! Deterministic in (scenario, replicate): every cell is a pure function of
//! (seed, replicate, array, position), so outputs are bit-identical no
//! matter how generation is scheduled.
GeneratedData generate(const SimScenario& s, std::uint64_t replicate);

//! key = value serialization (one pair per line, '#' comments allowed).
std::string to_config(const SimScenario& s);
SimScenario scenario_from_config(const std::string& text);

const char* to_string(SimModel m);
const char* to_string(NoiseShape s);

}  // namespace margene
