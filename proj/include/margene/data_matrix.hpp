#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "margene/multiplicity.hpp"
#include "margene/simgen.hpp"
#include "margene/types.hpp"

namespace margene {

//! Malformed input data (bad cell, ragged row, missing label, ...).
//! Distinct from usage errors so the CLI can map it to its own exit code.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! Expression matrix: rows are genes, columns are arrays. Loaded from
//! delimiter-separated text (tab or comma, auto-detected) with a header row
//! of array ids and a leading gene-id column.
struct DataMatrix {
  std::vector<std::string> gene_ids;
  std::vector<std::string> array_ids;
  Matrix values;
};

//! Maps array id -> group (1 or 2).
struct GroupLabels {
  std::unordered_map<std::string, int> group_of;
};

//! Throws DataError with a line number on malformed content or non-finite
//! cells. When log2 is set, applies log2 to every cell first and rejects
//! nonpositive values.
DataMatrix load_matrix(const std::string& path, bool log2 = false);
DataMatrix parse_matrix(std::istream& in, const std::string& name, bool log2 = false);

//! Label file: two columns (array id, group) per line, tab/comma/space
//! separated; groups must be 1 or 2.
GroupLabels load_labels(const std::string& path);
GroupLabels parse_labels(std::istream& in, const std::string& name);

//! Reorders matrix columns as (all group-1 arrays, then group-2), keeping
//! the original relative order inside each group. Every array must be
//! labeled and both groups nonempty. Returns the group-1 count.
std::size_t split_by_labels(const DataMatrix& m, const GroupLabels& labels,
                            Matrix& reordered);

//! Per-gene results table: gene_id, statistic, p_value, rejected, status.
std::string results_tsv(const DataMatrix& m,
                        const std::vector<GeneTestResult>& results,
                        const FdrSelection& selection);

void write_file(const std::string& path, const std::string& content);

}  // namespace margene
