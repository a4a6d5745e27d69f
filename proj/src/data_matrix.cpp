#include "margene/data_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace margene {

namespace {

char detect_delimiter(const std::string& header) {
  // Tab wins when present; otherwise comma.
  if (header.find('\t') != std::string::npos) return '\t';
  if (header.find(',') != std::string::npos) return ',';
  return '\t';
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, delim)) out.push_back(field);
  if (!line.empty() && line.back() == delim) out.push_back("");
  return out;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

double parse_cell(const std::string& field, const std::string& name, int lineno) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
    if (pos != field.size()) throw std::invalid_argument("trailing junk");
    if (!std::isfinite(v)) throw std::invalid_argument("not finite");
    return v;
  } catch (const std::exception&) {
    throw DataError(name + ":" + std::to_string(lineno) +
                    ": cell '" + field + "' is not a finite number");
  }
}

}  // namespace

DataMatrix parse_matrix(std::istream& in, const std::string& name, bool log2) {
  DataMatrix m;
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(name + ": empty file");
  }
  line = strip_cr(line);
  const char delim = detect_delimiter(line);
  auto header = split(line, delim);
  if (header.size() < 2) {
    throw DataError(name + ":1: header needs a gene-id column and at least one array");
  }
  m.array_ids.assign(header.begin() + 1, header.end());

  std::vector<double> cells;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto fields = split(line, delim);
    if (fields.size() != header.size()) {
      throw DataError(name + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    m.gene_ids.push_back(fields[0]);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      double v = parse_cell(fields[c], name, lineno);
      if (log2) {
        if (v <= 0.0) {
          throw DataError(name + ":" + std::to_string(lineno) +
                          ": log2 transform needs positive values, got '" +
                          fields[c] + "'");
        }
        v = std::log2(v);
      }
      cells.push_back(v);
    }
  }
  if (m.gene_ids.empty()) {
    throw DataError(name + ": no data rows");
  }
  m.values = Matrix(m.gene_ids.size(), m.array_ids.size());
  std::size_t k = 0;
  for (std::size_t r = 0; r < m.values.rows(); ++r) {
    for (std::size_t c = 0; c < m.values.cols(); ++c) {
      m.values.at(r, c) = cells[k++];
    }
  }
  return m;
}

DataMatrix load_matrix(const std::string& path, bool log2) {
  std::ifstream in(path);
  if (!in) {
    throw DataError(path + ": cannot open file");
  }
  return parse_matrix(in, path, log2);
}

GroupLabels parse_labels(std::istream& in, const std::string& name) {
  GroupLabels labels;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    std::string id, group;
    // tab, comma or whitespace separated
    std::string normalized = line;
    std::replace(normalized.begin(), normalized.end(), '\t', ' ');
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream is(normalized);
    if (!(is >> id >> group)) {
      throw DataError(name + ":" + std::to_string(lineno) +
                      ": expected 'array_id group'");
    }
    if (group != "1" && group != "2") {
      throw DataError(name + ":" + std::to_string(lineno) +
                      ": group must be 1 or 2, got '" + group + "'");
    }
    if (!labels.group_of.emplace(id, group == "1" ? 1 : 2).second) {
      throw DataError(name + ":" + std::to_string(lineno) +
                      ": duplicate array id '" + id + "'");
    }
  }
  if (labels.group_of.empty()) {
    throw DataError(name + ": no labels found");
  }
  return labels;
}

GroupLabels load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError(path + ": cannot open file");
  }
  return parse_labels(in, path);
}

std::size_t split_by_labels(const DataMatrix& m, const GroupLabels& labels,
                            Matrix& reordered) {
  std::vector<std::size_t> g1, g2;
  for (std::size_t c = 0; c < m.array_ids.size(); ++c) {
    auto it = labels.group_of.find(m.array_ids[c]);
    if (it == labels.group_of.end()) {
      throw DataError("array '" + m.array_ids[c] + "' has no group label");
    }
    (it->second == 1 ? g1 : g2).push_back(c);
  }
  if (g1.empty() || g2.empty()) {
    throw DataError("both groups must be nonempty");
  }
  reordered = Matrix(m.values.rows(), m.values.cols());
  std::size_t out_col = 0;
  for (std::size_t c : g1) {
    for (std::size_t r = 0; r < m.values.rows(); ++r) {
      reordered.at(r, out_col) = m.values.at(r, c);
    }
    ++out_col;
  }
  for (std::size_t c : g2) {
    for (std::size_t r = 0; r < m.values.rows(); ++r) {
      reordered.at(r, out_col) = m.values.at(r, c);
    }
    ++out_col;
  }
  return g1.size();
}

std::string results_tsv(const DataMatrix& m,
                        const std::vector<GeneTestResult>& results,
                        const FdrSelection& selection) {
  std::vector<char> rejected(results.size(), 0);
  for (std::size_t g : selection.rejected) rejected[g] = 1;
  std::ostringstream os;
  os << "gene_id\tstatistic\tp_value\trejected\tstatus\n";
  char buf[64];
  for (std::size_t g = 0; g < results.size(); ++g) {
    const auto& r = results[g];
    os << m.gene_ids[g] << '\t';
    // 15 significant digits round-trips well past the 12 the format promises
    std::snprintf(buf, sizeof(buf), "%.15g", r.statistic);
    os << buf << '\t';
    std::snprintf(buf, sizeof(buf), "%.15g", r.p_value);
    os << buf << '\t';
    os << (rejected[g] ? 1 : 0) << '\t' << to_string(r.status) << "\n";
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError(path + ": cannot open for writing");
  }
  out << content;
  if (!out) {
    throw DataError(path + ": write failed");
  }
}

}  // namespace margene
