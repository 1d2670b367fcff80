#include "cvinfer/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "cvinfer/errors.hpp"

namespace cvinfer {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_cell(const std::string& field, int row, int col) {
  if (field.empty()) {
    throw ParseError("missing value", row, col);
  }
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("not a number: '" + field + "'", row, col);
  }
  return value;
}

}  // namespace

Dataset load_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("empty input", 1, 1);
  }
  Dataset ds;
  ds.columns = split_fields(line);
  if (ds.columns.empty()) throw ParseError("empty header", 1, 1);
  std::unordered_set<std::string> seen;
  for (std::size_t c = 0; c < ds.columns.size(); ++c) {
    if (ds.columns[c].empty()) {
      throw ParseError("empty column name", 1, static_cast<int>(c + 1));
    }
    if (!seen.insert(ds.columns[c]).second) {
      throw ParseError("duplicate column name '" + ds.columns[c] + "'", 1,
                       static_cast<int>(c + 1));
    }
  }

  const int p = static_cast<int>(ds.columns.size());
  std::vector<double> cells;
  int rows = 0;
  int file_row = 1;
  while (std::getline(in, line)) {
    ++file_row;
    if (trim(line).empty()) continue;  // ignore blank lines
    const auto fields = split_fields(line);
    if (static_cast<int>(fields.size()) != p) {
      throw ParseError("expected " + std::to_string(p) + " fields, found " +
                           std::to_string(fields.size()),
                       file_row, static_cast<int>(fields.size()) + 1);
    }
    for (int c = 0; c < p; ++c) {
      cells.push_back(parse_cell(fields[c], file_row, c + 1));
    }
    ++rows;
  }

  ds.values.resize(rows, p);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < p; ++c) ds.values(r, c) = cells[r * p + c];
  }
  return ds;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 1, 1);
  return load_csv(in);
}

DesignSplit split_response(const Dataset& dataset,
                           const std::string& response) {
  const auto it =
      std::find(dataset.columns.begin(), dataset.columns.end(), response);
  if (it == dataset.columns.end()) {
    throw ParseError("response column '" + response + "' not found", 1, 0);
  }
  DesignSplit out;
  out.response_index = static_cast<int>(it - dataset.columns.begin());
  const int n = dataset.n_rows();
  const int p = dataset.n_cols() - 1;
  if (p < 1) {
    throw ContractViolation("split_response: no predictor columns left");
  }
  out.y = dataset.values.col(out.response_index);
  out.x.resize(n, p);
  int dst = 0;
  for (int c = 0; c < dataset.n_cols(); ++c) {
    if (c == out.response_index) continue;
    out.x.col(dst) = dataset.values.col(c);
    out.predictor_names.push_back(dataset.columns[c]);
    ++dst;
  }
  return out;
}

void standardize_columns(Matrix& x) {
  for (int c = 0; c < x.cols(); ++c) {
    auto col = x.col(c);
    col.array() -= col.mean();
    const double norm = col.norm();
    if (norm <= 1e-12) {
      throw ContractViolation("standardize_columns: column " +
                              std::to_string(c) + " is constant");
    }
    col /= norm;
  }
}

}  // namespace cvinfer
