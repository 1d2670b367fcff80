#ifndef CVINFER_DATASET_HPP_
#define CVINFER_DATASET_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "cvinfer/linalg.hpp"

namespace cvinfer {

/// A parsed numeric table: header names plus a dense value matrix.
struct Dataset {
  std::vector<std::string> columns;
  Matrix values;

  int n_rows() const { return static_cast<int>(values.rows()); }
  int n_cols() const { return static_cast<int>(values.cols()); }
};

/// Reads a comma-separated file with a header row; every data cell must be
/// numeric and present. Parse problems throw ParseError carrying the
/// 1-based row and column (the header is row 1).
Dataset load_csv(const std::string& path);
Dataset load_csv(std::istream& in);

/// The design/response split used by the fitting pipeline.
struct DesignSplit {
  Vector y;
  Matrix x;
  std::vector<std::string> predictor_names;
  int response_index = -1;  ///< column index of the response in the dataset
};

/// Pulls out the named response column; the remaining columns become the
/// predictors in file order.
DesignSplit split_response(const Dataset& dataset, const std::string& response);

/// Centers each column and rescales it to unit Euclidean norm, in place.
/// Columns that are constant (zero norm after centering) are reported by
/// index via ContractViolation.
void standardize_columns(Matrix& x);

}  // namespace cvinfer

#endif  // CVINFER_DATASET_HPP_
