#ifndef CVINFER_REPORT_HPP_
#define CVINFER_REPORT_HPP_

#include <string>
#include <vector>

#include "cvinfer/simulate.hpp"

namespace cvinfer {

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

/// Creates the directory (and parents) if needed.
void ensure_directory(const std::string& dir);

/// results.csv in the exact ResultRow column order:
/// replication,step_chosen,variable,is_true_nonnull,p_value,sigma_used,tie_flag
void write_rows_csv(const std::string& path, const std::vector<ResultRow>& rows);
void write_rows_json(const std::string& path,
                     const std::vector<ResultRow>& rows);

/// One simulated replication as a CSV the `fit` subcommand can read back
/// (header y,x1,...,xp).
void write_dataset_csv(const std::string& path, const Matrix& x,
                       const Vector& y);

/// One ECDF sample point; rows grouped by selected model size, p-values
/// ascending within each group so the ecdf column is monotone.
struct EcdfPoint {
  int step = 0;
  double p_value = 0.0;
  double ecdf = 0.0;
};

std::vector<EcdfPoint> ecdf_points(const std::vector<ResultRow>& rows);
void write_ecdf_csv(const std::string& path,
                    const std::vector<EcdfPoint>& points);
/// Self-contained SVG: per-size ECDF staircases, the pooled curve in
/// black, and the uniform diagonal for reference.
void write_ecdf_svg(const std::string& path,
                    const std::vector<EcdfPoint>& points);

void write_simulation_meta(const std::string& path, const SimConfig& cfg,
                           const SimulationResult& result);

/// Writes results.{csv|json}, meta.json, ecdf.csv, ecdf.svg, and (when
/// dump_datasets) one dataset_rep<k>.csv per replication into dir.
void write_simulation_outputs(const std::string& dir,
                              const std::string& format, const SimConfig& cfg,
                              const SimulationResult& result,
                              bool dump_datasets);

}  // namespace cvinfer

#endif  // CVINFER_REPORT_HPP_
