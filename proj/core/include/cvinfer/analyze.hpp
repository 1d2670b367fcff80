#ifndef CVINFER_ANALYZE_HPP_
#define CVINFER_ANALYZE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cvinfer/cross_validation.hpp"
#include "cvinfer/dataset.hpp"
#include "cvinfer/selective_test.hpp"

namespace cvinfer {

struct AnalysisOptions {
  std::string response;
  int folds = 5;
  int steps = 8;
  PenaltyKind penalty = PenaltyKind::kNone;
  std::optional<double> sigma;  ///< nullopt requests the plug-in estimate
  /// Folds are deterministic round-robin unless a seed is supplied.
  std::optional<std::uint64_t> fold_seed;
  bool standardize = false;
  bool include_null_model = false;
  bool refit_event = true;
};

struct VariableReport {
  int variable = -1;
  std::string name;
  double coefficient = 0.0;
  double statistic = 0.0;
  double p_value = 1.0;
  IntervalUnion truncation;
};

struct AnalysisReport {
  int n = 0;
  int p = 0;
  std::vector<std::string> predictor_names;
  FoldAssignment folds;
  int selected_size = 0;
  bool tie = false;
  std::vector<int> active_set;
  std::vector<VariableReport> tests;
  double sigma_used = 0.0;
  SigmaSource sigma_source = SigmaSource::kKnown;
  int steps_requested = 0;
  int steps_effective = 0;
  bool steps_truncated = false;
  AnalysisOptions options;  ///< echoed for the metadata writer
};

/// The full user-data pipeline: split off the response, optionally
/// standardize the predictors, run CV selection, and test every active
/// variable.
AnalysisReport run_analysis(const Dataset& data, const AnalysisOptions& opt);
AnalysisReport run_analysis_file(const std::string& csv_path,
                                 const AnalysisOptions& opt);

/// Human-readable summary (active set, sizes, p-values, fold assignment).
void print_analysis(std::ostream& out, const AnalysisReport& report);

/// Writes results.{csv|json} (ResultRow column order; replication 0 and
/// is_true_nonnull NA since there is no ground truth) plus meta.json.
void write_analysis_outputs(const std::string& dir, const std::string& format,
                            const AnalysisReport& report);

}  // namespace cvinfer

#endif  // CVINFER_ANALYZE_HPP_
