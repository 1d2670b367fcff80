#ifndef CVINFER_SIMULATE_HPP_
#define CVINFER_SIMULATE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cvinfer/cross_validation.hpp"
#include "cvinfer/selective_test.hpp"

namespace cvinfer {

/// How simulated predictor columns are scaled after the iid Gaussian draw.
/// Unit-norm columns put every predictor on a common scale; raw columns
/// keep norm ~sqrt(n), which is what gives +-1 coefficients detectable
/// signal in the power experiments.
enum class ColumnScaling { kUnitNorm, kRaw };

struct SimConfig {
  int n = 50;
  int p = 20;
  int k = 5;       ///< folds
  int steps = 8;   ///< stepwise path length S
  int sparsity = 0;
  double coef_magnitude = 1.0;
  double sigma = 1.0;
  int replications = 100;
  std::uint64_t seed = 1;
  std::uint64_t fold_seed = 1;
  PenaltyKind penalty = PenaltyKind::kNone;
  SigmaSource sigma_mode = SigmaSource::kKnown;
  bool include_null_model = false;
  bool refit_event = true;
  ColumnScaling scaling = ColumnScaling::kUnitNorm;
  int threads = 0;  ///< 0 = all hardware threads

  /// Throws ContractViolation on any inconsistent combination.
  void validate() const;
};

struct ResultRow {
  int replication = 0;
  int step_chosen = 0;  ///< selected model size (number of variables)
  int variable = -1;
  bool is_true_nonnull = false;
  double p_value = 1.0;
  double sigma_used = 0.0;
  bool tie_flag = false;
};

/// Everything needed to rebuild one replication outside the harness.
struct ReplicationData {
  Matrix x;
  Vector y;
  Vector beta;
  std::vector<int> true_support;  ///< ascending indices of nonzero beta
  FoldAssignment folds;
  std::uint64_t sub_seed = 0;
  std::uint64_t fold_sub_seed = 0;
};

/// Per-replication outcome, kept separate from the flat row list so the
/// metadata writer can see seeds, the active set, and truncation sets.
struct ReplicationRecord {
  int replication = 0;
  std::uint64_t sub_seed = 0;
  std::uint64_t fold_sub_seed = 0;
  bool skipped = false;
  std::string skip_reason;
  int selected_size = 0;
  bool tie = false;
  std::vector<int> active_set;
  std::vector<int> fold_of;  ///< the replication's fold assignment
  std::vector<ResultRow> rows;
  std::vector<IntervalUnion> truncations;  ///< aligned with rows
};

struct SimulationResult {
  std::vector<ResultRow> rows;  ///< ordered by replication index
  std::vector<ReplicationRecord> records;
  int n_skipped = 0;
};

/// Deterministically rebuilds replication `rep`'s design, coefficients,
/// response, and fold assignment from the config's master seeds.
ReplicationData generate_replication(const SimConfig& cfg, int rep);

/// Runs the full pipeline (assemble, select, test every active variable)
/// on one replication's data. Domain failures are recorded in the record,
/// not thrown.
ReplicationRecord run_replication(const SimConfig& cfg,
                                  const ReplicationData& data, int rep);

/// Runs all replications (concurrently when cfg.threads != 1), ordered by
/// replication index. Throws NumericalFailure if more than 1% of
/// replications had to be skipped.
SimulationResult simulate(const SimConfig& cfg);

}  // namespace cvinfer

#endif  // CVINFER_SIMULATE_HPP_
