#ifndef CVINFER_STEPWISE_HPP_
#define CVINFER_STEPWISE_HPP_

#include <vector>

#include "cvinfer/constraints.hpp"
#include "cvinfer/linalg.hpp"

namespace cvinfer {

/// Residualized candidate columns with norm at or below this are dropped
/// from the candidate set for the current and all later steps.
inline constexpr double kCandidateNormTol = 1e-10;

/// Forward stepwise path: nested active sets, per-step least-squares refits,
/// and the quadratic constraints on the training response that pin down the
/// whole sequence of choices.
struct StepwisePath {
  /// active_sets[s] holds s+1 variable indices in entry order; strictly
  /// nested as prefixes.
  std::vector<std::vector<int>> active_sets;
  /// coefficients[s] is the least-squares refit on active_sets[s].
  std::vector<Vector> coefficients;
  /// pinv_by_step[s] is the pseudoinverse of the training design restricted
  /// to active_sets[s]; coefficients[s] == pinv_by_step[s] * y_train.
  std::vector<Matrix> pinv_by_step;
  /// Comparison constraints on the training response, emitted per step for
  /// every non-chosen candidate (a = 0, b = 0 throughout).
  std::vector<QuadraticConstraint> constraints;
  int n_train = 0;
  int n_cols = 0;         ///< column count of the training design
  int max_steps = 0;      ///< requested step count
  bool truncated = false; ///< candidates ran out before max_steps

  int steps() const { return static_cast<int>(active_sets.size()); }
};

/// Greedy forward selection: at each step the candidate whose residualized
/// column absorbs the most of y enters (equivalently, the addition that
/// minimizes post-step RSS). For every candidate i passed over in favor of
/// the winner j, the constraint y^T (P_j|A - P_i|A) y >= 0 is recorded,
/// where P_.|A projects onto the candidate's column residualized against the
/// current active set. Ties go to the lowest column index.
StepwisePath fit_stepwise(const Matrix& x, const Vector& y, int steps);

/// X_new restricted to the step's active set times the stored training
/// pseudoinverse; multiplying the training response gives predictions on
/// the new rows.
Matrix hat_matrix(const StepwisePath& path, const Matrix& x_new, int step);

}  // namespace cvinfer

#endif  // CVINFER_STEPWISE_HPP_
