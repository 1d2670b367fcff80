#ifndef CVINFER_CROSS_VALIDATION_HPP_
#define CVINFER_CROSS_VALIDATION_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "cvinfer/constraints.hpp"
#include "cvinfer/linalg.hpp"
#include "cvinfer/stepwise.hpp"

namespace cvinfer {

/// Partition of the observations into K nonempty folds, together with the
/// permutation that reorders the response fold by fold (fold 0 first).
struct FoldAssignment {
  int n = 0;
  int k = 0;
  std::vector<int> fold_of;                ///< observation -> fold
  std::vector<std::vector<int>> members;   ///< per fold, ascending indices
  std::vector<int> to_original;            ///< fold-ordered position -> index

  static FoldAssignment round_robin(int n, int k);
  static FoldAssignment shuffled(int n, int k, std::uint64_t seed);
  static FoldAssignment from_fold_of(std::vector<int> fold_of, int k);

  /// Training indices for a fold: every other fold's members, fold-major.
  std::vector<int> training_indices(int fold) const;

  /// Mean held-out size; equals n/K for any partition.
  double mean_fold_size() const { return static_cast<double>(n) / k; }

  /// Response reordered fold by fold (y_K = P y).
  Vector reorder(const Vector& y) const;

  /// True when the folds are already contiguous blocks in order, so the
  /// permutation is the identity.
  bool is_identity_permutation() const;
};

enum class PenaltyKind { kNone, kBic };

struct CvOptions {
  PenaltyKind penalty = PenaltyKind::kNone;
  /// Adds the size-0 model (all-zero predictions) to the candidate grid.
  bool include_null_model = false;
  /// Refit forward stepwise on the full data at the selected size and
  /// condition on those constraints too (the standard CV workflow); turn
  /// off to study the event without the refit conditioning.
  bool refit_event = true;
  double feasibility_slack = kFeasibilitySlack;
};

/// Cross-validation (or single-split) test error at each candidate model
/// size written as a quadratic form in the fold-reordered response:
/// RSS(s) = ||y||^2 + y_K^T Q^s y_K, plus the per-training-set stepwise
/// paths that the form is conditioned on.
struct CvQuadratic {
  std::vector<Matrix> q_by_size;      ///< fold-ordered, symmetric
  std::vector<double> penalties;      ///< aligned with model_sizes
  std::vector<int> model_sizes;       ///< candidate sizes (default 1..S)
  FoldAssignment folds;
  std::vector<StepwisePath> paths;    ///< one per training set
  /// Original-order row indices of each path's training set, used to embed
  /// its constraints into full-length ones.
  std::vector<std::vector<int>> path_index_maps;
  Matrix x;                            ///< the full design, original order
  int steps_requested = 0;
  int steps_effective = 0;
  bool steps_truncated = false;

  std::size_t n_candidates() const { return model_sizes.size(); }

  /// ||y||^2 + (Py)^T Q^idx (Py), the held-out RSS at candidate idx.
  double cv_rss(const Vector& y, std::size_t idx) const;

  /// penalties[idx] + (Py)^T Q^idx (Py); the constant ||y||^2 is dropped.
  double objective(const Vector& y, std::size_t idx) const;
};

/// The selected sparsity with its complete selection event: comparison
/// constraints against every other candidate size, each training fold's
/// embedded stepwise constraints, and (by default) the full-data refit's
/// constraints.
struct CvSelection {
  std::size_t s_hat = 0;      ///< index into cvq.model_sizes
  int selected_size = 0;
  bool tie = false;
  std::vector<int> active_set;  ///< final model variables, entry order
  StepwisePath full_path;       ///< the full-data refit
  CvQuadratic cvq;
  SelectionEvent event;
};

/// Fits one stepwise path per training set and assembles the fold-blocked
/// matrices Q^s. If some training set exhausts its candidates before S
/// steps, the grid is truncated to the shortest path and flagged.
CvQuadratic assemble_cv(const Matrix& x, const Vector& y,
                        const FoldAssignment& folds, int steps,
                        const CvOptions& options = {});

/// Minimizes the penalized quadratic objective over candidate sizes and
/// builds the selection event. Ties within kTieTol go to the smaller size
/// and set the tie flag.
CvSelection select_sparsity(const CvQuadratic& cvq, const Vector& y,
                            const CvOptions& options = {});

/// Single train/test split analogue: one stepwise path on the training
/// half, candidate chosen by held-out RSS, block-2x2 comparison
/// constraints, everything embedded back into the original observation
/// order.
CvSelection split_event(const Matrix& x, const Vector& y,
                        const std::vector<int>& train_idx, int steps,
                        const CvOptions& options = {});

inline constexpr double kTieTol = 1e-12;

}  // namespace cvinfer

#endif  // CVINFER_CROSS_VALIDATION_HPP_
