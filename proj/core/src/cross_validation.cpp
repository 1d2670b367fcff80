#include "cvinfer/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "cvinfer/errors.hpp"
#include "cvinfer/rng.hpp"

namespace cvinfer {

namespace {

void validate_fold_count(int n, int k) {
  if (n < 1) throw ContractViolation("folds: n must be >= 1");
  if (k < 1 || k > n) throw ContractViolation("folds: K must lie in [1, n]");
}

}  // namespace

FoldAssignment FoldAssignment::round_robin(int n, int k) {
  validate_fold_count(n, k);
  std::vector<int> fold_of(n);
  for (int i = 0; i < n; ++i) fold_of[i] = i % k;
  return from_fold_of(std::move(fold_of), k);
}

FoldAssignment FoldAssignment::shuffled(int n, int k, std::uint64_t seed) {
  validate_fold_count(n, k);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  CounterRng rng(seed);
  rng.shuffle(order);
  // Contiguous blocks of the shuffled order; the first n % k folds take the
  // extra observation when k does not divide n.
  std::vector<int> fold_of(n);
  const int base = n / k;
  const int extra = n % k;
  int pos = 0;
  for (int f = 0; f < k; ++f) {
    const int size = base + (f < extra ? 1 : 0);
    for (int j = 0; j < size; ++j) fold_of[order[pos++]] = f;
  }
  return from_fold_of(std::move(fold_of), k);
}

FoldAssignment FoldAssignment::from_fold_of(std::vector<int> fold_of, int k) {
  const int n = static_cast<int>(fold_of.size());
  validate_fold_count(n, k);
  FoldAssignment out;
  out.n = n;
  out.k = k;
  out.members.assign(k, {});
  for (int i = 0; i < n; ++i) {
    const int f = fold_of[i];
    if (f < 0 || f >= k) {
      throw ContractViolation("folds: fold id " + std::to_string(f) +
                              " out of range");
    }
    out.members[f].push_back(i);
  }
  for (int f = 0; f < k; ++f) {
    if (out.members[f].empty()) {
      throw ContractViolation("folds: fold " + std::to_string(f) +
                              " is empty");
    }
  }
  out.fold_of = std::move(fold_of);
  out.to_original.reserve(n);
  for (const auto& m : out.members) {
    out.to_original.insert(out.to_original.end(), m.begin(), m.end());
  }
  return out;
}

std::vector<int> FoldAssignment::training_indices(int fold) const {
  std::vector<int> idx;
  idx.reserve(n - static_cast<int>(members[fold].size()));
  for (int g = 0; g < k; ++g) {
    if (g == fold) continue;
    idx.insert(idx.end(), members[g].begin(), members[g].end());
  }
  return idx;
}

Vector FoldAssignment::reorder(const Vector& y) const {
  Vector out(n);
  for (int pos = 0; pos < n; ++pos) out(pos) = y(to_original[pos]);
  return out;
}

bool FoldAssignment::is_identity_permutation() const {
  for (int pos = 0; pos < n; ++pos) {
    if (to_original[pos] != pos) return false;
  }
  return true;
}

double CvQuadratic::cv_rss(const Vector& y, std::size_t idx) const {
  if (idx >= q_by_size.size()) {
    throw ContractViolation("cv_rss: candidate index out of range");
  }
  const Vector yk = folds.reorder(y);
  return y.squaredNorm() + yk.dot(q_by_size[idx] * yk);
}

double CvQuadratic::objective(const Vector& y, std::size_t idx) const {
  if (idx >= q_by_size.size()) {
    throw ContractViolation("objective: candidate index out of range");
  }
  const Vector yk = folds.reorder(y);
  return penalties[idx] + yk.dot(q_by_size[idx] * yk);
}

namespace {

double bic_penalty(int model_size, double heldout_size) {
  return 2.0 * model_size * std::log(heldout_size);
}

// Column offset of fold g's block inside fold f's training design, which
// concatenates every fold but f in fold order.
int training_column_offset(const FoldAssignment& folds, int f, int g) {
  int off = 0;
  for (int h = 0; h < g; ++h) {
    if (h == f) continue;
    off += static_cast<int>(folds.members[h].size());
  }
  return off;
}

}  // namespace

CvQuadratic assemble_cv(const Matrix& x, const Vector& y,
                        const FoldAssignment& folds, int steps,
                        const CvOptions& options) {
  const int n = static_cast<int>(x.rows());
  const int p = static_cast<int>(x.cols());
  if (folds.n != n || y.size() != n) {
    throw ContractViolation("assemble_cv: X, y, and folds disagree on n");
  }
  if (steps < 1) throw ContractViolation("assemble_cv: steps must be >= 1");
  for (int f = 0; f < folds.k; ++f) {
    const int n_train = n - static_cast<int>(folds.members[f].size());
    if (steps > std::min(n_train, p)) {
      throw ContractViolation(
          "assemble_cv: steps exceeds min(training rows, cols) for fold " +
          std::to_string(f));
    }
  }

  CvQuadratic cvq;
  cvq.folds = folds;
  cvq.x = x;
  cvq.steps_requested = steps;

  // One stepwise path per training set.
  for (int f = 0; f < folds.k; ++f) {
    const std::vector<int> tr = folds.training_indices(f);
    cvq.path_index_maps.push_back(tr);
    cvq.paths.push_back(
        fit_stepwise(select_rows(x, tr), select_entries(y, tr), steps));
  }

  int s_eff = steps;
  for (const auto& path : cvq.paths) s_eff = std::min(s_eff, path.steps());
  cvq.steps_effective = s_eff;
  cvq.steps_truncated = s_eff < steps;

  if (options.include_null_model) cvq.model_sizes.push_back(0);
  for (int s = 1; s <= s_eff; ++s) cvq.model_sizes.push_back(s);

  // Hold-out hat matrices P_{f,s}, fold f's test rows against its own
  // training set.
  const int k = folds.k;
  std::vector<std::vector<Matrix>> hats(k);  // hats[f][step]
  for (int f = 0; f < k; ++f) {
    const Matrix x_test = select_rows(x, folds.members[f]);
    for (int s = 0; s < s_eff; ++s) {
      hats[f].push_back(hat_matrix(cvq.paths[f], x_test, s));
    }
  }

  std::vector<int> fold_offsets(k, 0);
  for (int f = 1; f < k; ++f) {
    fold_offsets[f] =
        fold_offsets[f - 1] + static_cast<int>(folds.members[f - 1].size());
  }

  for (int size : cvq.model_sizes) {
    Matrix q = Matrix::Zero(n, n);
    if (size > 0) {
      const int step = size - 1;
      for (int f = 0; f < k; ++f) {
        const int nf = static_cast<int>(folds.members[f].size());
        for (int g = 0; g < k; ++g) {
          const int ng = static_cast<int>(folds.members[g].size());
          auto block = q.block(fold_offsets[f], fold_offsets[g], nf, ng);
          if (f == g) {
            // Q^s_ff = sum_{g != f} (P_{g,s})_f^T (P_{g,s})_f
            for (int h = 0; h < k; ++h) {
              if (h == f) continue;
              const auto ph_f = hats[h][step].middleCols(
                  training_column_offset(folds, h, f), nf);
              block += ph_f.transpose() * ph_f;
            }
          } else {
            // Q^s_fg = -(P_{f,s})_g - (P_{g,s})_f^T
            //          + sum_{h not in {f,g}} (P_{h,s})_f^T (P_{h,s})_g
            block -= hats[f][step].middleCols(
                training_column_offset(folds, f, g), ng);
            block -= hats[g][step]
                         .middleCols(training_column_offset(folds, g, f), nf)
                         .transpose();
            for (int h = 0; h < k; ++h) {
              if (h == f || h == g) continue;
              const auto ph_f = hats[h][step].middleCols(
                  training_column_offset(folds, h, f), nf);
              const auto ph_g = hats[h][step].middleCols(
                  training_column_offset(folds, h, g), ng);
              block += ph_f.transpose() * ph_g;
            }
          }
        }
      }
    }
    q = 0.5 * (q + q.transpose()).eval();
    cvq.q_by_size.push_back(std::move(q));
    cvq.penalties.push_back(options.penalty == PenaltyKind::kBic
                                ? bic_penalty(size, folds.mean_fold_size())
                                : 0.0);
  }

  return cvq;
}

CvSelection select_sparsity(const CvQuadratic& cvq, const Vector& y,
                            const CvOptions& options) {
  const int n = cvq.folds.n;
  if (y.size() != n) {
    throw ContractViolation("select_sparsity: y length mismatch");
  }
  if (cvq.model_sizes.empty()) {
    throw ContractViolation("select_sparsity: no candidate sizes");
  }

  const Vector yk = cvq.folds.reorder(y);
  std::vector<double> objective(cvq.n_candidates());
  for (std::size_t i = 0; i < cvq.n_candidates(); ++i) {
    objective[i] = cvq.penalties[i] + yk.dot(cvq.q_by_size[i] * yk);
  }

  std::size_t s_hat = 0;
  for (std::size_t i = 1; i < objective.size(); ++i) {
    if (objective[i] < objective[s_hat]) s_hat = i;
  }
  bool tie = false;
  for (std::size_t i = 0; i < objective.size(); ++i) {
    if (i == s_hat) continue;
    if (std::fabs(objective[i] - objective[s_hat]) <=
        kTieTol * std::max(1.0, std::fabs(objective[s_hat]))) {
      tie = true;
    }
  }

  const int selected_size = cvq.model_sizes[s_hat];

  // Full-data refit at the selected size; its path defines the reported
  // active set.
  const int feasible = static_cast<int>(
      std::min<Eigen::Index>(cvq.x.rows(), cvq.x.cols()));
  StepwisePath full_path =
      fit_stepwise(cvq.x, y, std::min(selected_size, feasible));
  std::vector<int> active_set =
      full_path.steps() > 0 ? full_path.active_sets.back() : std::vector<int>{};

  std::vector<QuadraticConstraint> constraints;
  // (i) comparison constraints: candidate s_hat beats every other r.
  for (std::size_t r = 0; r < cvq.n_candidates(); ++r) {
    if (r == s_hat) continue;
    QuadraticConstraint on_yk(cvq.q_by_size[r] - cvq.q_by_size[s_hat],
                              Vector::Zero(n),
                              cvq.penalties[r] - cvq.penalties[s_hat]);
    constraints.push_back(embed(on_yk, cvq.folds.to_original, n));
  }
  // (ii) each training set's stepwise constraints, padded to full length.
  for (std::size_t i = 0; i < cvq.paths.size(); ++i) {
    for (const auto& c : cvq.paths[i].constraints) {
      constraints.push_back(embed(c, cvq.path_index_maps[i], n));
    }
  }
  // (iii) the refit's own constraints, unless the caller opted out.
  if (options.refit_event) {
    for (const auto& c : full_path.constraints) constraints.push_back(c);
  }

  SelectionEvent event(std::move(constraints), y, options.feasibility_slack);

  CvSelection sel{s_hat,
                  selected_size,
                  tie,
                  std::move(active_set),
                  std::move(full_path),
                  cvq,
                  std::move(event)};
  return sel;
}

CvSelection split_event(const Matrix& x, const Vector& y,
                        const std::vector<int>& train_idx, int steps,
                        const CvOptions& options) {
  const int n = static_cast<int>(x.rows());
  const int p = static_cast<int>(x.cols());
  if (y.size() != n) throw ContractViolation("split_event: y length mismatch");

  std::vector<bool> in_train(n, false);
  for (int i : train_idx) {
    if (i < 0 || i >= n) {
      throw ContractViolation("split_event: train index out of range");
    }
    if (in_train[i]) {
      throw ContractViolation("split_event: duplicate train index");
    }
    in_train[i] = true;
  }
  std::vector<int> fold_of(n);
  for (int i = 0; i < n; ++i) fold_of[i] = in_train[i] ? 0 : 1;

  // Block 0 = training half, block 1 = test half; the fold container only
  // supplies the ordering here.
  const FoldAssignment split = FoldAssignment::from_fold_of(fold_of, 2);
  const std::vector<int>& tr = split.members[0];
  const std::vector<int>& te = split.members[1];
  const int n_tr = static_cast<int>(tr.size());
  const int n_te = static_cast<int>(te.size());
  if (steps < 1 || steps > std::min(n_tr, p)) {
    throw ContractViolation(
        "split_event: steps must lie in [1, min(train rows, cols)]");
  }

  CvQuadratic cvq;
  cvq.folds = split;
  cvq.x = x;
  cvq.steps_requested = steps;
  cvq.path_index_maps.push_back(tr);
  cvq.paths.push_back(
      fit_stepwise(select_rows(x, tr), select_entries(y, tr), steps));
  const int s_eff = cvq.paths[0].steps();
  cvq.steps_effective = s_eff;
  cvq.steps_truncated = s_eff < steps;

  if (options.include_null_model) cvq.model_sizes.push_back(0);
  for (int s = 1; s <= s_eff; ++s) cvq.model_sizes.push_back(s);

  const Matrix x_test = select_rows(x, te);
  for (int size : cvq.model_sizes) {
    // Test RSS at this size is ||y||^2 + [y_tr; y_te]^T Q [y_tr; y_te] with
    // Q = [[H^T H - I, -H^T], [-H, 0]].
    Matrix q = Matrix::Zero(n, n);
    q.topLeftCorner(n_tr, n_tr) = -Matrix::Identity(n_tr, n_tr);
    if (size > 0) {
      const Matrix h = hat_matrix(cvq.paths[0], x_test, size - 1);
      q.topLeftCorner(n_tr, n_tr) += h.transpose() * h;
      q.topRightCorner(n_tr, n_te) = -h.transpose();
      q.bottomLeftCorner(n_te, n_tr) = -h;
    }
    q = 0.5 * (q + q.transpose()).eval();
    cvq.q_by_size.push_back(std::move(q));
    cvq.penalties.push_back(
        options.penalty == PenaltyKind::kBic
            ? bic_penalty(size, static_cast<double>(n_te))
            : 0.0);
  }

  return select_sparsity(cvq, y, options);
}

}  // namespace cvinfer
