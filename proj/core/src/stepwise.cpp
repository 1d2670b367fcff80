#include "cvinfer/stepwise.hpp"

#include <string>

#include "cvinfer/errors.hpp"

namespace cvinfer {

StepwisePath fit_stepwise(const Matrix& x, const Vector& y, int steps) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (y.size() != n) {
    throw ContractViolation("fit_stepwise: y length must match rows of X");
  }
  if (steps < 0 || steps > std::min(n, p)) {
    throw ContractViolation("fit_stepwise: steps must lie in [0, min(n, p)]");
  }
  for (Eigen::Index j = 0; j < p; ++j) {
    if (x.col(j).norm() == 0.0) {
      throw ContractViolation("fit_stepwise: column " + std::to_string(j) +
                              " is identically zero");
    }
  }

  StepwisePath path;
  path.n_train = static_cast<int>(n);
  path.n_cols = static_cast<int>(p);
  path.max_steps = steps;

  // Orthonormal basis of the active columns, grown one direction per step.
  Matrix basis(n, steps);
  std::vector<int> active;
  std::vector<bool> unavailable(p, false);

  for (int step = 0; step < steps; ++step) {
    const Eigen::Index k = static_cast<Eigen::Index>(active.size());

    // Residualize every remaining candidate against the active columns,
    // with one reorthogonalization pass for stability.
    std::vector<int> candidates;
    std::vector<Vector> unit_resid(p);
    for (int j = 0; j < p; ++j) {
      if (unavailable[j]) continue;
      Vector r = x.col(j);
      if (k > 0) {
        r -= basis.leftCols(k) * (basis.leftCols(k).transpose() * r);
        r -= basis.leftCols(k) * (basis.leftCols(k).transpose() * r);
      }
      const double norm = r.norm();
      if (norm <= kCandidateNormTol) {
        unavailable[j] = true;  // collinear with active set, now and onward
        continue;
      }
      unit_resid[j] = r / norm;
      candidates.push_back(j);
    }
    if (candidates.empty()) {
      path.truncated = true;
      break;
    }

    int best = -1;
    double best_score = -kInf;
    for (int j : candidates) {
      const double proj = unit_resid[j].dot(y);
      const double score = proj * proj;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }

    const Vector& u_best = unit_resid[best];
    for (int j : candidates) {
      if (j == best) continue;
      Matrix q = u_best * u_best.transpose() - unit_resid[j] * unit_resid[j].transpose();
      path.constraints.emplace_back(std::move(q), Vector::Zero(n), 0.0);
    }

    active.push_back(best);
    unavailable[best] = true;
    basis.col(k) = u_best;

    path.active_sets.push_back(active);
    Matrix pinv = pseudoinverse(select_columns(x, active));
    path.coefficients.push_back(pinv * y);
    path.pinv_by_step.push_back(std::move(pinv));
  }

  return path;
}

Matrix hat_matrix(const StepwisePath& path, const Matrix& x_new, int step) {
  if (step < 0 || step >= path.steps()) {
    throw ContractViolation("hat_matrix: step " + std::to_string(step) +
                            " out of range [0, " +
                            std::to_string(path.steps()) + ")");
  }
  if (x_new.cols() != path.n_cols) {
    throw ContractViolation(
        "hat_matrix: X_new must have the training design's column count");
  }
  return select_columns(x_new, path.active_sets[step]) * path.pinv_by_step[step];
}

}  // namespace cvinfer
