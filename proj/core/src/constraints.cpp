#include "cvinfer/constraints.hpp"

#include <string>
#include <unordered_set>
#include <utility>

#include "cvinfer/errors.hpp"

namespace cvinfer {

QuadraticConstraint::QuadraticConstraint(Matrix q, Vector a, double b)
    : q_(std::move(q)), a_(std::move(a)), b_(b) {
  if (q_.rows() != q_.cols() || q_.rows() != a_.size()) {
    throw ContractViolation("QuadraticConstraint: Q must be square with side "
                            "matching a");
  }
  q_ = 0.5 * (q_ + q_.transpose()).eval();
}

QuadraticConstraint embed(const QuadraticConstraint& c,
                          const std::vector<int>& index_map, int n_full) {
  if (static_cast<Eigen::Index>(index_map.size()) != c.dim()) {
    throw ContractViolation("embed: index_map size must match constraint dim");
  }
  std::unordered_set<int> seen;
  for (int pos : index_map) {
    if (pos < 0 || pos >= n_full) {
      throw ContractViolation("embed: index " + std::to_string(pos) +
                              " out of range [0, " + std::to_string(n_full) +
                              ")");
    }
    if (!seen.insert(pos).second) {
      throw ContractViolation("embed: duplicate index " + std::to_string(pos));
    }
  }
  Matrix q_full = Matrix::Zero(n_full, n_full);
  Vector a_full = Vector::Zero(n_full);
  const Eigen::Index m = c.dim();
  for (Eigen::Index i = 0; i < m; ++i) {
    a_full(index_map[i]) = c.a()(i);
    for (Eigen::Index j = 0; j < m; ++j) {
      q_full(index_map[i], index_map[j]) = c.q()(i, j);
    }
  }
  return QuadraticConstraint(std::move(q_full), std::move(a_full), c.b());
}

SelectionEvent::SelectionEvent(std::vector<QuadraticConstraint> constraints,
                               int dimension)
    : constraints_(std::move(constraints)), dimension_(dimension) {
  for (const auto& c : constraints_) {
    if (c.dim() != dimension_) {
      throw ContractViolation("SelectionEvent: constraint dimension " +
                              std::to_string(c.dim()) + " != event dimension " +
                              std::to_string(dimension_));
    }
  }
}

SelectionEvent::SelectionEvent(std::vector<QuadraticConstraint> constraints,
                               const Vector& observed, double slack)
    : SelectionEvent(std::move(constraints),
                     static_cast<int>(observed.size())) {
  for (std::size_t j = 0; j < constraints_.size(); ++j) {
    const double v = constraints_[j].value(observed);
    if (!(v >= -slack)) {
      throw InconsistentEvent(
          "SelectionEvent: observed response violates constraint " +
          std::to_string(j) + " (value " + std::to_string(v) + ")");
    }
  }
}

bool SelectionEvent::contains(const Vector& z, double slack) const {
  if (z.size() != dimension_) {
    throw ContractViolation("SelectionEvent::contains: dimension mismatch");
  }
  for (const auto& c : constraints_) {
    if (c.value(z) < -slack) return false;
  }
  return true;
}

double SelectionEvent::min_constraint_value(const Vector& z) const {
  double worst = kInf;
  for (const auto& c : constraints_) {
    worst = std::min(worst, c.value(z));
  }
  return worst;
}

IntervalUnion SelectionEvent::slice(const Vector& base,
                                    const Vector& direction) const {
  if (base.size() != dimension_ || direction.size() != dimension_) {
    throw ContractViolation("SelectionEvent::slice: dimension mismatch");
  }
  if (direction.norm() == 0.0) {
    throw ContractViolation("SelectionEvent::slice: direction must be nonzero");
  }
  IntervalUnion result = IntervalUnion::full();
  for (const auto& c : constraints_) {
    const Vector qu = c.q() * direction;
    const double alpha = direction.dot(qu);
    const double beta = 2.0 * base.dot(qu) + c.a().dot(direction);
    const double gamma = c.value(base);
    result = result.intersect(solve_quadratic_ineq(alpha, beta, gamma));
    if (result.empty()) break;
  }
  if (result.empty()) {
    throw InconsistentEvent(
        "SelectionEvent::slice: empty truncation set; the base point is "
        "infeasible, which indicates an upstream assembly bug");
  }
  return result;
}

}  // namespace cvinfer
