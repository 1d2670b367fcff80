#ifndef CVINFER_CONSTRAINTS_HPP_
#define CVINFER_CONSTRAINTS_HPP_

#include <vector>

#include "cvinfer/interval.hpp"
#include "cvinfer/linalg.hpp"

namespace cvinfer {

/// Observed responses must satisfy their own selection event up to this
/// slack; they sit strictly inside it in exact arithmetic.
inline constexpr double kFeasibilitySlack = 1e-8;

/// One inequality {z : z^T Q z + a^T z + b >= 0}. Q is symmetrized as
/// (Q + Q^T)/2 on construction; the form's value only depends on the
/// symmetric part.
class QuadraticConstraint {
 public:
  QuadraticConstraint(Matrix q, Vector a, double b);

  double value(const Vector& z) const { return quad_eval(q_, a_, b_, z); }
  Eigen::Index dim() const { return q_.rows(); }

  const Matrix& q() const { return q_; }
  const Vector& a() const { return a_; }
  double b() const { return b_; }

 private:
  Matrix q_;
  Vector a_;
  double b_;
};

/// Scatters a constraint on a sub-vector into n_full dimensions: entries of
/// Q and a land at index_map positions, zero elsewhere. Evaluating the
/// result on a full vector equals evaluating the original on the gathered
/// sub-vector.
QuadraticConstraint embed(const QuadraticConstraint& c,
                          const std::vector<int>& index_map, int n_full);

/// Conjunction of quadratic constraints encoding "this model was selected".
class SelectionEvent {
 public:
  /// Unchecked construction (no observed response at hand).
  SelectionEvent(std::vector<QuadraticConstraint> constraints, int dimension);

  /// Checked construction: asserts the observed response satisfies every
  /// constraint with at least -slack; throws InconsistentEvent otherwise.
  SelectionEvent(std::vector<QuadraticConstraint> constraints,
                 const Vector& observed, double slack = kFeasibilitySlack);

  int dimension() const { return dimension_; }
  const std::vector<QuadraticConstraint>& constraints() const {
    return constraints_;
  }

  /// True iff every constraint evaluates >= -slack at z.
  bool contains(const Vector& z, double slack) const;

  /// Smallest constraint value at z (+inf when there are no constraints).
  double min_constraint_value(const Vector& z) const;

  /// {t : base + t*direction satisfies every constraint}. Substituting the
  /// line into each constraint gives a scalar quadratic in t, solved with
  /// solve_quadratic_ineq and intersected across constraints. Throws
  /// InconsistentEvent if the intersection is empty (an upstream assembly
  /// bug: events are built around points that satisfy them).
  IntervalUnion slice(const Vector& base, const Vector& direction) const;

 private:
  std::vector<QuadraticConstraint> constraints_;
  int dimension_;
};

}  // namespace cvinfer

#endif  // CVINFER_CONSTRAINTS_HPP_
